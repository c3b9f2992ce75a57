#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fastball {

using node_t = std::uint32_t;
using AdjList = std::vector<node_t>;
using Edge = std::pair<node_t, node_t>;  // (top, bottom)

// Row sums N (top) and column sums M (bottom) of the incidence matrix.
struct DegreeSequences {
  std::vector<std::size_t> top;
  std::vector<std::size_t> bottom;

  bool operator==(const DegreeSequences&) const = default;
};

// Gale-Ryser test: true when some 0/1 matrix has these margins.
bool is_realizable(const DegreeSequences& seq);

// Bipartite graph stored as one strictly increasing adjacency list per top
// node. Bottom nodes are dense indices in [0, m).
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t n, std::size_t m);

  // Throws invalid_index or duplicate_edge.
  static BipartiteGraph from_edge_list(std::span<const Edge> edges,
                                       std::size_t n, std::size_t m);
  // Lists need not be sorted on input; they are sorted and validated.
  static BipartiteGraph from_adjacency(std::vector<AdjList> lists,
                                       std::size_t m);

  std::size_t n() const noexcept { return lists_.size(); }
  std::size_t m() const noexcept { return m_; }
  std::size_t edge_count() const noexcept;
  std::size_t degree(std::size_t i) const noexcept { return lists_[i].size(); }

  std::span<const node_t> neighbors(std::size_t i) const noexcept {
    return lists_[i];
  }
  const std::vector<AdjList>& lists() const noexcept { return lists_; }

  // Installs the result of a trade between top nodes i and j. The buffers
  // are swapped in, so the caller gets the old lists back for reuse. Sizes
  // must match the current degrees.
  void apply_trade(std::size_t i, std::size_t j, AdjList& new_i,
                   AdjList& new_j);

  std::vector<Edge> edges() const;

  bool operator==(const BipartiteGraph&) const = default;

 private:
  std::size_t m_ = 0;
  std::vector<AdjList> lists_;
};

DegreeSequences degrees(const BipartiteGraph& g);

// Dense row-major 0/1 matrix; rows are top nodes.
struct IncidenceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;

  IncidenceMatrix() = default;
  IncidenceMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), cells(r * c, 0) {}

  std::uint8_t& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const {
    return cells[i * cols + j];
  }
  bool operator==(const IncidenceMatrix&) const = default;
};

IncidenceMatrix to_incidence_matrix(const BipartiteGraph& g);
// Throws invalid_entry for anything other than 0 or 1.
BipartiteGraph from_incidence_matrix(const IncidenceMatrix& matrix);

// Injective encoding of the adjacency structure, usable as a map key.
struct CanonicalKey {
  std::string bytes;

  auto operator<=>(const CanonicalKey&) const = default;
};

CanonicalKey canonical_key(const BipartiteGraph& g);

// Every graph realizing `seq`, each exactly once, in lexicographic order of
// adjacency lists. Brute force; intended as a test oracle. Throws too_large
// when n*m exceeds max_cells. Infeasible sequences yield an empty result.
inline constexpr std::size_t kEnumerateMaxCells = 30;
std::vector<BipartiteGraph> enumerate_space(
    const DegreeSequences& seq, std::size_t max_cells = kEnumerateMaxCells);

}  // namespace fastball

template <>
struct std::hash<fastball::CanonicalKey> {
  std::size_t operator()(const fastball::CanonicalKey& key) const noexcept {
    return std::hash<std::string>{}(key.bytes);
  }
};
