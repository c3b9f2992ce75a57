#include "fastball/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "fastball/error.hpp"

namespace fastball {

std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_index: return "InvalidIndex";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::invalid_entry: return "InvalidEntry";
    case errc::too_large: return "TooLarge";
    case errc::unsorted_input: return "UnsortedInput";
    case errc::victory_vector_mismatch: return "VictoryVectorMismatch";
    case errc::too_few_top_nodes: return "TooFewTopNodes";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<char>((v >> shift) & 0xFFu));
  }
}

}  // namespace

BipartiteGraph::BipartiteGraph(std::size_t n, std::size_t m)
    : m_(m), lists_(n) {}

BipartiteGraph BipartiteGraph::from_edge_list(std::span<const Edge> edges,
                                              std::size_t n, std::size_t m) {
  BipartiteGraph g(n, m);
  for (const auto& [top, bottom] : edges) {
    if (top >= n || bottom >= m) {
      throw error(errc::invalid_index,
                  "edge (" + std::to_string(top) + ", " +
                      std::to_string(bottom) + ") out of range for " +
                      std::to_string(n) + "x" + std::to_string(m));
    }
    g.lists_[top].push_back(bottom);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = g.lists_[i];
    std::sort(list.begin(), list.end());
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end()) {
      throw error(errc::duplicate_edge, "duplicate edge (" + std::to_string(i) +
                                            ", " + std::to_string(*dup) + ")");
    }
  }
  return g;
}

BipartiteGraph BipartiteGraph::from_adjacency(std::vector<AdjList> lists,
                                              std::size_t m) {
  BipartiteGraph g;
  g.m_ = m;
  g.lists_ = std::move(lists);
  for (std::size_t i = 0; i < g.lists_.size(); ++i) {
    auto& list = g.lists_[i];
    std::sort(list.begin(), list.end());
    if (!list.empty() && list.back() >= m) {
      throw error(errc::invalid_index,
                  "bottom index " + std::to_string(list.back()) +
                      " out of range for m=" + std::to_string(m));
    }
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end()) {
      throw error(errc::duplicate_edge, "duplicate edge (" + std::to_string(i) +
                                            ", " + std::to_string(*dup) + ")");
    }
  }
  return g;
}

std::size_t BipartiteGraph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& list : lists_) total += list.size();
  return total;
}

void BipartiteGraph::apply_trade(std::size_t i, std::size_t j, AdjList& new_i,
                                 AdjList& new_j) {
  assert(new_i.size() == lists_[i].size());
  assert(new_j.size() == lists_[j].size());
  lists_[i].swap(new_i);
  lists_[j].swap(new_j);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < lists_.size(); ++i) {
    for (node_t v : lists_[i]) out.emplace_back(static_cast<node_t>(i), v);
  }
  return out;
}

DegreeSequences degrees(const BipartiteGraph& g) {
  DegreeSequences seq;
  seq.top.resize(g.n());
  seq.bottom.assign(g.m(), 0);
  for (std::size_t i = 0; i < g.n(); ++i) {
    seq.top[i] = g.degree(i);
    for (node_t v : g.neighbors(i)) ++seq.bottom[v];
  }
  return seq;
}

bool is_realizable(const DegreeSequences& seq) {
  const std::size_t n = seq.top.size();
  const std::size_t m = seq.bottom.size();
  auto total_top = std::accumulate(seq.top.begin(), seq.top.end(), std::size_t{0});
  auto total_bottom =
      std::accumulate(seq.bottom.begin(), seq.bottom.end(), std::size_t{0});
  if (total_top != total_bottom) return false;
  if (std::any_of(seq.top.begin(), seq.top.end(), [m](auto d) { return d > m; }))
    return false;
  if (std::any_of(seq.bottom.begin(), seq.bottom.end(),
                  [n](auto d) { return d > n; }))
    return false;

  std::vector<std::size_t> rows = seq.top;
  std::sort(rows.begin(), rows.end(), std::greater<>());
  std::size_t lhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    lhs += rows[k - 1];
    std::size_t rhs = 0;
    for (auto c : seq.bottom) rhs += std::min(c, k);
    if (lhs > rhs) return false;
  }
  return true;
}

IncidenceMatrix to_incidence_matrix(const BipartiteGraph& g) {
  IncidenceMatrix matrix(g.n(), g.m());
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (node_t v : g.neighbors(i)) matrix.at(i, v) = 1;
  }
  return matrix;
}

BipartiteGraph from_incidence_matrix(const IncidenceMatrix& matrix) {
  if (matrix.cells.size() != matrix.rows * matrix.cols) {
    throw error(errc::invalid_parameter, "incidence matrix has wrong cell count");
  }
  std::vector<AdjList> lists(matrix.rows);
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      auto cell = matrix.at(i, j);
      if (cell > 1) {
        throw error(errc::invalid_entry,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") = " + std::to_string(cell) + " is not 0 or 1");
      }
      if (cell == 1) lists[i].push_back(static_cast<node_t>(j));
    }
  }
  return BipartiteGraph::from_adjacency(std::move(lists), matrix.cols);
}

CanonicalKey canonical_key(const BipartiteGraph& g) {
  // Layout: n, m, then each list followed by a 0xFFFFFFFF separator.
  CanonicalKey key;
  key.bytes.reserve(4 * (2 + g.n() + g.edge_count()));
  append_u32(key.bytes, static_cast<std::uint32_t>(g.n()));
  append_u32(key.bytes, static_cast<std::uint32_t>(g.m()));
  for (const auto& list : g.lists()) {
    for (node_t v : list) append_u32(key.bytes, v);
    append_u32(key.bytes, 0xFFFFFFFFu);
  }
  return key;
}

}  // namespace fastball
