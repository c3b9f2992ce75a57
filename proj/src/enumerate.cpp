#include <algorithm>

#include "fastball/error.hpp"
#include "fastball/graph.hpp"

namespace fastball {
namespace {

class SpaceEnumerator {
 public:
  SpaceEnumerator(const DegreeSequences& seq)
      : top_(seq.top), residual_(seq.bottom), rows_(seq.top.size()) {}

  std::vector<BipartiteGraph> run() {
    descend(0);
    return std::move(found_);
  }

 private:
  // Remaining rows [row, n) must fit the residual column sums.
  bool rest_feasible(std::size_t row) const {
    DegreeSequences rest;
    rest.top.assign(top_.begin() + static_cast<std::ptrdiff_t>(row), top_.end());
    rest.bottom = residual_;
    return is_realizable(rest);
  }

  void descend(std::size_t row) {
    if (row == top_.size()) {
      found_.push_back(BipartiteGraph::from_adjacency(rows_, residual_.size()));
      return;
    }
    choose(row, 0, top_[row]);
  }

  // Picks the remaining `need` columns of `row` from [col, m) in increasing
  // order, so rows come out sorted and each subset is visited once.
  void choose(std::size_t row, std::size_t col, std::size_t need) {
    if (need == 0) {
      if (rest_feasible(row + 1)) descend(row + 1);
      return;
    }
    const std::size_t m = residual_.size();
    for (std::size_t c = col; c + need <= m; ++c) {
      if (residual_[c] == 0) continue;
      --residual_[c];
      rows_[row].push_back(static_cast<node_t>(c));
      choose(row, c + 1, need - 1);
      rows_[row].pop_back();
      ++residual_[c];
    }
  }

  const std::vector<std::size_t>& top_;
  std::vector<std::size_t> residual_;
  std::vector<AdjList> rows_;
  std::vector<BipartiteGraph> found_;
};

}  // namespace

std::vector<BipartiteGraph> enumerate_space(const DegreeSequences& seq,
                                            std::size_t max_cells) {
  const std::size_t cells = seq.top.size() * seq.bottom.size();
  if (cells > max_cells) {
    throw error(errc::too_large, "degree-sequence space with " +
                                     std::to_string(cells) +
                                     " cells exceeds enumeration guard of " +
                                     std::to_string(max_cells));
  }
  if (!is_realizable(seq)) return {};
  return SpaceEnumerator(seq).run();
}

}  // namespace fastball
