#include "fastball/generators.hpp"

#include <numeric>

#include "fastball/error.hpp"

namespace fastball {

BipartiteGraph make_block_graph(const BlockSpec& spec) {
  if (spec.top_degree > spec.pool_size) {
    throw error(errc::invalid_parameter, "top_degree exceeds pool_size");
  }
  Rng rng = make_stream(spec.seed, 0);
  std::vector<AdjList> lists;
  lists.reserve(spec.blocks * spec.tops_per_block);
  std::vector<node_t> pool(spec.pool_size);
  for (std::size_t b = 0; b < spec.blocks; ++b) {
    for (std::size_t t = 0; t < spec.tops_per_block; ++t) {
      std::iota(pool.begin(), pool.end(), static_cast<node_t>(b * spec.pool_size));
      fisher_yates(std::span<node_t>(pool), rng);
      lists.emplace_back(pool.begin(),
                         pool.begin() + static_cast<std::ptrdiff_t>(spec.top_degree));
    }
  }
  return BipartiteGraph::from_adjacency(std::move(lists),
                                        spec.blocks * spec.pool_size);
}

BipartiteGraph random_bipartite(std::size_t n, std::size_t m, double density,
                                Rng& rng) {
  std::vector<AdjList> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (uniform_unit(rng) < density) lists[i].push_back(static_cast<node_t>(j));
    }
  }
  return BipartiteGraph::from_adjacency(std::move(lists), m);
}

}  // namespace fastball
