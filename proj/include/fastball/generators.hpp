#pragma once

#include <cstdint>

#include "fastball/graph.hpp"
#include "fastball/random.hpp"

namespace fastball {

// Planted-partition fixture: `blocks` groups of `tops_per_block` top nodes.
// Group b owns the private bottom pool [b * pool_size, (b + 1) * pool_size);
// each of its top nodes links to `top_degree` distinct nodes of that pool,
// chosen uniformly with `seed`. With top_degree == pool_size every pool node
// is shared by the whole group.
struct BlockSpec {
  std::size_t blocks = 2;
  std::size_t tops_per_block = 10;
  std::size_t pool_size = 50;
  std::size_t top_degree = 50;
  std::uint64_t seed = 1;
};

BipartiteGraph make_block_graph(const BlockSpec& spec);

// Each of the n*m cells is an edge independently with probability `density`.
BipartiteGraph random_bipartite(std::size_t n, std::size_t m, double density,
                                Rng& rng);

}  // namespace fastball
