#pragma once

#include "fastball/graph.hpp"

namespace fixtures {

// Two children trading cards a..f (0..5): A holds a, c, e, f; B holds b, d, f.
inline const fastball::AdjList kCardsA = {0, 2, 4, 5};
inline const fastball::AdjList kCardsB = {1, 3, 5};

inline fastball::BipartiteGraph card_graph() {
  return fastball::BipartiteGraph::from_adjacency({kCardsA, kCardsB}, 6);
}

}  // namespace fixtures
