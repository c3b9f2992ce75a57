#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fastball/graph.hpp"

namespace fastball {

// A graph together with the external labels of its nodes. Index k of
// top_labels names top node k; labels are assigned in order of first
// appearance when reading.
struct LabeledGraph {
  BipartiteGraph graph;
  std::vector<std::string> top_labels;
  std::vector<std::string> bottom_labels;
};

// Edge list text: one `top bottom` pair per line, whitespace separated.
// Blank lines and lines starting with '#' are skipped. Throws parse_error
// (with the line number) on malformed lines or repeated edges.
LabeledGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const LabeledGraph& g);
// Writes `g` using the labels of `labels` (same n and m).
void write_edge_list(std::ostream& out, const BipartiteGraph& g,
                     const LabeledGraph& labels);

// Incidence matrix text: header `n m`, then n rows of m 0/1 digits separated
// by spaces. Labels are the decimal row/column indices.
LabeledGraph read_incidence_matrix(std::istream& in);
void write_incidence_matrix(std::ostream& out, const BipartiteGraph& g);

LabeledGraph with_index_labels(BipartiteGraph g);

// Opens `path` and dispatches on format; throws error(io_error) when the
// file cannot be read.
enum class GraphFormat { edge_list, incidence_matrix };
LabeledGraph load_graph(const std::string& path, GraphFormat format);

}  // namespace fastball
