#include "fastball/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fastball/error.hpp"

namespace fastball {
namespace {

class LabelTable {
 public:
  node_t intern(const std::string& label) {
    auto [it, inserted] =
        index_.try_emplace(label, static_cast<node_t>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }
  std::size_t size() const { return labels_.size(); }
  std::vector<std::string> release() { return std::move(labels_); }

 private:
  std::unordered_map<std::string, node_t> index_;
  std::vector<std::string> labels_;
};

bool skippable(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

LabeledGraph read_edge_list(std::istream& in) {
  LabelTable tops;
  LabelTable bottoms;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string top, bottom, extra;
    if (!(fields >> top >> bottom)) {
      throw parse_error(lineno, "expected `top_label bottom_label`, got '" +
                                    line + "'");
    }
    if (fields >> extra) {
      throw parse_error(lineno, "unexpected trailing field '" + extra + "'");
    }
    edges.emplace_back(tops.intern(top), bottoms.intern(bottom));
    edge_lines.push_back(lineno);
  }
  if (in.bad()) throw error(errc::io_error, "read failure");

  LabeledGraph out;
  try {
    out.graph = BipartiteGraph::from_edge_list(edges, tops.size(), bottoms.size());
  } catch (const error& e) {
    if (e.code() != errc::duplicate_edge) throw;
    // Report the first repeated edge by line.
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto code = (std::uint64_t{edges[k].first} << 32) | edges[k].second;
      if (!seen.emplace(code, k).second) {
        throw parse_error(edge_lines[k], "duplicate edge");
      }
    }
    throw;
  }
  out.top_labels = tops.release();
  out.bottom_labels = bottoms.release();
  return out;
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g,
                     const LabeledGraph& labels) {
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (node_t v : g.neighbors(i)) {
      out << labels.top_labels[i] << ' ' << labels.bottom_labels[v] << '\n';
    }
  }
}

void write_edge_list(std::ostream& out, const LabeledGraph& g) {
  write_edge_list(out, g.graph, g);
}

LabeledGraph with_index_labels(BipartiteGraph g) {
  LabeledGraph out;
  out.top_labels.reserve(g.n());
  out.bottom_labels.reserve(g.m());
  for (std::size_t i = 0; i < g.n(); ++i) out.top_labels.push_back(std::to_string(i));
  for (std::size_t j = 0; j < g.m(); ++j) out.bottom_labels.push_back(std::to_string(j));
  out.graph = std::move(g);
  return out;
}

LabeledGraph read_incidence_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!skippable(line)) return true;
    }
    return false;
  };

  if (!next_line()) throw parse_error(lineno + 1, "missing `n m` header");
  std::size_t n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) {
      throw parse_error(lineno, "expected `n m` header, got '" + line + "'");
    }
  }
  IncidenceMatrix matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line()) {
      throw parse_error(lineno + 1, "expected " + std::to_string(n) +
                                        " matrix rows, got " + std::to_string(i));
    }
    std::istringstream row(line);
    std::string cell;
    std::size_t j = 0;
    while (row >> cell) {
      if (j == m) throw parse_error(lineno, "row has more than " + std::to_string(m) + " entries");
      if (cell != "0" && cell != "1") {
        throw parse_error(lineno, "entry '" + cell + "' is not 0 or 1");
      }
      matrix.at(i, j++) = cell == "1" ? 1 : 0;
    }
    if (j != m) {
      throw parse_error(lineno, "row has " + std::to_string(j) +
                                    " entries, expected " + std::to_string(m));
    }
  }
  if (next_line()) throw parse_error(lineno, "trailing content after matrix rows");
  return with_index_labels(from_incidence_matrix(matrix));
}

void write_incidence_matrix(std::ostream& out, const BipartiteGraph& g) {
  auto matrix = to_incidence_matrix(g);
  out << matrix.rows << ' ' << matrix.cols << '\n';
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      if (j) out << ' ';
      out << static_cast<int>(matrix.at(i, j));
    }
    out << '\n';
  }
}

LabeledGraph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open '" + path + "'");
  return format == GraphFormat::edge_list ? read_edge_list(in)
                                          : read_incidence_matrix(in);
}

}  // namespace fastball
