#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fastball/graph.hpp"
#include "fastball/trade.hpp"

namespace fastball {

// Two top nodes, each adjacent to its own half of the m bottom nodes: the
// intersection is empty and every bottom node is up for trade. m must be
// even and at least 2.
BipartiteGraph make_worst_case_graph(std::size_t m);

struct BenchResult {
  Algorithm algorithm = Algorithm::fastball;
  std::size_t m = 0;
  std::size_t trades = 0;
  std::size_t replications = 0;
  std::vector<std::int64_t> nanos;  // one per replication
  bool outcomes_valid = true;       // final graphs kept their degrees

  double mean() const;
  double stddev() const;  // sample standard deviation
};

struct BenchOptions {
  std::size_t trades = 100;
  std::size_t replications = 10;
  std::uint64_t seed = 1;
  bool warmup = true;  // one discarded replication first
};

// Times only the trade loop. Every replication starts from a fresh graph and
// its own RNG stream (seed, replication), shared by both algorithms.
BenchResult run_bench(Algorithm algorithm, std::size_t m,
                      const BenchOptions& options = {});

// Runs both algorithms for each m, writing `algorithm,m,rep,nanos` rows.
std::vector<BenchResult> bench_sweep(std::span<const std::size_t> m_values,
                                     std::ostream& csv,
                                     const BenchOptions& options = {});

// mean, stddev and curveball/fastball ratio per m.
void write_bench_summary(std::ostream& out, const std::vector<BenchResult>& results);

// Restricts the calling thread to the CPU it is running on. Returns false
// where unsupported.
bool pin_to_current_core();

}  // namespace fastball
