#include "fastball/bench.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fastball/error.hpp"
#include "fastball/sampler.hpp"

#ifdef __linux__
#include <sched.h>
#endif

namespace fastball {

BipartiteGraph make_worst_case_graph(std::size_t m) {
  if (m < 2 || m % 2 != 0) {
    throw error(errc::invalid_parameter,
                "worst-case graph needs an even m >= 2, got " + std::to_string(m));
  }
  std::vector<AdjList> lists(2, AdjList(m / 2));
  std::iota(lists[0].begin(), lists[0].end(), node_t{0});
  std::iota(lists[1].begin(), lists[1].end(), static_cast<node_t>(m / 2));
  return BipartiteGraph::from_adjacency(std::move(lists), m);
}

double BenchResult::mean() const {
  if (nanos.empty()) return 0.0;
  return std::accumulate(nanos.begin(), nanos.end(), 0.0) /
         static_cast<double>(nanos.size());
}

double BenchResult::stddev() const {
  if (nanos.size() < 2) return 0.0;
  const double mu = mean();
  double sum = 0.0;
  for (auto t : nanos) sum += (static_cast<double>(t) - mu) * (static_cast<double>(t) - mu);
  return std::sqrt(sum / static_cast<double>(nanos.size() - 1));
}

BenchResult run_bench(Algorithm algorithm, std::size_t m,
                      const BenchOptions& options) {
  BenchResult result;
  result.algorithm = algorithm;
  result.m = m;
  result.trades = options.trades;
  result.replications = options.replications;
  const BipartiteGraph start = make_worst_case_graph(m);
  const DegreeSequences expected = degrees(start);

  const std::size_t total = options.replications + (options.warmup ? 1 : 0);
  for (std::size_t rep = 0; rep < total; ++rep) {
    const bool warm = options.warmup && rep == 0;
    const std::size_t index = options.warmup ? rep - (warm ? 0 : 1) : rep;
    BipartiteGraph g = start;
    Rng rng = make_stream(options.seed, index);
    TradeWorkspace ws;
    ws.out_i.reserve(m);
    ws.out_j.reserve(m);
    ws.victory.reserve(m);
    ws.pool.reserve(m);

    const auto begin = std::chrono::steady_clock::now();
    randomize_in_place(g, options.trades, algorithm, rng, ws);
    const auto end = std::chrono::steady_clock::now();

    if (warm) continue;
    result.nanos.push_back(
        std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin).count());
    if (degrees(g) != expected) result.outcomes_valid = false;
    for (const auto& list : g.lists()) {
      if (!is_strictly_sorted(list)) result.outcomes_valid = false;
    }
  }
  return result;
}

std::vector<BenchResult> bench_sweep(std::span<const std::size_t> m_values,
                                     std::ostream& csv,
                                     const BenchOptions& options) {
  std::vector<BenchResult> results;
  csv << "algorithm,m,rep,nanos\n";
  for (std::size_t m : m_values) {
    for (Algorithm algorithm : {Algorithm::curveball, Algorithm::fastball}) {
      auto result = run_bench(algorithm, m, options);
      for (std::size_t rep = 0; rep < result.nanos.size(); ++rep) {
        fmt::print(csv, "{},{},{},{}\n", to_string(algorithm), m, rep,
                   result.nanos[rep]);
      }
      if (!csv) throw error(errc::io_error, "failed writing benchmark CSV");
      results.push_back(std::move(result));
    }
  }
  return results;
}

void write_bench_summary(std::ostream& out, const std::vector<BenchResult>& results) {
  std::map<std::size_t, std::pair<const BenchResult*, const BenchResult*>> by_m;
  for (const auto& r : results) {
    auto& slot = by_m[r.m];
    (r.algorithm == Algorithm::curveball ? slot.first : slot.second) = &r;
  }
  fmt::print(out, "{:>9} {:>10} {:>14} {:>14} {:>8}\n", "m", "algorithm",
             "mean_ns", "stddev_ns", "ratio");
  for (const auto& [m, pair] : by_m) {
    const auto [curve, fast] = pair;
    const double ratio =
        curve && fast && fast->mean() > 0 ? curve->mean() / fast->mean() : 0.0;
    for (const BenchResult* r : {curve, fast}) {
      if (!r) continue;
      fmt::print(out, "{:>9} {:>10} {:>14.0f} {:>14.0f} {:>8.2f}\n", m,
                 to_string(r->algorithm), r->mean(), r->stddev(), ratio);
    }
  }
}

bool pin_to_current_core() {
#ifdef __linux__
  const int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return sched_setaffinity(0, sizeof(set), &set) == 0;
#else
  return false;
#endif
}

}  // namespace fastball
