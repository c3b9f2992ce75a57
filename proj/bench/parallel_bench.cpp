// Compares the OpenMP null-accumulation kernel with its serial reference,
// and the two trade kernels on a fixed worst-case graph.
//
//   fastball_bench [samples] [threads]

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <fmt/format.h>

#include "fastball/bench.hpp"
#include "fastball/fdsm.hpp"
#include "fastball/generators.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename F>
double seconds(F&& work) {
  const auto begin = std::chrono::steady_clock::now();
  work();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fastball;
  const std::size_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
#ifdef _OPENMP
  const int threads = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
#else
  const int threads = 1;
#endif

  // Senate-shaped workload, scaled down: 100 top nodes, 2000 bottom nodes.
  Rng rng = make_stream(7, 0);
  const BipartiteGraph g = random_bipartite(100, 2000, 0.02, rng);
  const Projection observed = project(g);
  SamplerConfig config;
  config.seed = 11;

  NullCounts serial_counts, parallel_counts;
  const double serial_s = seconds([&] {
    serial_counts = serial::accumulate_samples(g, observed, 0, samples, config);
  });
  config.threads = threads;
  const double parallel_s = seconds([&] {
    parallel_counts = accumulate_samples(g, observed, 0, samples, config);
  });
  fmt::print("null accumulation, {} samples of a 100x2000 graph\n", samples);
  fmt::print("  serial          {:8.3f} s\n", serial_s);
  fmt::print("  openmp ({:2} thr) {:8.3f} s  speedup {:.2f}  identical={}\n", threads,
             parallel_s, serial_s / parallel_s, serial_counts == parallel_counts);

  for (Algorithm algorithm : {Algorithm::curveball, Algorithm::fastball}) {
    config.algorithm = algorithm;
    config.threads = 1;
    const double s = seconds([&] {
      serial::accumulate_samples(g, observed, 0, samples / 4, config);
    });
    fmt::print("  {:9} kernel, {} samples serial: {:.3f} s\n", to_string(algorithm),
               samples / 4, s);
  }

  BenchOptions options;
  for (std::size_t m : {1000u, 100000u}) {
    const auto curve = run_bench(Algorithm::curveball, m, options);
    const auto fast = run_bench(Algorithm::fastball, m, options);
    fmt::print("worst case m={:>7}: curveball {:>12.0f} ns  fastball {:>12.0f} ns  ratio {:.2f}\n",
               m, curve.mean(), fast.mean(), curve.mean() / fast.mean());
  }
  return serial_counts == parallel_counts ? 0 : 1;
}
