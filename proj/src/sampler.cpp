#include "fastball/sampler.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>

#include "fastball/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fastball {
namespace {

void require_pairs(const BipartiteGraph& g) {
  if (g.n() < 2) {
    throw error(errc::too_few_top_nodes,
                "trades need at least 2 top nodes, graph has " +
                    std::to_string(g.n()));
  }
}

SampleSummary continuous_stream(const BipartiteGraph& observed,
                                std::size_t count, const SamplerConfig& config,
                                const SampleConsumer& consumer) {
  SampleSummary summary;
  summary.trades_per_sample = config.trades_for(observed.n());
  BipartiteGraph state = observed;
  Rng rng = make_stream(config.seed, 0);
  TradeWorkspace ws;
  for (std::size_t k = 0; k < count; ++k) {
    randomize_in_place(state, summary.trades_per_sample, config.algorithm, rng,
                       ws);
    summary.total_trades += summary.trades_per_sample;
    consumer(k, state);
    ++summary.samples;
  }
  return summary;
}

}  // namespace

std::size_t default_trades(std::size_t n) {
  if (n == 0) throw error(errc::invalid_parameter, "default_trades needs n >= 1");
  return 5 * n;
}

void randomize_in_place(BipartiteGraph& g, std::size_t trades,
                        Algorithm algorithm, Rng& rng, TradeWorkspace& ws) {
  require_pairs(g);
  for (std::size_t t = 0; t < trades; ++t) {
    const auto [i, j] = pick_pair(rng, g.n());
    trade(algorithm, g.neighbors(i), g.neighbors(j), rng, ws);
    g.apply_trade(i, j, ws.out_i, ws.out_j);
  }
}

BipartiteGraph randomize(BipartiteGraph g, std::size_t trades,
                         const SamplerConfig& config) {
  require_pairs(g);
  Rng rng = make_stream(config.seed, 0);
  TradeWorkspace ws;
  randomize_in_place(g, trades, config.algorithm, rng, ws);
  return g;
}

void draw_sample(const BipartiteGraph& observed, std::uint64_t index,
                 const SamplerConfig& config, BipartiteGraph& out,
                 TradeWorkspace& ws) {
  out = observed;
  Rng rng = make_stream(config.seed, index);
  randomize_in_place(out, config.trades_for(observed.n()), config.algorithm,
                     rng, ws);
}

namespace serial {

SampleSummary sample_stream(const BipartiteGraph& observed, std::size_t count,
                            const SamplerConfig& config,
                            const SampleConsumer& consumer) {
  require_pairs(observed);
  if (config.mode == ChainMode::continuous) {
    return continuous_stream(observed, count, config, consumer);
  }
  SampleSummary summary;
  summary.trades_per_sample = config.trades_for(observed.n());
  BipartiteGraph sample;
  TradeWorkspace ws;
  for (std::size_t k = 0; k < count; ++k) {
    draw_sample(observed, k, config, sample, ws);
    summary.total_trades += summary.trades_per_sample;
    consumer(k, sample);
    ++summary.samples;
  }
  return summary;
}

}  // namespace serial

SampleSummary sample_stream(const BipartiteGraph& observed, std::size_t count,
                            const SamplerConfig& config,
                            const SampleConsumer& consumer,
                            Delivery delivery) {
  require_pairs(observed);
  const int threads = std::max(config.threads, 1);
  if (threads == 1 || config.mode == ChainMode::continuous) {
    return serial::sample_stream(observed, count, config, consumer);
  }

  SampleSummary summary;
  summary.trades_per_sample = config.trades_for(observed.n());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto record = [&](std::exception_ptr e) {
    std::lock_guard lock(failure_mutex);
    if (!failure) failure = e;
  };

  if (delivery == Delivery::concurrent) {
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(threads)
    {
      BipartiteGraph sample;
      TradeWorkspace ws;
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t k = 0; k < total; ++k) {
        bool stop = false;
        {
          std::lock_guard lock(failure_mutex);
          stop = static_cast<bool>(failure);
        }
        if (stop) continue;
        try {
          draw_sample(observed, static_cast<std::uint64_t>(k), config, sample, ws);
          consumer(static_cast<std::uint64_t>(k), sample);
        } catch (...) {
          record(std::current_exception());
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
    summary.samples = count;
    summary.total_trades = std::uint64_t{count} * summary.trades_per_sample;
    return summary;
  }

  // Ordered delivery: fill a batch in parallel, then hand it over in order.
  const std::size_t batch = static_cast<std::size_t>(threads) * 8;
  std::vector<BipartiteGraph> slots(std::min(batch, count));
  for (std::size_t start = 0; start < count; start += batch) {
    const std::size_t stop = std::min(count, start + batch);
    const auto width = static_cast<std::int64_t>(stop - start);
#pragma omp parallel num_threads(threads)
    {
      TradeWorkspace ws;
#pragma omp for schedule(static)
      for (std::int64_t k = 0; k < width; ++k) {
        try {
          draw_sample(observed, start + static_cast<std::size_t>(k), config,
                      slots[static_cast<std::size_t>(k)], ws);
        } catch (...) {
          record(std::current_exception());
        }
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t k = start; k < stop; ++k) {
      consumer(k, slots[k - start]);
      ++summary.samples;
      summary.total_trades += summary.trades_per_sample;
    }
  }
  return summary;
}

}  // namespace fastball
