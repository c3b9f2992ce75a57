#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "fastball/graph.hpp"
#include "fastball/random.hpp"
#include "fastball/trade.hpp"

namespace fastball {

// Mixing budget per sample: five trades per top node.
std::size_t default_trades(std::size_t n);

enum class ChainMode {
  restart,    // each sample runs its own chain from the observed graph
  continuous  // one chain; a sample is emitted every trades_per_sample trades
};

struct SamplerConfig {
  std::optional<std::size_t> trades_per_sample;  // empty: default_trades(n)
  Algorithm algorithm = Algorithm::fastball;
  std::uint64_t seed = 0;
  ChainMode mode = ChainMode::restart;
  int threads = 1;

  std::size_t trades_for(std::size_t n) const {
    return trades_per_sample ? *trades_per_sample : default_trades(n);
  }
};

// Uniform unordered pair of distinct top nodes out of n >= 2, returned in
// draw order.
inline std::pair<std::size_t, std::size_t> pick_pair(Rng& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(uniform_below(rng, n));
  auto j = static_cast<std::size_t>(uniform_below(rng, n - 1));
  if (j >= i) ++j;
  return {i, j};
}

// Runs `trades` trades on g, each between a uniformly chosen unordered pair
// of distinct top nodes. Throws too_few_top_nodes when n < 2.
void randomize_in_place(BipartiteGraph& g, std::size_t trades,
                        Algorithm algorithm, Rng& rng, TradeWorkspace& ws);
// Uses the stream (config.seed, 0).
BipartiteGraph randomize(BipartiteGraph g, std::size_t trades,
                         const SamplerConfig& config);

// Sample `index` of a restart-mode stream: a copy of `observed` after
// trades_for(n) trades driven by the stream (config.seed, index). The result
// does not depend on which thread draws it.
void draw_sample(const BipartiteGraph& observed, std::uint64_t index,
                 const SamplerConfig& config, BipartiteGraph& out,
                 TradeWorkspace& ws);

struct SampleSummary {
  std::size_t samples = 0;
  std::size_t trades_per_sample = 0;
  std::uint64_t total_trades = 0;
};

using SampleConsumer =
    std::function<void(std::uint64_t index, const BipartiteGraph& sample)>;

enum class Delivery {
  ordered,    // consumer runs on the calling thread in index order
  concurrent  // consumer runs on worker threads in any order
};

// Draws `count` samples and hands each to `consumer`. Exceptions thrown by
// the consumer stop the stream and propagate. With Delivery::ordered the
// sequence of (index, sample) calls is identical for every thread count.
SampleSummary sample_stream(const BipartiteGraph& observed, std::size_t count,
                            const SamplerConfig& config,
                            const SampleConsumer& consumer,
                            Delivery delivery = Delivery::ordered);

namespace serial {

// Single-threaded reference for sample_stream.
SampleSummary sample_stream(const BipartiteGraph& observed, std::size_t count,
                            const SamplerConfig& config,
                            const SampleConsumer& consumer);

}  // namespace serial

}  // namespace fastball
