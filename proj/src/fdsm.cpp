#include "fastball/fdsm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fastball/checkpoint.hpp"
#include "fastball/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fastball {
namespace {

void check_open_unit(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw error(errc::invalid_parameter,
                fmt::format("{} must lie in (0, 1), got {}", name, value));
  }
}

void check_top_degrees(const Projection& observed, const BipartiteGraph& sample) {
  if (sample.n() != observed.n()) {
    throw error(errc::degree_mismatch,
                fmt::format("sample has {} top nodes, observed graph has {}",
                            sample.n(), observed.n()));
  }
  for (std::size_t i = 0; i < sample.n(); ++i) {
    if (sample.degree(i) != observed.weight(i, i)) {
      throw error(errc::degree_mismatch,
                  fmt::format("top node {} has degree {} in the sample, {} "
                              "observed",
                              i, sample.degree(i), observed.weight(i, i)));
    }
  }
}

using Accumulator = NullCounts (*)(const BipartiteGraph&, const Projection&,
                                   std::uint64_t, std::uint64_t,
                                   const SamplerConfig&);

Backbone run_backbone(const BipartiteGraph& g, const BackboneOptions& options,
                      const SamplerConfig& config, Accumulator accumulate) {
  check_open_unit(options.alpha, "alpha");
  if (options.samples == 0) {
    throw error(errc::invalid_parameter, "backbone needs at least one sample");
  }
  if (g.n() < 2) {
    throw error(errc::too_few_top_nodes, "backbone needs at least 2 top nodes");
  }
  if (config.mode != ChainMode::restart) {
    throw error(errc::invalid_parameter,
                "backbone extraction draws restart-mode samples only");
  }

  const Projection observed = project(g);
  Checkpoint state;
  state.seed = config.seed;
  state.trades = config.trades_for(g.n());
  state.algorithm = config.algorithm;
  state.graph_fingerprint = graph_fingerprint(g);
  state.counts = NullCounts(g.n());

  const bool checkpointing = !options.checkpoint_path.empty();
  if (checkpointing && options.resume &&
      std::filesystem::exists(options.checkpoint_path)) {
    Checkpoint saved = load_checkpoint(options.checkpoint_path);
    if (saved.seed != state.seed || saved.trades != state.trades ||
        saved.algorithm != state.algorithm ||
        saved.graph_fingerprint != state.graph_fingerprint ||
        saved.counts.n() != g.n()) {
      throw error(errc::invalid_parameter,
                  "checkpoint '" + options.checkpoint_path +
                      "' was written for a different graph or configuration");
    }
    if (saved.counts.samples_seen > options.samples) {
      throw error(errc::invalid_parameter,
                  fmt::format("checkpoint already holds {} samples, more than "
                              "the {} requested",
                              saved.counts.samples_seen, options.samples));
    }
    state = std::move(saved);
  }

  const std::uint64_t step =
      checkpointing ? std::max<std::size_t>(options.checkpoint_interval, 1)
                    : options.samples;
  while (state.counts.samples_seen < options.samples) {
    const std::uint64_t first = state.counts.samples_seen;
    const std::uint64_t last =
        std::min<std::uint64_t>(options.samples, first + step);
    state.counts.merge(accumulate(g, observed, first, last, config));
    if (checkpointing) save_checkpoint(options.checkpoint_path, state);
  }
  return sign_backbone(observed, state.counts, options.alpha, options.smooth);
}

}  // namespace

Projection project(const BipartiteGraph& g) {
  const std::size_t n = g.n();
  Projection p{SymmetricMatrix<std::uint32_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.weights.at(i, i) = static_cast<std::uint32_t>(g.degree(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      p.weights.at(i, j) =
          static_cast<std::uint32_t>(count_common(g.neighbors(i), g.neighbors(j)));
    }
  }
  return p;
}

void NullCounts::merge(const NullCounts& other) {
  if (other.n() != n()) {
    throw error(errc::invalid_parameter, "cannot merge null counts of different size");
  }
  samples_seen += other.samples_seen;
  auto add = [](auto& into, const auto& from) {
    auto& dst = into.cells();
    const auto& src = from.cells();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  };
  add(ge, other.ge);
  add(le, other.le);
}

void accumulate_null(const Projection& observed, const BipartiteGraph& sample,
                     NullCounts& counts) {
  check_top_degrees(observed, sample);
  if (counts.n() != observed.n()) {
    throw error(errc::invalid_parameter, "null counts sized for a different graph");
  }
  const std::size_t n = sample.n();
  for (std::size_t i = 0; i < n; ++i) {
    // Degrees are fixed, so the diagonal always ties.
    ++counts.ge.at(i, i);
    ++counts.le.at(i, i);
    const auto row = sample.neighbors(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto w = count_common(row, sample.neighbors(j));
      const auto obs = observed.weight(i, j);
      counts.ge.at(i, j) += w >= obs;
      counts.le.at(i, j) += w <= obs;
    }
  }
  ++counts.samples_seen;
}

std::size_t required_samples(double alpha, double power) {
  check_open_unit(alpha, "alpha");
  check_open_unit(power, "power");
  const boost::math::normal standard;
  const double threshold = alpha / 2.0;
  const double shifted = 0.95 * threshold;
  const double effect = std::abs(2.0 * std::asin(std::sqrt(threshold)) -
                                 2.0 * std::asin(std::sqrt(shifted)));
  const double z = boost::math::quantile(standard, 1.0 - alpha) +
                   boost::math::quantile(standard, power);
  return static_cast<std::size_t>(std::ceil((z / effect) * (z / effect)));
}

double tail_probability(std::uint64_t count, std::uint64_t samples, bool smooth) {
  if (smooth) {
    return (static_cast<double>(count) + 1.0) / (static_cast<double>(samples) + 1.0);
  }
  return samples == 0 ? 1.0
                      : static_cast<double>(count) / static_cast<double>(samples);
}

double Backbone::p_upper(std::size_t i, std::size_t j) const {
  return tail_probability(counts.ge.at(i, j), counts.samples_seen, smooth);
}

double Backbone::p_lower(std::size_t i, std::size_t j) const {
  return tail_probability(counts.le.at(i, j), counts.samples_seen, smooth);
}

Backbone sign_backbone(const Projection& observed, const NullCounts& counts,
                       double alpha, bool smooth) {
  check_open_unit(alpha, "alpha");
  if (counts.n() != observed.n()) {
    throw error(errc::invalid_parameter, "null counts sized for a different graph");
  }
  Backbone b;
  b.alpha = alpha;
  b.samples = counts.samples_seen;
  b.smooth = smooth;
  b.observed = observed;
  b.counts = counts;
  const std::size_t n = observed.n();
  b.signs = SymmetricMatrix<std::int8_t>(n);
  const double cutoff = alpha / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (b.p_upper(i, j) < cutoff) {
        b.signs.at(i, j) = 1;
      } else if (b.p_lower(i, j) < cutoff) {
        b.signs.at(i, j) = -1;
      }
    }
  }
  return b;
}

NullCounts accumulate_samples(const BipartiteGraph& g, const Projection& observed,
                              std::uint64_t first, std::uint64_t last,
                              const SamplerConfig& config) {
  const int threads = std::max(config.threads, 1);
  if (threads == 1 || last - first < 2) {
    return serial::accumulate_samples(g, observed, first, last, config);
  }
  if (g.n() < 2) {
    throw error(errc::too_few_top_nodes, "sampling needs at least 2 top nodes");
  }

  std::vector<NullCounts> partial(static_cast<std::size_t>(threads),
                                  NullCounts(g.n()));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::int64_t>(last - first);
#pragma omp parallel num_threads(threads)
  {
#ifdef _OPENMP
    auto& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#else
    auto& mine = partial[0];
#endif
    BipartiteGraph sample;
    TradeWorkspace ws;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t k = 0; k < count; ++k) {
      try {
        draw_sample(g, first + static_cast<std::uint64_t>(k), config, sample, ws);
        accumulate_null(observed, sample, mine);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  NullCounts total(g.n());
  for (const auto& part : partial) total.merge(part);
  return total;
}

Backbone extract_backbone(const BipartiteGraph& g, const BackboneOptions& options,
                          const SamplerConfig& config) {
  return run_backbone(g, options, config, &fastball::accumulate_samples);
}

namespace serial {

NullCounts accumulate_samples(const BipartiteGraph& g, const Projection& observed,
                              std::uint64_t first, std::uint64_t last,
                              const SamplerConfig& config) {
  NullCounts counts(g.n());
  BipartiteGraph sample;
  TradeWorkspace ws;
  for (std::uint64_t k = first; k < last; ++k) {
    draw_sample(g, k, config, sample, ws);
    accumulate_null(observed, sample, counts);
  }
  return counts;
}

Backbone extract_backbone(const BipartiteGraph& g, const BackboneOptions& options,
                          const SamplerConfig& config) {
  return run_backbone(g, options, config, &serial::accumulate_samples);
}

}  // namespace serial

void write_backbone(std::ostream& out, const Backbone& backbone,
                    const std::vector<std::string>& top_labels) {
  const std::size_t n = backbone.signs.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sign = backbone.signs.at(i, j);
      if (sign == 0) continue;
      fmt::print(out, "{} {} {} {:.6g} {:.6g}\n", top_labels[i], top_labels[j],
                 sign, backbone.p_upper(i, j), backbone.p_lower(i, j));
    }
  }
}

void write_projection(std::ostream& out, const Projection& projection,
                      const std::vector<std::string>& top_labels) {
  const std::size_t n = projection.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto w = projection.weight(i, j);
      if (w != 0) fmt::print(out, "{} {} {}\n", top_labels[i], top_labels[j], w);
    }
  }
}

}  // namespace fastball
