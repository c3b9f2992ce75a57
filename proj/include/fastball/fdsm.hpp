#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fastball/graph.hpp"
#include "fastball/graph_io.hpp"
#include "fastball/sampler.hpp"

namespace fastball {

// n x n symmetric matrix storing the upper triangle (diagonal included).
template <typename T>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, T fill = T{})
      : n_(n), cells_(n * (n + 1) / 2, fill) {}

  std::size_t n() const noexcept { return n_; }

  T& at(std::size_t i, std::size_t j) noexcept { return cells_[index(i, j)]; }
  const T& at(std::size_t i, std::size_t j) const noexcept {
    return cells_[index(i, j)];
  }

  std::vector<T>& cells() noexcept { return cells_; }
  const std::vector<T>& cells() const noexcept { return cells_; }

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t n_ = 0;
  std::vector<T> cells_;
};

// Co-occurrence weights over top nodes: weight(i, j) = |adj[i] ∩ adj[j]|,
// with the degrees on the diagonal.
struct Projection {
  SymmetricMatrix<std::uint32_t> weights;

  std::size_t n() const noexcept { return weights.n(); }
  std::uint32_t weight(std::size_t i, std::size_t j) const noexcept {
    return weights.at(i, j);
  }
  bool operator==(const Projection&) const = default;
};

Projection project(const BipartiteGraph& g);

// Per-pair tallies of null samples whose weight is >= (ge) or <= (le) the
// observed weight. Ties count toward both.
struct NullCounts {
  std::uint64_t samples_seen = 0;
  SymmetricMatrix<std::uint64_t> ge;
  SymmetricMatrix<std::uint64_t> le;

  NullCounts() = default;
  explicit NullCounts(std::size_t n) : ge(n), le(n) {}

  std::size_t n() const noexcept { return ge.n(); }
  // Elementwise sum; associative and commutative.
  void merge(const NullCounts& other);
  bool operator==(const NullCounts&) const = default;
};

// Compares each pair weight of `sample` with `observed` without building
// the sample's projection. Throws degree_mismatch if the sample's top
// degrees differ from the observed diagonal.
void accumulate_null(const Projection& observed, const BipartiteGraph& sample,
                     NullCounts& counts);

// Monte Carlo sample count for testing an edge p-value against alpha with
// the given power. Normal approximation for one proportion against another
// (Cohen's h): the per-tail threshold p0 = alpha/2 against p1 = 0.95 * p0,
//   n = ceil(((z(1 - alpha) + z(power)) / |2 asin sqrt(p0) - 2 asin sqrt(p1)|)^2).
// Gives 164,685 at alpha = 0.05, power = 0.95. Throws invalid_parameter
// unless both arguments lie in (0, 1).
std::size_t required_samples(double alpha, double power);

struct BackboneOptions {
  double alpha = 0.05;
  std::size_t samples = 10000;
  bool smooth = false;  // p = (count + 1) / (samples + 1)
  std::size_t checkpoint_interval = 10000;
  std::string checkpoint_path;  // empty: no checkpoints
  bool resume = false;          // continue from checkpoint_path if present
};

struct Backbone {
  SymmetricMatrix<std::int8_t> signs;  // +1, -1 or 0; diagonal 0
  double alpha = 0.0;
  std::size_t samples = 0;
  bool smooth = false;
  Projection observed;
  NullCounts counts;

  double p_upper(std::size_t i, std::size_t j) const;
  double p_lower(std::size_t i, std::size_t j) const;
};

// p-value estimate from a tail count.
double tail_probability(std::uint64_t count, std::uint64_t samples,
                        bool smooth);

// Two-tailed decision: +1 when p_upper < alpha/2, -1 when p_lower < alpha/2.
Backbone sign_backbone(const Projection& observed, const NullCounts& counts,
                       double alpha, bool smooth = false);

// Null counts over restart-mode samples [first, last) of the stream defined
// by `config`. Uses config.threads workers, each with private counts.
NullCounts accumulate_samples(const BipartiteGraph& g, const Projection& observed,
                              std::uint64_t first, std::uint64_t last,
                              const SamplerConfig& config);

// Full FDSM pipeline. Deterministic for a given config.seed regardless of
// config.threads.
Backbone extract_backbone(const BipartiteGraph& g, const BackboneOptions& options,
                          const SamplerConfig& config);

namespace serial {

// Single-threaded reference implementations.
NullCounts accumulate_samples(const BipartiteGraph& g, const Projection& observed,
                              std::uint64_t first, std::uint64_t last,
                              const SamplerConfig& config);
Backbone extract_backbone(const BipartiteGraph& g, const BackboneOptions& options,
                          const SamplerConfig& config);

}  // namespace serial

// `label1 label2 sign p_upper p_lower` for every pair with a nonzero sign,
// i < j, in row-major order.
void write_backbone(std::ostream& out, const Backbone& backbone,
                    const std::vector<std::string>& top_labels);

// `label1 label2 weight` for every pair i < j with nonzero weight.
void write_projection(std::ostream& out, const Projection& projection,
                      const std::vector<std::string>& top_labels);

}  // namespace fastball
