#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fastball/graph.hpp"
#include "fastball/sampler.hpp"

namespace fastball {

// Upper tail of the chi-square distribution, P(X >= statistic).
double chi_square_sf(double statistic, std::size_t dof);

// Pearson goodness of fit of `observed` counts against equal expected counts.
struct GoodnessOfFit {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};
GoodnessOfFit chi_square_uniform(const std::vector<std::uint64_t>& observed);

struct UniformityReport {
  DegreeSequences sequences;
  std::size_t space_size = 0;
  std::size_t samples = 0;
  std::size_t trades = 0;
  std::size_t outside_space = 0;  // samples not in the enumerated space
  std::vector<std::uint64_t> counts;  // per graph, enumeration order
  GoodnessOfFit fit;
  bool passed = false;
};

// Enumerates the space, starts every chain from its first member, draws
// `samples` restart-mode samples and tests them against uniform. Passes when
// every sample lies in the space and the p-value is at least `significance`.
// Spaces with one member pass trivially if closure holds.
UniformityReport check_uniformity(const DegreeSequences& sequences,
                                  std::size_t samples,
                                  const SamplerConfig& config,
                                  double significance = 1e-3);

// Small spaces (2 to 50 graphs) used by the `verify` command.
std::vector<DegreeSequences> default_uniformity_battery();

// "2,2,2/2,2,2" -> top {2,2,2}, bottom {2,2,2}. Throws invalid_parameter.
DegreeSequences parse_degree_spec(std::string_view text);
std::string format_degree_spec(const DegreeSequences& sequences);

}  // namespace fastball
