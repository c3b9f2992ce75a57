#include "fastball/uniformity.hpp"

#include <charconv>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>

#include "fastball/error.hpp"

namespace fastball {
namespace {

std::vector<std::size_t> parse_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || end != item.data() + item.size() || item.empty()) {
      throw error(errc::invalid_parameter,
                  "bad degree '" + std::string(item) + "' in degree list");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

}  // namespace

double chi_square_sf(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

GoodnessOfFit chi_square_uniform(const std::vector<std::uint64_t>& observed) {
  GoodnessOfFit fit;
  if (observed.size() < 2) return fit;
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  const double expected =
      static_cast<double>(total) / static_cast<double>(observed.size());
  for (auto c : observed) {
    const double d = static_cast<double>(c) - expected;
    fit.statistic += d * d / expected;
  }
  fit.dof = observed.size() - 1;
  fit.p_value = chi_square_sf(fit.statistic, fit.dof);
  return fit;
}

UniformityReport check_uniformity(const DegreeSequences& sequences,
                                  std::size_t samples,
                                  const SamplerConfig& config,
                                  double significance) {
  UniformityReport report;
  report.sequences = sequences;
  report.samples = samples;
  const auto space = enumerate_space(sequences);
  report.space_size = space.size();
  if (space.empty()) {
    throw error(errc::invalid_parameter,
                "degree sequences " + format_degree_spec(sequences) +
                    " have no realization");
  }
  report.trades = config.trades_for(sequences.top.size());

  std::unordered_map<CanonicalKey, std::size_t> index;
  for (std::size_t k = 0; k < space.size(); ++k) index.emplace(canonical_key(space[k]), k);
  report.counts.assign(space.size(), 0);

  sample_stream(space.front(), samples, config,
                [&](std::uint64_t, const BipartiteGraph& g) {
                  auto it = index.find(canonical_key(g));
                  if (it == index.end()) {
                    ++report.outside_space;
                  } else {
                    ++report.counts[it->second];
                  }
                });

  report.fit = chi_square_uniform(report.counts);
  report.passed = report.outside_space == 0 && report.fit.p_value >= significance;
  return report;
}

std::vector<DegreeSequences> default_uniformity_battery() {
  return {
      {{1, 1}, {1, 1}},                 // 2 graphs
      {{2, 2, 2}, {2, 2, 2}},           // 6
      {{3, 2, 1}, {2, 2, 1, 1}},        // 8
      {{2, 1, 1}, {1, 1, 1, 1}},        // 12
      {{1, 1, 1, 1}, {1, 1, 1, 1}},     // 24
      {{3, 3, 2}, {2, 2, 2, 1, 1}},     // 31
      {{2, 2, 1, 1}, {2, 2, 1, 1}},     // 34
  };
}

DegreeSequences parse_degree_spec(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos) {
    throw error(errc::invalid_parameter,
                "degree spec must look like 'top,degrees/bottom,degrees'");
  }
  return {parse_list(text.substr(0, slash)), parse_list(text.substr(slash + 1))};
}

std::string format_degree_spec(const DegreeSequences& sequences) {
  return join(sequences.top) + "/" + join(sequences.bottom);
}

}  // namespace fastball
