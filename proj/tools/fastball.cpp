// fastball: sample bipartite graphs with fixed degrees, extract FDSM
// backbones, benchmark trade kernels and check sampler uniformity.
//
// Exit codes: 0 success, 2 usage or parse error, 3 I/O error,
// 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fastball/bench.hpp"
#include "fastball/error.hpp"
#include "fastball/fdsm.hpp"
#include "fastball/graph_io.hpp"
#include "fastball/sampler.hpp"
#include "fastball/uniformity.hpp"

#ifndef FASTBALL_VERSION
#define FASTBALL_VERSION "0.0.0"
#endif

namespace {

using namespace fastball;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerify = 4;

struct CommonFlags {
  std::string input;
  std::string format = "edges";
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trades;
  std::string algorithm = "fastball";
  int threads = 1;
};

void add_input(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("-i,--input", flags.input, "Input graph file")->required();
  cmd.add_option("--format", flags.format, "Input format")
      ->check(CLI::IsMember({"edges", "matrix"}));
}

void add_sampling(CLI::App& cmd, CommonFlags& flags) {
  cmd.add_option("--seed", flags.seed, "Master seed (random if omitted; always echoed)");
  cmd.add_option("--trades", flags.trades, "Trades per sample (default 5n)");
  cmd.add_option("--algorithm", flags.algorithm, "Trade kernel")
      ->check(CLI::IsMember({"fastball", "curveball"}));
  cmd.add_option("--threads", flags.threads, "Worker threads")->check(CLI::Range(1, 1024));
}

LabeledGraph load(const CommonFlags& flags) {
  return load_graph(flags.input, flags.format == "edges" ? GraphFormat::edge_list
                                                         : GraphFormat::incidence_matrix);
}

SamplerConfig sampler_config(const CommonFlags& flags, std::uint64_t seed) {
  SamplerConfig config;
  config.trades_per_sample = flags.trades;
  config.algorithm = parse_algorithm(flags.algorithm);
  config.seed = seed;
  config.threads = flags.threads;
  return config;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  const auto chosen = entropy_seed();
  fmt::print(stderr, "fastball: using seed {}\n", chosen);
  return chosen;
}

// Output sink: a file when a path is given, standard output otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw error(errc::io_error, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw error(errc::io_error, "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// ---- sample ---------------------------------------------------------------

struct SampleFlags : CommonFlags {
  std::size_t count = 1;
  std::string out_dir;
  bool chain = false;
};

int run_sample(const SampleFlags& flags) {
  const LabeledGraph input = load(flags);
  const std::uint64_t seed = resolve_seed(flags.seed);
  SamplerConfig config = sampler_config(flags, seed);
  config.mode = flags.chain ? ChainMode::continuous : ChainMode::restart;
  if (flags.count == 0) return 0;

  const std::string header =
      fmt::format("# seed={} trades={} algorithm={} mode={} version={}\n", seed,
                  config.trades_for(input.graph.n()), to_string(config.algorithm),
                  flags.chain ? "chain" : "restart", FASTBALL_VERSION);

  if (!flags.out_dir.empty()) {
    std::filesystem::create_directories(flags.out_dir);
    sample_stream(input.graph, flags.count, config,
                  [&](std::uint64_t k, const BipartiteGraph& g) {
                    const auto path = std::filesystem::path(flags.out_dir) /
                                      fmt::format("sample_{:06d}.txt", k);
                    std::ofstream out(path, std::ios::trunc);
                    if (!out) throw error(errc::io_error, "cannot write '" + path.string() + "'");
                    out << header;
                    fmt::print(out, "# sample {}\n", k);
                    write_edge_list(out, g, input);
                    if (!out) throw error(errc::io_error, "write to '" + path.string() + "' failed");
                  });
    return 0;
  }

  Sink sink(flags.output);
  auto& out = sink.stream();
  out << header;
  sample_stream(input.graph, flags.count, config,
                [&](std::uint64_t k, const BipartiteGraph& g) {
                  fmt::print(out, "# sample {}\n", k);
                  write_edge_list(out, g, input);
                });
  sink.finish();
  return 0;
}

// ---- backbone -------------------------------------------------------------

struct BackboneFlags : CommonFlags {
  double alpha = 0.05;
  double power = 0.95;
  std::string samples = "10000";
  bool smooth = false;
  std::string checkpoint;
  std::size_t checkpoint_every = 10000;
  bool resume = false;
};

int run_backbone(const BackboneFlags& flags) {
  if (!(flags.alpha > 0.0 && flags.alpha < 1.0)) {
    throw error(errc::invalid_parameter, fmt::format("--alpha must lie in (0, 1), got {}", flags.alpha));
  }
  BackboneOptions options;
  options.alpha = flags.alpha;
  if (flags.samples == "auto") {
    options.samples = required_samples(flags.alpha, flags.power);
  } else {
    std::size_t used = 0;
    try {
      options.samples = std::stoull(flags.samples, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != flags.samples.size() || options.samples == 0) {
      throw error(errc::invalid_parameter,
                  "--samples must be a positive integer or 'auto', got '" + flags.samples + "'");
    }
  }
  options.smooth = flags.smooth;
  options.checkpoint_path = flags.checkpoint;
  options.checkpoint_interval = flags.checkpoint_every;
  options.resume = flags.resume;

  const LabeledGraph input = load(flags);
  const std::uint64_t seed = resolve_seed(flags.seed);
  const SamplerConfig config = sampler_config(flags, seed);
  const Backbone backbone = extract_backbone(input.graph, options, config);

  Sink sink(flags.output);
  auto& out = sink.stream();
  fmt::print(out,
             "# alpha={} samples={} seed={} trades={} algorithm={} smooth={} "
             "version={}\n",
             options.alpha, backbone.samples, seed, config.trades_for(input.graph.n()),
             to_string(config.algorithm), options.smooth ? 1 : 0, FASTBALL_VERSION);
  out << "# top_label_1 top_label_2 sign p_upper p_lower\n";
  write_backbone(out, backbone, input.top_labels);
  sink.finish();
  return 0;
}

// ---- project --------------------------------------------------------------

int run_project(const CommonFlags& flags) {
  const LabeledGraph input = load(flags);
  Sink sink(flags.output);
  auto& out = sink.stream();
  fmt::print(out, "# projection n={} version={}\n", input.graph.n(), FASTBALL_VERSION);
  write_projection(out, project(input.graph), input.top_labels);
  sink.finish();
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchFlags {
  std::vector<std::size_t> m_values;
  bool big = false;
  std::size_t trades = 100;
  std::size_t replications = 10;
  std::uint64_t seed = 1;
  std::string output;
};

int run_bench_cmd(const BenchFlags& flags) {
  std::vector<std::size_t> m_values = flags.m_values;
  if (m_values.empty()) m_values = {1000, 10000, 100000};
  if (flags.big) m_values.push_back(1000000);
  for (auto m : m_values) make_worst_case_graph(m);  // validate before timing

  pin_to_current_core();
  BenchOptions options;
  options.trades = flags.trades;
  options.replications = flags.replications;
  options.seed = flags.seed;

  Sink sink(flags.output);
  auto results = bench_sweep(m_values, sink.stream(), options);
  sink.finish();
  std::ostream& summary = flags.output.empty() ? std::cerr : std::cout;
  fmt::print(summary, "# seed={} trades={} replications={} version={}\n", flags.seed,
             flags.trades, flags.replications, FASTBALL_VERSION);
  write_bench_summary(summary, results);
  for (const auto& r : results) {
    if (!r.outcomes_valid) {
      fmt::print(stderr, "fastball: {} at m={} broke a degree invariant\n",
                 to_string(r.algorithm), r.m);
      return kExitVerify;
    }
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyFlags {
  std::vector<std::string> spaces;
  std::size_t samples = 100000;
  std::optional<std::size_t> trades;
  std::string algorithm = "fastball";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  double significance = 1e-3;
};

int run_verify(const VerifyFlags& flags) {
  std::vector<DegreeSequences> battery;
  for (const auto& text : flags.spaces) battery.push_back(parse_degree_spec(text));
  if (battery.empty()) battery = default_uniformity_battery();

  const std::uint64_t seed = resolve_seed(flags.seed);
  SamplerConfig config;
  config.trades_per_sample = flags.trades;
  config.algorithm = parse_algorithm(flags.algorithm);
  config.seed = seed;
  config.threads = flags.threads;

  fmt::print("# seed={} samples={} algorithm={} significance={} version={}\n", seed,
             flags.samples, to_string(config.algorithm), flags.significance,
             FASTBALL_VERSION);
  bool all_passed = true;
  for (const auto& seq : battery) {
    const auto report = check_uniformity(seq, flags.samples, config, flags.significance);
    all_passed = all_passed && report.passed;
    fmt::print("{} {} |G|={} samples={} trades={} outside={} chi2={:.4f} dof={} p={:.6g}\n",
               report.passed ? "PASS" : "FAIL", format_degree_spec(seq),
               report.space_size, report.samples, report.trades,
               report.outside_space, report.fit.statistic, report.fit.dof,
               report.fit.p_value);
  }
  std::cout.flush();
  return all_passed ? 0 : kExitVerify;
}

int exit_code_for(errc code) {
  return code == errc::io_error ? kExitIo : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform sampling of bipartite graphs with fixed degree sequences"};
  app.set_version_flag("--version", FASTBALL_VERSION);
  app.require_subcommand(1);

  SampleFlags sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw random graphs with the input's degrees");
  add_input(*sample_cmd, sample);
  add_sampling(*sample_cmd, sample);
  sample_cmd->add_option("-n,--count", sample.count, "Number of samples");
  sample_cmd->add_option("-o,--output", sample.output, "Concatenated output file (default stdout)");
  sample_cmd->add_option("--out-dir", sample.out_dir, "Write one file per sample instead");
  sample_cmd->add_flag("--chain", sample.chain,
                       "Continue one chain, emitting every --trades trades");

  BackboneFlags backbone;
  auto* backbone_cmd = app.add_subcommand("backbone", "Signed FDSM backbone of the projection");
  add_input(*backbone_cmd, backbone);
  add_sampling(*backbone_cmd, backbone);
  backbone_cmd->add_option("--alpha", backbone.alpha, "Two-tailed significance level");
  backbone_cmd->add_option("--power", backbone.power, "Power used by --samples auto");
  backbone_cmd->add_option("--samples", backbone.samples, "Null samples, or 'auto'");
  backbone_cmd->add_flag("--smooth", backbone.smooth, "Use (count+1)/(samples+1) p-values");
  backbone_cmd->add_option("--checkpoint", backbone.checkpoint, "Null-count checkpoint file");
  backbone_cmd->add_option("--checkpoint-every", backbone.checkpoint_every,
                           "Samples between checkpoints")
      ->check(CLI::PositiveNumber);
  backbone_cmd->add_flag("--resume", backbone.resume, "Resume from --checkpoint if present");
  backbone_cmd->add_option("-o,--output", backbone.output, "Output file (default stdout)");

  CommonFlags project_flags;
  auto* project_cmd = app.add_subcommand("project", "Co-occurrence projection onto top nodes");
  add_input(*project_cmd, project_flags);
  project_cmd->add_option("-o,--output", project_flags.output, "Output file (default stdout)");

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time curveball and fastball trades");
  bench_cmd->add_option("--m", bench.m_values, "Bottom-node counts (default 1000,10000,100000)")
      ->delimiter(',');
  bench_cmd->add_flag("--big", bench.big, "Also run m = 1000000");
  bench_cmd->add_option("--trades", bench.trades, "Trades per replication");
  bench_cmd->add_option("--reps", bench.replications, "Replications")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Seed");
  bench_cmd->add_option("-o,--output", bench.output, "CSV file (default stdout)");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Chi-square uniformity battery on small spaces");
  verify_cmd->add_option("--space", verify.spaces, "Degree spec such as 2,2,2/2,2,2 (repeatable)");
  verify_cmd->add_option("--samples", verify.samples, "Samples per space")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trades", verify.trades,
                         "Trades per sample (default 5n; small values are diagnostic)");
  verify_cmd->add_option("--algorithm", verify.algorithm, "Trade kernel")
      ->check(CLI::IsMember({"fastball", "curveball"}));
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads")->check(CLI::Range(1, 1024));
  verify_cmd->add_option("--significance", verify.significance, "Rejection level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sample_cmd) return run_sample(sample);
    if (*backbone_cmd) return run_backbone(backbone);
    if (*project_cmd) return run_project(project_flags);
    if (*bench_cmd) return run_bench_cmd(bench);
    if (*verify_cmd) return run_verify(verify);
  } catch (const parse_error& e) {
    fmt::print(stderr, "fastball: parse error: {}\n", e.what());
    return kExitUsage;
  } catch (const error& e) {
    fmt::print(stderr, "fastball: {}: {}\n", to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "fastball: {}\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
