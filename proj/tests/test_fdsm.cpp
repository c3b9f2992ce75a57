#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fastball/checkpoint.hpp"
#include "fastball/error.hpp"
#include "fastball/fdsm.hpp"
#include "fastball/generators.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fastball;

namespace {

// Two groups of three top nodes over private pools of two bottom nodes.
BipartiteGraph small_blocks() {
  return make_block_graph({.blocks = 2, .tops_per_block = 3, .pool_size = 2, .top_degree = 2});
}

std::filesystem::path scratch(const std::string& name) {
  std::filesystem::path dir = FASTBALL_TEST_TMP;
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected fastball::error");
  return errc::io_error;
}

}  // namespace

TEST_CASE("symmetric matrix indexing") {
  SymmetricMatrix<int> m(4);
  int value = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) m.at(i, j) = value++;
  CHECK(m.cells() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(m.at(3, 1) == m.at(1, 3));
}

TEST_CASE("project") {
  auto p = project(fixtures::card_graph());
  CHECK(p.weight(0, 1) == 1);
  CHECK(p.weight(1, 0) == 1);
  CHECK(p.weight(0, 0) == 4);
  CHECK(p.weight(1, 1) == 3);

  auto same = project(BipartiteGraph::from_adjacency({{1, 4, 6}, {1, 4, 6}}, 7));
  CHECK(same.weight(0, 1) == 3);
  auto disjoint = project(BipartiteGraph::from_adjacency({{0, 1}, {2, 3}}, 4));
  CHECK(disjoint.weight(0, 1) == 0);
}

TEST_CASE("property: projection matches incidence products and is permutation-equivariant") {
  Rng rng = make_stream(17, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 2 + uniform_below(rng, 10);
    const auto g = random_bipartite(n, 1 + uniform_below(rng, 25), uniform_unit(rng), rng);
    const auto p = project(g);
    const auto mat = to_incidence_matrix(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(p.weight(i, j) == oracle::shared(mat, i, j));

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    fisher_yates(std::span<std::size_t>(perm), rng);
    std::vector<AdjList> relabeled(n);
    for (std::size_t i = 0; i < n; ++i) relabeled[perm[i]] = g.lists()[i];
    const auto q = project(BipartiteGraph::from_adjacency(relabeled, g.m()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(q.weight(perm[i], perm[j]) == p.weight(i, j));
  }
}

TEST_CASE("required_samples") {
  // ceil(164684.137) from an independent scipy evaluation of the same form;
  // the published figure is 164,710.
  CHECK(required_samples(0.05, 0.95) == 164685);
  CHECK(std::abs(static_cast<double>(required_samples(0.05, 0.95)) - 164710.0) / 164710.0 < 0.03);

  const double alphas[] = {0.01, 0.025, 0.05, 0.1, 0.2};
  const double powers[] = {0.5, 0.8, 0.9, 0.95, 0.99};
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t p = 0; p < 5; ++p) {
      if (p + 1 < 5) CHECK(required_samples(alphas[a], powers[p + 1]) > required_samples(alphas[a], powers[p]));
      if (a + 1 < 5) CHECK(required_samples(alphas[a + 1], powers[p]) < required_samples(alphas[a], powers[p]));
    }
  }
  CHECK(code_of([] { required_samples(0.0, 0.95); }) == errc::invalid_parameter);
  CHECK(code_of([] { required_samples(0.05, 1.0); }) == errc::invalid_parameter);
  CHECK(code_of([] { required_samples(1.5, 0.5); }) == errc::invalid_parameter);
}

TEST_CASE("accumulate_null") {
  const auto g = fixtures::card_graph();
  const auto obs = project(g);
  NullCounts counts(2);
  accumulate_null(obs, g, counts);
  CHECK(counts.samples_seen == 1);
  CHECK(counts.ge.at(0, 1) == 1);
  CHECK(counts.le.at(0, 1) == 1);

  // Same degrees, two shared cards instead of one.
  const auto heavier = BipartiteGraph::from_adjacency({{0, 1, 4, 5}, {1, 3, 5}}, 6);
  REQUIRE(degrees(heavier).top == degrees(g).top);
  accumulate_null(obs, heavier, counts);
  CHECK(counts.ge.at(0, 1) == 2);
  CHECK(counts.le.at(0, 1) == 1);

  const auto other = BipartiteGraph::from_adjacency({{0, 1, 2}, {1, 3, 5}}, 6);
  CHECK(code_of([&] { accumulate_null(obs, other, counts); }) == errc::degree_mismatch);
  CHECK(code_of([&] { accumulate_null(obs, BipartiteGraph(3, 6), counts); }) ==
        errc::degree_mismatch);
}

TEST_CASE("exhaustive accumulation reproduces the exact null tails") {
  const auto g = small_blocks();
  const auto space = enumerate_space(degrees(g));
  CHECK(space.size() == 1860);  // frozen from an independent enumeration
  const auto obs = project(g);
  NullCounts counts(g.n());
  for (const auto& s : space) accumulate_null(obs, s, counts);
  const auto exact = oracle::exact_tails(g, space);
  CHECK(counts.samples_seen == exact.space);
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = i + 1; j < g.n(); ++j) {
      CHECK(counts.ge.at(i, j) == exact.ge.at({i, j}));
      CHECK(counts.le.at(i, j) == exact.le.at({i, j}));
    }
  }
  // 168 / 1860 within blocks (p = 0.0903), 540 / 1860 below across them.
  CHECK(counts.ge.at(0, 1) == 168);
  CHECK(counts.le.at(0, 3) == 540);

  // Only within-block pairs clear a 0.1 per-tail cutoff.
  auto b = sign_backbone(obs, counts, 0.2);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) CHECK(b.signs.at(i, j) == ((i < 3) == (j < 3) ? 1 : 0));
}

TEST_CASE("null counts merge is associative and commutative") {
  Rng rng(3);
  const auto g = random_bipartite(6, 12, 0.4, rng);
  const auto obs = project(g);
  SamplerConfig config;
  config.seed = 8;
  auto a = serial::accumulate_samples(g, obs, 0, 30, config);
  auto b = serial::accumulate_samples(g, obs, 30, 50, config);
  auto c = serial::accumulate_samples(g, obs, 50, 90, config);
  auto whole = serial::accumulate_samples(g, obs, 0, 90, config);
  NullCounts left = a, right = c;
  left.merge(b);
  left.merge(c);
  right.merge(b);
  right.merge(a);
  CHECK(left == whole);
  CHECK(right == whole);
  CHECK_THROWS_AS(left.merge(NullCounts(3)), error);
}

TEST_CASE("parallel accumulation equals the serial reference") {
  Rng rng(21);
  const auto g = random_bipartite(15, 40, 0.3, rng);
  const auto obs = project(g);
  SamplerConfig config;
  config.seed = 55;
  const auto reference = serial::accumulate_samples(g, obs, 0, 300, config);
  for (int threads : {2, 4, 7}) {
    config.threads = threads;
    CHECK(accumulate_samples(g, obs, 0, 300, config) == reference);
  }
}

TEST_CASE("backbone signs obey the tail thresholds") {
  Rng rng(6);
  const auto g = random_bipartite(10, 30, 0.3, rng);
  SamplerConfig config;
  config.seed = 2;
  BackboneOptions options;
  options.alpha = 0.1;
  options.samples = 500;
  for (bool smooth : {false, true}) {
    options.smooth = smooth;
    const auto b = extract_backbone(g, options, config);
    CHECK(b.samples == 500);
    for (std::size_t i = 0; i < g.n(); ++i) {
      CHECK(b.signs.at(i, i) == 0);
      for (std::size_t j = i + 1; j < g.n(); ++j) {
        const auto ge = b.counts.ge.at(i, j), le = b.counts.le.at(i, j);
        CHECK(ge + le >= b.counts.samples_seen);
        CHECK(ge <= b.counts.samples_seen);
        const double pu = smooth ? (ge + 1.0) / 501.0 : ge / 500.0;
        const double pl = smooth ? (le + 1.0) / 501.0 : le / 500.0;
        const int expected = pu < 0.05 ? 1 : (pl < 0.05 ? -1 : 0);
        CHECK(b.signs.at(i, j) == expected);
      }
    }
  }
}

TEST_CASE("extract_backbone parameters and degenerate spaces") {
  const auto g = small_blocks();
  SamplerConfig config;
  BackboneOptions options;
  options.alpha = 0.0;
  CHECK(code_of([&] { extract_backbone(g, options, config); }) == errc::invalid_parameter);
  options.alpha = 1.5;
  CHECK(code_of([&] { extract_backbone(g, options, config); }) == errc::invalid_parameter);
  options.alpha = 0.05;
  options.samples = 0;
  CHECK(code_of([&] { extract_backbone(g, options, config); }) == errc::invalid_parameter);
  options.samples = 10;
  CHECK(code_of([&] { extract_backbone(BipartiteGraph(1, 2), options, config); }) ==
        errc::too_few_top_nodes);
  config.mode = ChainMode::continuous;
  CHECK(code_of([&] { extract_backbone(g, options, config); }) == errc::invalid_parameter);

  // A complete bipartite graph is the only member of its space.
  const auto complete = BipartiteGraph::from_adjacency(
      std::vector<AdjList>(5, AdjList{0, 1, 2, 3}), 4);
  config.mode = ChainMode::restart;
  options.samples = 200;
  const auto b = extract_backbone(complete, options, config);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(b.signs.at(i, j) == 0);
}

TEST_CASE("serial and parallel backbones agree") {
  const auto g = make_block_graph({.blocks = 2, .tops_per_block = 5, .pool_size = 12, .top_degree = 6});
  SamplerConfig config;
  config.seed = 19;
  BackboneOptions options;
  options.samples = 400;
  const auto reference = serial::extract_backbone(g, options, config);
  config.threads = 4;
  const auto parallel = extract_backbone(g, options, config);
  CHECK(parallel.counts == reference.counts);
  CHECK(parallel.signs == reference.signs);
}

TEST_CASE("checkpoint text round trip") {
  Rng rng(10);
  const auto g = random_bipartite(5, 9, 0.5, rng);
  SamplerConfig config;
  config.seed = 3;
  Checkpoint c;
  c.seed = 3;
  c.trades = 25;
  c.algorithm = Algorithm::curveball;
  c.graph_fingerprint = graph_fingerprint(g);
  c.counts = serial::accumulate_samples(g, project(g), 0, 40, config);
  std::stringstream io;
  write_checkpoint(io, c);
  CHECK(io.str().rfind("FASTBALL-NULLCOUNTS 1\nn 5\n", 0) == 0);
  CHECK(read_checkpoint(io) == c);

  std::istringstream wrong_magic("NOT-A-CHECKPOINT 1\n");
  CHECK_THROWS_AS(read_checkpoint(wrong_magic), parse_error);
  std::istringstream wrong_version("FASTBALL-NULLCOUNTS 2\n");
  CHECK_THROWS_AS(read_checkpoint(wrong_version), parse_error);
  std::istringstream truncated("FASTBALL-NULLCOUNTS 1\nn 2\nseed 1\n");
  CHECK_THROWS_AS(read_checkpoint(truncated), parse_error);
}

TEST_CASE("checkpointed runs resume to the same result") {
  const auto g = make_block_graph({.blocks = 2, .tops_per_block = 4, .pool_size = 10, .top_degree = 5});
  SamplerConfig config;
  config.seed = 44;
  BackboneOptions direct;
  direct.samples = 150;
  const auto expected = extract_backbone(g, direct, config);

  const auto path = scratch("resume.ckpt");
  BackboneOptions partial = direct;
  partial.samples = 60;
  partial.checkpoint_path = path.string();
  partial.checkpoint_interval = 25;
  extract_backbone(g, partial, config);
  CHECK(load_checkpoint(path.string()).counts.samples_seen == 60);

  BackboneOptions resumed = partial;
  resumed.samples = 150;
  resumed.resume = true;
  config.threads = 3;
  const auto b = extract_backbone(g, resumed, config);
  CHECK(b.counts == expected.counts);
  CHECK(b.signs == expected.signs);
  CHECK(load_checkpoint(path.string()).counts.samples_seen == 150);

  resumed.samples = 100;  // fewer than already stored
  CHECK(code_of([&] { extract_backbone(g, resumed, config); }) == errc::invalid_parameter);
  resumed.samples = 200;
  config.seed = 45;  // different stream
  CHECK(code_of([&] { extract_backbone(g, resumed, config); }) == errc::invalid_parameter);
}

TEST_CASE("backbone and projection text output") {
  const auto g = make_block_graph({.blocks = 2, .tops_per_block = 3, .pool_size = 8, .top_degree = 8});
  SamplerConfig config;
  config.seed = 1;
  BackboneOptions options;
  options.samples = 200;
  const auto b = extract_backbone(g, options, config);
  const std::vector<std::string> labels = {"a", "b", "c", "d", "e", "f"};
  std::ostringstream out;
  write_backbone(out, b, labels);
  std::istringstream lines(out.str());
  std::string l1, l2;
  int sign = 0;
  double pu = 0, pl = 0;
  int rows = 0;
  while (lines >> l1 >> l2 >> sign >> pu >> pl) {
    ++rows;
    CHECK(l1 < l2);
    CHECK((sign == 1 || sign == -1));
    CHECK(((l1 < "d") == (l2 < "d")) == (sign == 1));
  }
  CHECK(rows == 15);

  std::ostringstream proj;
  write_projection(proj, project(fixtures::card_graph()), {"A", "B"});
  CHECK(proj.str() == "A B 1\n");
}
