#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "cli_runner.hpp"
#include "fastball/fdsm.hpp"
#include "fastball/graph_io.hpp"

using namespace fastball;

namespace {

const std::string kCards = "A a\nA c\nA e\nA f\nB b\nB d\nB f\n";

// Splits a concatenated sample stream into per-sample edge lists.
std::vector<LabeledGraph> split_samples(const std::string& text) {
  std::vector<LabeledGraph> graphs;
  std::istringstream in(text);
  std::string line, current;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    std::istringstream body(current);
    graphs.push_back(read_edge_list(body));
    current.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind("# sample ", 0) == 0) {
      flush();
      open = true;
    } else if (open) {
      current += line + "\n";
    }
  }
  flush();
  return graphs;
}

}  // namespace

TEST_CASE("cli sample keeps the degree sequence") {
  const auto input = cli::write_file("cards.txt", kCards);
  auto r = cli::run("sample -i " + input.string() + " -n 5 --seed 11");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("# seed=11 trades=10 algorithm=fastball mode=restart version=", 0) == 0);
  auto graphs = split_samples(r.out);
  REQUIRE(graphs.size() == 5);
  for (auto& g : graphs) {
    // Label order differs per sample, so compare sorted degree multisets by label.
    std::map<std::string, std::size_t> top, bottom;
    for (std::size_t i = 0; i < g.graph.n(); ++i) {
      top[g.top_labels[i]] = g.graph.degree(i);
      for (auto v : g.graph.neighbors(i)) ++bottom[g.bottom_labels[v]];
    }
    CHECK(top == std::map<std::string, std::size_t>{{"A", 4}, {"B", 3}});
    CHECK(bottom == std::map<std::string, std::size_t>{
                        {"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}, {"f", 2}});
  }

  const auto dir = cli::scratch_dir() / "samples";
  std::filesystem::remove_all(dir);
  REQUIRE(cli::run("sample -i " + input.string() + " -n 3 --seed 11 --out-dir " + dir.string())
              .exit_code == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 3);
  CHECK(cli::slurp(dir / "sample_000001.txt").find("# sample 1\n") != std::string::npos);
}

TEST_CASE("cli sample with count 0 writes nothing") {
  const auto input = cli::write_file("cards.txt", kCards);
  const auto out = cli::scratch_dir() / "none.txt";
  std::filesystem::remove(out);
  auto r = cli::run("sample -i " + input.string() + " -n 0 --seed 1 -o " + out.string());
  CHECK(r.exit_code == 0);
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("cli parse and usage errors exit 2, I/O errors exit 3") {
  const auto bad = cli::write_file("bad.txt", "A a\na\n");
  auto r = cli::run("sample -i " + bad.string() + " -n 1");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  const auto input = cli::write_file("cards.txt", kCards);
  CHECK(cli::run("backbone -i " + input.string() + " --alpha 1.5").exit_code == 2);
  CHECK(cli::run("backbone -i " + input.string() + " --samples many").exit_code == 2);
  CHECK(cli::run("frobnicate").exit_code == 2);
  CHECK(cli::run("sample -i /nonexistent/file.txt").exit_code == 3);
  CHECK(cli::run("project -i " + input.string() + " -o /nonexistent/dir/out.txt").exit_code == 3);
  CHECK(cli::run("--help").exit_code == 0);
}

TEST_CASE("cli sample reads the incidence matrix format") {
  const auto input = cli::write_file("cards.mat", "2 6\n1 0 1 0 1 1\n0 1 0 1 0 1\n");
  auto r = cli::run("sample --format matrix -i " + input.string() + " -n 1 --seed 2 --trades 0");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("0 0\n0 2\n0 4\n0 5\n1 1\n1 3\n1 5\n") != std::string::npos);
}

TEST_CASE("cli project and backbone") {
  const auto input = cli::write_file("cards.txt", kCards);
  auto p = cli::run("project -i " + input.string());
  REQUIRE(p.exit_code == 0);
  CHECK(p.out.find("A B 1\n") != std::string::npos);

  std::string blocks;
  for (int t = 0; t < 6; ++t)
    for (int v = 0; v < 8; ++v)
      blocks += "t" + std::to_string(t) + " b" + std::to_string((t / 3) * 8 + v) + "\n";
  const auto block_file = cli::write_file("blocks.txt", blocks);
  auto b = cli::run("backbone -i " + block_file.string() + " --samples 300 --seed 5 --alpha 0.05");
  REQUIRE(b.exit_code == 0);
  CHECK(b.out.rfind("# alpha=0.05 samples=300 seed=5 trades=30 algorithm=fastball smooth=0", 0) == 0);
  CHECK(b.out.find("t0 t1 1 ") != std::string::npos);
  CHECK(b.out.find("t0 t3 -1 ") != std::string::npos);
}

TEST_CASE("cli backbone --samples auto records the power-analysis count") {
  // Four isolated pairs keep the 164,685 samples cheap.
  const auto input = cli::write_file("pairs.txt", "x p\ny q\n");
  auto r = cli::run("backbone -i " + input.string() + " --samples auto --alpha 0.05 --seed 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("samples=" + std::to_string(required_samples(0.05, 0.95)) + " ") !=
        std::string::npos);
}

TEST_CASE("cli backbone checkpoint and resume") {
  std::string blocks;
  for (int t = 0; t < 6; ++t)
    for (int v = 0; v < 5; ++v)
      blocks += "t" + std::to_string(t) + " b" + std::to_string((t / 3) * 5 + v) + "\n";
  const auto input = cli::write_file("blocks_ckpt.txt", blocks);
  const auto ckpt = cli::scratch_dir() / "cli.ckpt";
  std::filesystem::remove(ckpt);
  const std::string base = "backbone -i " + input.string() + " --seed 8 --checkpoint " +
                           ckpt.string() + " --checkpoint-every 40";
  auto direct = cli::run("backbone -i " + input.string() + " --seed 8 --samples 200");
  REQUIRE(cli::run(base + " --samples 120").exit_code == 0);
  CHECK(cli::slurp(ckpt).rfind("FASTBALL-NULLCOUNTS 1\n", 0) == 0);
  auto resumed = cli::run(base + " --samples 200 --resume");
  REQUIRE(resumed.exit_code == 0);
  CHECK(resumed.out == direct.out);
}

TEST_CASE("cli verify and bench") {
  auto v = cli::run("verify --space 2,2,2/2,2,2 --samples 3000 --seed 4");
  CHECK(v.exit_code == 0);
  CHECK(v.out.find("PASS 2,2,2/2,2,2 |G|=6") != std::string::npos);

  // One trade from a structured start cannot reach a uniform law.
  auto diag = cli::run("verify --space 2,2,1,1/2,2,1,1 --samples 20000 --trades 1 --seed 4");
  CHECK(diag.exit_code == 4);
  CHECK(diag.out.find("FAIL") != std::string::npos);

  CHECK(cli::run("verify --space 2,2/1").exit_code == 2);

  const auto csv = cli::scratch_dir() / "bench.csv";
  auto b = cli::run("bench --m 100,200 --trades 5 --reps 2 -o " + csv.string());
  CHECK(b.exit_code == 0);
  CHECK(b.out.find("ratio") != std::string::npos);
  const auto text = cli::slurp(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 2);
  CHECK(cli::run("bench --m 101").exit_code == 2);
}
