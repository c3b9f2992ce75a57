#include "fastball/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "fastball/error.hpp"

namespace fastball {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::istringstream next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw parse_error(lineno_ + 1, std::string("unexpected end of checkpoint, expected ") + what);
    }
    ++lineno_;
    return std::istringstream(line);
  }

  // Reads `key value` and checks the key.
  template <typename T>
  T field(const char* key) {
    auto fields = next(key);
    std::string name;
    T value{};
    if (!(fields >> name >> value) || name != key) {
      throw parse_error(lineno_, std::string("expected field '") + key + "'");
    }
    return value;
  }

  void keyword(const char* word) {
    auto fields = next(word);
    std::string got;
    fields >> got;
    if (got != word) {
      throw parse_error(lineno_, std::string("expected '") + word + "'");
    }
  }

  void triangle(SymmetricMatrix<std::uint64_t>& matrix) {
    const std::size_t n = matrix.n();
    for (std::size_t i = 0; i < n; ++i) {
      auto fields = next("matrix row");
      for (std::size_t j = i; j < n; ++j) {
        if (!(fields >> matrix.at(i, j))) {
          throw parse_error(lineno_, fmt::format("row {} is short", i));
        }
      }
    }
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

void write_triangle(std::ostream& out, const SymmetricMatrix<std::uint64_t>& m) {
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = i; j < m.n(); ++j) {
      if (j != i) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

}  // namespace

std::uint64_t graph_fingerprint(const BipartiteGraph& g) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical_key(g).bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

void write_checkpoint(std::ostream& out, const Checkpoint& c) {
  fmt::print(out, "{} {}\n", kCheckpointMagic, kCheckpointVersion);
  fmt::print(out, "n {}\nseed {}\ntrades {}\nalgorithm {}\ngraph {:016x}\n",
             c.counts.n(), c.seed, c.trades, to_string(c.algorithm),
             c.graph_fingerprint);
  fmt::print(out, "samples_seen {}\n", c.counts.samples_seen);
  out << "ge\n";
  write_triangle(out, c.counts.ge);
  out << "le\n";
  write_triangle(out, c.counts.le);
  out << "end\n";
}

Checkpoint read_checkpoint(std::istream& in) {
  LineReader reader(in);
  {
    auto header = reader.next("header");
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kCheckpointMagic) {
      throw parse_error(1, "not a null-count checkpoint");
    }
    if (version != kCheckpointVersion) {
      throw parse_error(1, fmt::format("unsupported checkpoint version {}", version));
    }
  }
  Checkpoint c;
  const auto n = reader.field<std::size_t>("n");
  c.seed = reader.field<std::uint64_t>("seed");
  c.trades = reader.field<std::size_t>("trades");
  const auto algorithm = reader.field<std::string>("algorithm");
  try {
    c.algorithm = parse_algorithm(algorithm);
  } catch (const error&) {
    throw parse_error(reader.lineno(), "unknown algorithm '" + algorithm + "'");
  }
  const auto fingerprint = reader.field<std::string>("graph");
  try {
    std::size_t used = 0;
    c.graph_fingerprint = std::stoull(fingerprint, &used, 16);
    if (used != fingerprint.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw parse_error(reader.lineno(), "bad graph fingerprint '" + fingerprint + "'");
  }
  c.counts = NullCounts(n);
  c.counts.samples_seen = reader.field<std::uint64_t>("samples_seen");
  reader.keyword("ge");
  reader.triangle(c.counts.ge);
  reader.keyword("le");
  reader.triangle(c.counts.le);
  reader.keyword("end");
  return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
  const std::string staging = path + ".tmp";
  {
    std::ofstream out(staging, std::ios::trunc);
    if (!out) throw error(errc::io_error, "cannot write '" + staging + "'");
    write_checkpoint(out, checkpoint);
    out.flush();
    if (!out) throw error(errc::io_error, "write to '" + staging + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(staging, path, ec);
  if (ec) throw error(errc::io_error, "cannot replace '" + path + "': " + ec.message());
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io_error, "cannot open '" + path + "'");
  return read_checkpoint(in);
}

}  // namespace fastball
