#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fastball/fdsm.hpp"
#include "fastball/trade.hpp"

namespace fastball {

// Resumable state of an FDSM run. Text format, version 1:
//
//   FASTBALL-NULLCOUNTS 1
//   n <top nodes>
//   seed <master seed>
//   trades <trades per sample>
//   algorithm <fastball|curveball>
//   graph <16 hex digits: fingerprint of the observed graph>
//   samples_seen <count>
//   ge
//   <n lines; line i holds ge(i, j) for j = i .. n-1>
//   le
//   <same layout>
//   end
struct Checkpoint {
  std::uint64_t seed = 0;
  std::size_t trades = 0;
  Algorithm algorithm = Algorithm::fastball;
  std::uint64_t graph_fingerprint = 0;
  NullCounts counts;

  bool operator==(const Checkpoint&) const = default;
};

inline constexpr std::string_view kCheckpointMagic = "FASTBALL-NULLCOUNTS";
inline constexpr int kCheckpointVersion = 1;

// FNV-1a over the canonical key.
std::uint64_t graph_fingerprint(const BipartiteGraph& g);

void write_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
// Throws parse_error on malformed input or a version mismatch.
Checkpoint read_checkpoint(std::istream& in);

// File variants. Saving goes through a temporary file and a rename, so an
// interrupted write leaves the previous checkpoint intact.
void save_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace fastball
