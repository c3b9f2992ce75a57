#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fastball/graph.hpp"
#include "fastball/random.hpp"

namespace fastball {

enum class Algorithm { fastball, curveball };

std::string_view to_string(Algorithm algorithm) noexcept;
// Accepts "fastball" or "curveball"; throws invalid_parameter otherwise.
Algorithm parse_algorithm(std::string_view name);

// Which trading node receives the next element of the symmetric difference.
enum class Side : std::uint8_t { i = 0, j = 1 };

// Victory vector for a fastball trade: one entry per element of the
// symmetric difference, in the order the merge pass meets them.
struct VictoryVector {
  std::vector<Side> sides;

  // `unique_i` copies of Side::i followed by `unique_j` copies of Side::j.
  static VictoryVector unshuffled(std::size_t unique_i, std::size_t unique_j);
  std::size_t count(Side side) const noexcept;
  std::size_t size() const noexcept { return sides.size(); }
};

struct TradeOutcome {
  AdjList new_i;
  AdjList new_j;

  bool operator==(const TradeOutcome&) const = default;
};

bool is_strictly_sorted(std::span<const node_t> list) noexcept;

// |a ∩ b| for lists already known to be strictly increasing (unchecked).
std::size_t count_common(std::span<const node_t> a,
                         std::span<const node_t> b) noexcept;

// |a ∩ b| by a single merge pass. Throws unsorted_input if either list is
// not strictly increasing.
std::size_t intersection_size(std::span<const node_t> a,
                              std::span<const node_t> b);

// The deterministic merge pass of a fastball trade. Elements present in both
// lists go to both outputs; the k-th smallest element of the symmetric
// difference goes to the side named by victory[k]. Outputs come out sorted.
// Throws victory_vector_mismatch unless victory holds exactly |Ni|-|I| i's
// and |Nj|-|I| j's.
TradeOutcome fastball_trade_core(std::span<const node_t> ni,
                                 std::span<const node_t> nj,
                                 std::span<const Side> victory);

// Same pass with an operation counter (one per loop iteration of either the
// merge or the tail appends), for checking the linear cost.
std::uint64_t fastball_trade_core_counted(std::span<const node_t> ni,
                                          std::span<const node_t> nj,
                                          std::span<const Side> victory,
                                          TradeOutcome& out);

// Curveball without the randomness: `shuffled` is a permutation of the
// symmetric difference. new_i = I + the first |Ni|-|I| entries, new_j = I +
// the rest, both sorted afterwards.
TradeOutcome curveball_trade_core(std::span<const node_t> ni,
                                  std::span<const node_t> nj,
                                  std::span<const node_t> shuffled);

TradeOutcome fastball_trade(std::span<const node_t> ni,
                            std::span<const node_t> nj, Rng& rng);
TradeOutcome curveball_trade(std::span<const node_t> ni,
                             std::span<const node_t> nj, Rng& rng);

// Scratch buffers reused across trades; the trade results land in out_i and
// out_j. Inputs are assumed sorted (unchecked).
struct TradeWorkspace {
  AdjList out_i;
  AdjList out_j;
  std::vector<Side> victory;
  std::vector<node_t> pool;
};

void fastball_trade(std::span<const node_t> ni, std::span<const node_t> nj,
                    Rng& rng, TradeWorkspace& ws);
void curveball_trade(std::span<const node_t> ni, std::span<const node_t> nj,
                     Rng& rng, TradeWorkspace& ws);

inline void trade(Algorithm algorithm, std::span<const node_t> ni,
                  std::span<const node_t> nj, Rng& rng, TradeWorkspace& ws) {
  if (algorithm == Algorithm::fastball) {
    fastball_trade(ni, nj, rng, ws);
  } else {
    curveball_trade(ni, nj, rng, ws);
  }
}

}  // namespace fastball
