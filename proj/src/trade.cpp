#include "fastball/trade.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "fastball/error.hpp"

namespace fastball {

std::size_t count_common(std::span<const node_t> a,
                         std::span<const node_t> b) noexcept {
  std::size_t ia = 0, ib = 0, common = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) {
      ++common;
      ++ia;
      ++ib;
    } else if (a[ia] < b[ib]) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return common;
}

namespace {

// Outputs must already be sized |ni| and |nj|; victory must be consistent.
template <bool Counted>
std::uint64_t merge_pass(std::span<const node_t> ni, std::span<const node_t> nj,
                         std::span<const Side> victory, node_t* out_i,
                         node_t* out_j) noexcept {
  node_t* dst[2] = {out_i, out_j};
  const Side* v = victory.data();
  std::uint64_t ops = 0;
  std::size_t a = 0, b = 0;
  const std::size_t na = ni.size(), nb = nj.size();

  while (a != na && b != nb) {
    if constexpr (Counted) ++ops;
    const node_t x = ni[a];
    const node_t y = nj[b];
    if (x == y) {
      *dst[0]++ = x;
      *dst[1]++ = y;
      ++a;
      ++b;
    } else if (x < y) {
      *dst[static_cast<std::uint8_t>(*v++)]++ = x;
      ++a;
    } else {
      *dst[static_cast<std::uint8_t>(*v++)]++ = y;
      ++b;
    }
  }
  // One list is exhausted; the rest of the other fills the remaining slots.
  for (; a != na; ++a) {
    if constexpr (Counted) ++ops;
    *dst[static_cast<std::uint8_t>(*v++)]++ = ni[a];
  }
  for (; b != nb; ++b) {
    if constexpr (Counted) ++ops;
    *dst[static_cast<std::uint8_t>(*v++)]++ = nj[b];
  }
  assert(v == victory.data() + victory.size());
  return ops;
}

void check_victory(std::span<const node_t> ni, std::span<const node_t> nj,
                   std::span<const Side> victory) {
  const std::size_t common = count_common(ni, nj);
  const std::size_t unique_i = ni.size() - common;
  const std::size_t unique_j = nj.size() - common;
  const auto i_count = static_cast<std::size_t>(
      std::count(victory.begin(), victory.end(), Side::i));
  if (victory.size() != unique_i + unique_j || i_count != unique_i) {
    throw error(errc::victory_vector_mismatch,
                "victory vector has " + std::to_string(i_count) + " i and " +
                    std::to_string(victory.size() - i_count) +
                    " j entries, expected " + std::to_string(unique_i) +
                    " and " + std::to_string(unique_j));
  }
}

// Splits the two lists into the intersection and symmetric difference.
void split(std::span<const node_t> ni, std::span<const node_t> nj,
           AdjList& common, std::vector<node_t>& pool) {
  common.clear();
  pool.clear();
  std::size_t a = 0, b = 0;
  while (a < ni.size() && b < nj.size()) {
    if (ni[a] == nj[b]) {
      common.push_back(ni[a]);
      ++a;
      ++b;
    } else if (ni[a] < nj[b]) {
      pool.push_back(ni[a++]);
    } else {
      pool.push_back(nj[b++]);
    }
  }
  pool.insert(pool.end(), ni.begin() + static_cast<std::ptrdiff_t>(a), ni.end());
  pool.insert(pool.end(), nj.begin() + static_cast<std::ptrdiff_t>(b), nj.end());
}

void curveball_assign(std::span<const node_t> ni, const AdjList& common,
                      std::span<const node_t> shuffled, AdjList& out_i,
                      AdjList& out_j) {
  // `common` may alias out_j.
  const std::size_t take_i = ni.size() - common.size();
  const auto split_at = shuffled.begin() + static_cast<std::ptrdiff_t>(take_i);
  out_i.assign(common.begin(), common.end());
  out_i.insert(out_i.end(), shuffled.begin(), split_at);
  if (&out_j != &common) out_j.assign(common.begin(), common.end());
  out_j.insert(out_j.end(), split_at, shuffled.end());
  std::sort(out_i.begin(), out_i.end());
  std::sort(out_j.begin(), out_j.end());
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  return algorithm == Algorithm::fastball ? "fastball" : "curveball";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fastball") return Algorithm::fastball;
  if (name == "curveball") return Algorithm::curveball;
  throw error(errc::invalid_parameter,
              "unknown algorithm '" + std::string(name) + "'");
}

VictoryVector VictoryVector::unshuffled(std::size_t unique_i,
                                        std::size_t unique_j) {
  VictoryVector v;
  v.sides.assign(unique_i, Side::i);
  v.sides.insert(v.sides.end(), unique_j, Side::j);
  return v;
}

std::size_t VictoryVector::count(Side side) const noexcept {
  return static_cast<std::size_t>(std::count(sides.begin(), sides.end(), side));
}

bool is_strictly_sorted(std::span<const node_t> list) noexcept {
  return std::adjacent_find(list.begin(), list.end(),
                            [](node_t x, node_t y) { return x >= y; }) ==
         list.end();
}

std::size_t intersection_size(std::span<const node_t> a,
                              std::span<const node_t> b) {
  if (!is_strictly_sorted(a) || !is_strictly_sorted(b)) {
    throw error(errc::unsorted_input,
                "intersection_size requires strictly increasing lists");
  }
  return count_common(a, b);
}

TradeOutcome fastball_trade_core(std::span<const node_t> ni,
                                 std::span<const node_t> nj,
                                 std::span<const Side> victory) {
  TradeOutcome out;
  fastball_trade_core_counted(ni, nj, victory, out);
  return out;
}

std::uint64_t fastball_trade_core_counted(std::span<const node_t> ni,
                                          std::span<const node_t> nj,
                                          std::span<const Side> victory,
                                          TradeOutcome& out) {
  check_victory(ni, nj, victory);
  out.new_i.resize(ni.size());
  out.new_j.resize(nj.size());
  return merge_pass<true>(ni, nj, victory, out.new_i.data(), out.new_j.data());
}

TradeOutcome curveball_trade_core(std::span<const node_t> ni,
                                  std::span<const node_t> nj,
                                  std::span<const node_t> shuffled) {
  AdjList common;
  std::vector<node_t> pool;
  split(ni, nj, common, pool);
  std::vector<node_t> given(shuffled.begin(), shuffled.end());
  std::sort(given.begin(), given.end());
  if (given != pool) {
    throw error(errc::invalid_parameter,
                "shuffled sequence is not a permutation of the symmetric "
                "difference");
  }
  TradeOutcome out;
  curveball_assign(ni, common, shuffled, out.new_i, out.new_j);
  return out;
}

void fastball_trade(std::span<const node_t> ni, std::span<const node_t> nj,
                    Rng& rng, TradeWorkspace& ws) {
  const std::size_t common = count_common(ni, nj);
  const std::size_t unique_i = ni.size() - common;
  const std::size_t unique_j = nj.size() - common;
  ws.victory.resize(unique_i + unique_j);
  std::fill_n(ws.victory.begin(), unique_i, Side::i);
  std::fill(ws.victory.begin() + static_cast<std::ptrdiff_t>(unique_i),
            ws.victory.end(), Side::j);
  fisher_yates(std::span<Side>(ws.victory), rng);
  ws.out_i.resize(ni.size());
  ws.out_j.resize(nj.size());
  merge_pass<false>(ni, nj, ws.victory, ws.out_i.data(), ws.out_j.data());
}

void curveball_trade(std::span<const node_t> ni, std::span<const node_t> nj,
                     Rng& rng, TradeWorkspace& ws) {
  // out_j holds the intersection until the pool is dealt.
  split(ni, nj, ws.out_j, ws.pool);
  fisher_yates(std::span<node_t>(ws.pool), rng);
  curveball_assign(ni, ws.out_j, ws.pool, ws.out_i, ws.out_j);
}

TradeOutcome fastball_trade(std::span<const node_t> ni,
                            std::span<const node_t> nj, Rng& rng) {
  TradeWorkspace ws;
  fastball_trade(ni, nj, rng, ws);
  return {std::move(ws.out_i), std::move(ws.out_j)};
}

TradeOutcome curveball_trade(std::span<const node_t> ni,
                             std::span<const node_t> nj, Rng& rng) {
  TradeWorkspace ws;
  curveball_trade(ni, nj, rng, ws);
  return {std::move(ws.out_i), std::move(ws.out_j)};
}

}  // namespace fastball
