#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qdt {

// Events are subsets of the state space encoded as bitmasks: bit s is set
// iff state s belongs to the event. The subset index is the mask value.
using Subset = std::uint32_t;

inline constexpr int kMaxStates = 20;

constexpr Subset full_set(int state_count) noexcept {
  return state_count >= 32 ? ~Subset{0} : (Subset{1} << state_count) - 1;
}

constexpr Subset complement(Subset a, int state_count) noexcept {
  return full_set(state_count) & ~a;
}

constexpr Subset singleton(int state) noexcept { return Subset{1} << state; }

constexpr bool contains(Subset a, int state) noexcept { return (a >> state) & 1u; }

constexpr bool is_subset(Subset a, Subset b) noexcept { return (a & ~b) == 0; }

constexpr int cardinality(Subset a) noexcept { return std::popcount(a); }

constexpr std::uint64_t subset_count(int state_count) noexcept {
  return std::uint64_t{1} << state_count;
}

inline std::vector<int> members(Subset a) {
  std::vector<int> out;
  for (int s = 0; a != 0; ++s, a >>= 1)
    if (a & 1u) out.push_back(s);
  return out;
}

}  // namespace qdt
