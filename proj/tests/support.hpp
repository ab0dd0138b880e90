#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qdt/acts.hpp"
#include "qdt/capacity.hpp"
#include "qdt/preference.hpp"

namespace qdt::testing {

// Sugeno integral as max over events A of min(σ(A), worst μ on A). Shares no
// code with the level-cut, outcome or median forms.
inline int oracle_sugeno(const DecisionFrame& frame, const Act& f) {
  const int n = frame.state_count();
  int best = 0;
  for (Subset a = 1; a < subset_count(n); ++a) {
    int worst = frame.scale().top_rank();
    for (int s = 0; s < n; ++s)
      if (a & (Subset{1} << s)) worst = std::min(worst, frame.mu(f[s]).rank());
    best = std::max(best, std::min(frame.capacity().rank(a), worst));
  }
  return best;
}

inline std::vector<Level> levels(const Scale& scale, const std::vector<int>& ranks) {
  std::vector<Level> out;
  for (int r : ranks) out.push_back(scale.level(r));
  return out;
}

// Every μ: X -> {0..m} that attains both 0 and m.
inline std::vector<std::vector<int>> all_mu(int outcomes, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> mu(static_cast<std::size_t>(outcomes), 0);
  for (;;) {
    if (std::count(mu.begin(), mu.end(), 0) && std::count(mu.begin(), mu.end(), m)) out.push_back(mu);
    int i = outcomes - 1;
    while (i >= 0 && mu[static_cast<std::size_t>(i)] == m) mu[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++mu[static_cast<std::size_t>(i)];
  }
  return out;
}

inline DecisionFrame random_frame(int states, int outcomes, int m, std::uint64_t seed) {
  const Scale scale(m + 1);
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_int_distribution<int> pick(0, m);
  std::vector<int> mu(static_cast<std::size_t>(outcomes));
  for (int& v : mu) v = pick(rng);
  mu[0] = 0;
  mu[static_cast<std::size_t>(outcomes - 1)] = m;
  std::shuffle(mu.begin(), mu.end(), rng);
  return DecisionFrame(scale, levels(scale, mu), random_monotone_capacity(states, scale, seed));
}

// Four states; not maxitive, not minitive; the sure-thing principle breaks on
// A = {s0, s1} with h, h' winning on s2, s3 respectively.
inline Capacity sav2_capacity() {
  const Scale scale(3);
  std::vector<int> r(16, 2);
  r[0] = 0;
  for (int s = 0; s < 4; ++s) r[1u << s] = 0;
  r[0b0101] = 0;  // {s0,s2}
  r[0b0110] = 1;  // {s1,s2}
  r[0b1001] = 1;  // {s0,s3}
  r[0b1010] = 0;  // {s1,s3}
  r[0b0011] = 0;  // {s0,s1}
  r[0b1100] = 0;  // {s2,s3}
  return capacity_from_ranks(r, 4, scale);
}

inline DecisionFrame sav2_frame() {
  const Scale scale(3);
  return DecisionFrame(scale, levels(scale, {0, 2}), sav2_capacity());
}

// Relation from a plain utility vector, ranks = dense position of the value.
inline PreferenceRelation relation_from_values(const ActSpace& space, std::vector<int> values) {
  std::vector<int> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int& v : values)
    v = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
  return PreferenceRelation(space, std::move(values));
}

inline bool order_isomorphic(const Capacity& a, const Capacity& b) {
  const Subset count = static_cast<Subset>(subset_count(a.state_count()));
  for (Subset x = 0; x < count; ++x)
    for (Subset y = 0; y < count; ++y)
      if ((a.rank(x) <= a.rank(y)) != (b.rank(x) <= b.rank(y))) return false;
  return true;
}

inline bool order_isomorphic(const std::vector<Level>& a, const std::vector<Level>& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if ((a[x] <= a[y]) != (b[x] <= b[y])) return false;
  return true;
}

// Re-ranks one to three random acts.
inline PreferenceRelation mutate(const PreferenceRelation& rel, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> ranks(rel.dense_ranks().begin(), rel.dense_ranks().end());
  const int top = *std::max_element(ranks.begin(), ranks.end());
  const int swaps = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < swaps; ++k) {
    const std::size_t i = rng() % ranks.size();
    ranks[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(top + 1));
  }
  return PreferenceRelation(rel.space(), ranks);
}

}  // namespace qdt::testing
