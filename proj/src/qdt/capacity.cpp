#include "qdt/capacity.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace qdt {

namespace {

void check_state_count(int state_count) {
  if (state_count < 1 || state_count > kMaxStates)
    fail(ErrorKind::invalid_argument, "state count must lie in 1.." +
                                          std::to_string(kMaxStates) + ", got " +
                                          std::to_string(state_count));
}

}  // namespace

Capacity validate_capacity(std::vector<Level> table, int state_count, const Scale& scale) {
  check_state_count(state_count);
  const std::uint64_t count = subset_count(state_count);
  if (table.size() != count)
    throw CapacityError("capacity table has " + std::to_string(table.size()) +
                            " entries, expected " + std::to_string(count),
                        std::nullopt, static_cast<Subset>(std::min<std::uint64_t>(table.size(), count - 1)));
  for (std::uint64_t a = 0; a < count; ++a)
    if (!scale.contains(table[a]))
      throw CapacityError("capacity value for subset " + std::to_string(a) +
                          " is not a level of the scale");

  for (Subset a = 1; a < count; ++a) {
    for (int s = 0; s < state_count; ++s) {
      if (!contains(a, s)) continue;
      const Subset cover = a & ~singleton(s);
      if (table[cover] > table[a])
        throw CapacityError("capacity is not monotone: sigma(" + std::to_string(cover) +
                                ") > sigma(" + std::to_string(a) + ")",
                            MonotonicityWitness{cover, a});
    }
  }

  if (table[0] != scale.bottom())
    throw CapacityError("capacity boundary violated: sigma(empty) must be the bottom level");
  if (table[full_set(state_count)] != scale.top())
    throw CapacityError("capacity boundary violated: sigma(S) must be the top level");

  return Capacity(state_count, scale, std::move(table));
}

Capacity validate_capacity(const std::map<Subset, Level>& table, int state_count,
                           const Scale& scale) {
  check_state_count(state_count);
  std::vector<Level> dense(subset_count(state_count));
  for (Subset a = 0; a < dense.size(); ++a) {
    auto it = table.find(a);
    if (it == table.end())
      throw CapacityError("capacity table has no entry for subset " + std::to_string(a),
                          std::nullopt, a);
    dense[a] = it->second;
  }
  if (table.size() != dense.size())
    throw CapacityError("capacity table names subsets outside the state space");
  return validate_capacity(std::move(dense), state_count, scale);
}

Capacity capacity_from_ranks(std::span<const int> ranks, int state_count, const Scale& scale) {
  std::vector<Level> table;
  table.reserve(ranks.size());
  for (int r : ranks) table.push_back(scale.level(r));
  return validate_capacity(std::move(table), state_count, scale);
}

PossibilityDistribution make_distribution(const Scale& scale, std::span<const int> ranks) {
  PossibilityDistribution pi{scale, {}};
  for (int r : ranks) pi.values.push_back(scale.level(r));
  return pi;
}

void require_normalized(const PossibilityDistribution& pi) {
  check_state_count(static_cast<int>(pi.values.size()));
  for (const Level& v : pi.values)
    if (!pi.scale.contains(v))
      fail(ErrorKind::invalid_argument, "possibility value outside the scale");
  if (*std::max_element(pi.values.begin(), pi.values.end()) != pi.scale.top())
    fail(ErrorKind::invalid_argument,
         "possibility distribution is not normalized: no state reaches the top level");
}

Capacity possibility_capacity(const PossibilityDistribution& pi) {
  require_normalized(pi);
  const int n = static_cast<int>(pi.values.size());
  std::vector<Level> table(subset_count(n), pi.scale.bottom());
  for (Subset a = 1; a < table.size(); ++a) {
    // lowest member s: Π(A) = max(π(s), Π(A \ {s}))
    const int s = std::countr_zero(a);
    table[a] = std::max(pi.values[s], table[a & (a - 1)]);
  }
  return validate_capacity(std::move(table), n, pi.scale);
}

Capacity necessity_capacity(const PossibilityDistribution& pi) {
  const Capacity possibility = possibility_capacity(pi);
  const int n = possibility.state_count();
  std::vector<Level> table(subset_count(n));
  for (Subset a = 0; a < table.size(); ++a)
    table[a] = order_reverse(pi.scale, possibility(complement(a, n)));
  return validate_capacity(std::move(table), n, pi.scale);
}

CapacityClassification classify_capacity(const Capacity& sigma) {
  CapacityClassification out;
  const Subset count = static_cast<Subset>(subset_count(sigma.state_count()));
  for (Subset a = 0; a < count; ++a) {
    for (Subset b = 0; b < count; ++b) {
      if (!out.maxitive_witness && sigma(a | b) != std::max(sigma(a), sigma(b)))
        out.maxitive_witness = {a, b};
      if (!out.minitive_witness && sigma(a & b) != std::min(sigma(a), sigma(b)))
        out.minitive_witness = {a, b};
      if (out.maxitive_witness && out.minitive_witness) break;
    }
    if (out.maxitive_witness && out.minitive_witness) break;
  }
  out.maxitive = !out.maxitive_witness;
  out.minitive = !out.minitive_witness;
  return out;
}

Capacity random_monotone_capacity(int state_count, const Scale& scale, std::uint64_t seed) {
  check_state_count(state_count);
  std::mt19937_64 rng(seed);
  const Subset full = full_set(state_count);
  std::vector<Subset> order(subset_count(state_count));
  std::iota(order.begin(), order.end(), Subset{0});
  std::stable_sort(order.begin(), order.end(), [](Subset a, Subset b) {
    return cardinality(a) < cardinality(b);
  });

  std::vector<int> ranks(order.size(), 0);
  for (Subset a : order) {
    if (a == 0) continue;
    if (a == full) {
      ranks[a] = scale.top_rank();
      continue;
    }
    int floor = 0;
    for (int s = 0; s < state_count; ++s)
      if (contains(a, s)) floor = std::max(floor, ranks[a & ~singleton(s)]);
    std::uniform_int_distribution<int> draw(floor, scale.top_rank());
    ranks[a] = draw(rng);
  }
  return capacity_from_ranks(ranks, state_count, scale);
}

}  // namespace qdt
