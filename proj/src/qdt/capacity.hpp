#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/scale.hpp"
#include "qdt/subset.hpp"

namespace qdt {

// A ⊂ B with σ(A) > σ(B).
struct MonotonicityWitness {
  Subset smaller = 0;
  Subset larger = 0;
};

class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::optional<MonotonicityWitness> witness = {},
                std::optional<Subset> missing = {})
      : Error(ErrorKind::invalid_capacity, what), witness_(witness), missing_(missing) {}

  const std::optional<MonotonicityWitness>& witness() const noexcept { return witness_; }
  const std::optional<Subset>& missing() const noexcept { return missing_; }

 private:
  std::optional<MonotonicityWitness> witness_;
  std::optional<Subset> missing_;
};

// Monotone set function σ: 2^S -> L with σ(∅) = 0_L and σ(S) = 1_L, stored as
// a dense table indexed by subset mask. Immutable once validated.
class Capacity {
 public:
  int state_count() const noexcept { return state_count_; }
  const Scale& scale() const noexcept { return scale_; }
  Level operator()(Subset a) const { return table_[a]; }
  int rank(Subset a) const { return table_[a].rank(); }
  std::span<const Level> table() const noexcept { return table_; }

  bool operator==(const Capacity&) const = default;

 private:
  friend Capacity validate_capacity(std::vector<Level> table, int state_count,
                                    const Scale& scale);
  Capacity(int state_count, Scale scale, std::vector<Level> table)
      : state_count_(state_count), scale_(scale), table_(std::move(table)) {}

  int state_count_;
  Scale scale_;
  std::vector<Level> table_;
};

// Checks, in order: table size, monotonicity over cover pairs
// (A \ {s}, A), then the boundary conditions. Throws CapacityError.
Capacity validate_capacity(std::vector<Level> table, int state_count, const Scale& scale);

// Sparse form; reports the least missing subset.
Capacity validate_capacity(const std::map<Subset, Level>& table, int state_count,
                           const Scale& scale);

// Rank-only convenience for tests and generators.
Capacity capacity_from_ranks(std::span<const int> ranks, int state_count, const Scale& scale);

struct PossibilityDistribution {
  Scale scale;
  std::vector<Level> values;  // π(s) per state
};

PossibilityDistribution make_distribution(const Scale& scale, std::span<const int> ranks);

// Throws unless max_s π(s) = 1_L.
void require_normalized(const PossibilityDistribution& pi);

// Π(A) = max_{s∈A} π(s), Π(∅) = 0_L.
Capacity possibility_capacity(const PossibilityDistribution& pi);

// N(A) = n(Π(complement of A)).
Capacity necessity_capacity(const PossibilityDistribution& pi);

struct CapacityClassification {
  bool maxitive = false;
  bool minitive = false;
  // First (A, B) in (A, B) order breaking the respective law.
  std::optional<std::pair<Subset, Subset>> maxitive_witness;
  std::optional<std::pair<Subset, Subset>> minitive_witness;
};

CapacityClassification classify_capacity(const Capacity& sigma);

// Visits subsets by increasing cardinality and draws σ(A) uniformly from
// [max over covers, m]; σ(S) is pinned to the top.
Capacity random_monotone_capacity(int state_count, const Scale& scale, std::uint64_t seed);

}  // namespace qdt
