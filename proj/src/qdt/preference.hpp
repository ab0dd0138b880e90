#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdt/acts.hpp"
#include "qdt/capacity.hpp"

namespace qdt {

enum class Axiom {
  sav1,
  sav2,
  sav3,
  sav4,
  sav4p,
  sav5,
  ws3,
  rcd,
  rdd,
  cd,
  dd,
  cod,
  optimism,
  pessimism,
};

std::string_view axiom_id(Axiom axiom);     // "SAV4P"
std::string_view axiom_label(Axiom axiom);  // "Sav 4'"
std::optional<Axiom> parse_axiom(std::string_view text);
std::span<const Axiom> all_axioms();

enum class WitnessKind { act, outcome, event };

struct WitnessItem {
  std::string role;
  WitnessKind kind = WitnessKind::act;
  std::uint64_t value = 0;

  bool operator==(const WitnessItem&) const = default;
};

// A violating assignment of the axiom's quantified variables, listed in the
// order they are quantified. `clause` names the failing part when the axiom
// has several.
struct Witness {
  std::vector<WitnessItem> items;
  std::string clause;

  std::uint64_t value(std::string_view role) const;
  bool operator==(const Witness&) const = default;
};

struct AxiomVerdict {
  Axiom axiom = Axiom::sav1;
  bool holds = true;
  std::optional<Witness> witness;
};

// Limits on exhaustive quantifier spaces. By default a check whose formula
// quantifies over four acts refuses act spaces above four_act_acts, all other
// checks refuse above three_act_acts. When max_tuples is set it replaces the
// act-count rule with a cap on the number of quantified tuples.
struct Budget {
  std::uint64_t three_act_acts = 256;
  std::uint64_t four_act_acts = 64;
  std::optional<std::uint64_t> max_tuples;
  std::uint64_t enumerated_acts = std::uint64_t{1} << 16;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Defaults, with QDT_BUDGET (a tuple count) applied when set.
  static Budget from_environment();
};

// Complete preorder over acts stored as a rank function: lower rank is less
// preferred, equal rank is indifference.
class PreferenceRelation {
 public:
  // Every act of the space, ranks indexed by act index.
  PreferenceRelation(ActSpace space, std::vector<int> ranks);
  // A declared set of acts; acts are sorted and deduplicated on entry.
  PreferenceRelation(ActSpace space, std::vector<std::uint64_t> acts, std::vector<int> ranks);

  const ActSpace& space() const noexcept { return space_; }
  bool is_full() const noexcept { return full_; }
  std::uint64_t act_count() const noexcept { return full_ ? space_.size() : acts_.size(); }
  // i-th declared act in increasing index order.
  std::uint64_t act_at(std::uint64_t i) const { return full_ ? i : acts_[i]; }
  std::optional<int> rank(std::uint64_t act) const;
  int rank_of(std::uint64_t act) const;
  std::span<const int> dense_ranks() const;  // full relations only

  bool weakly_prefers(std::uint64_t worse, std::uint64_t better) const {
    return rank_of(worse) <= rank_of(better);
  }

  const std::optional<DecisionFrame>& frame() const noexcept { return frame_; }
  PreferenceRelation with_frame(DecisionFrame frame) const;

 private:
  ActSpace space_;
  bool full_;
  std::vector<std::uint64_t> acts_;
  std::vector<int> ranks_;
  std::optional<DecisionFrame> frame_;
};

// Result of turning pairwise data into ranks. The data is closed under
// transitivity; it fails Sav 1 when two acts stay incomparable or when a
// strict step lies on a cycle (witness lists the cycle, strict step first).
struct Compression {
  std::optional<PreferenceRelation> relation;
  AxiomVerdict sav1;
};

// leq holds pairs (worse, better) read as "worse ⪯ better"; less holds
// strict pairs "worse ≺ better".
Compression compress_weak_preferences(
    ActSpace space, std::vector<std::uint64_t> acts,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> leq,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> less = {});

// Per-outcome class index (0 = worst) of the constant acts.
std::vector<int> induced_outcome_order(const PreferenceRelation& rel);

// Dense relation on events: leq(A, B) means A is not more likely than B.
class LikelihoodRelation {
 public:
  explicit LikelihoodRelation(int state_count);

  int state_count() const noexcept { return states_; }
  bool leq(Subset a, Subset b) const { return cells_[index(a, b)] != 0; }
  void set(Subset a, Subset b, bool value) { cells_[index(a, b)] = value ? 1 : 0; }
  // First (A, B) with neither A ≤ B nor B ≤ A.
  std::optional<std::pair<Subset, Subset>> incomparable_pair() const;

 private:
  std::size_t index(Subset a, Subset b) const {
    return static_cast<std::size_t>(a) * subset_count(states_) + b;
  }
  int states_;
  std::vector<unsigned char> cells_;
};

struct LikelihoodReport {
  LikelihoodRelation relation;
  // One tuple (x, y, x', y', A, B) per event pair on which bets with stakes
  // (x, y) say A ≤ B and bets with stakes (x', y') say otherwise.
  std::vector<Witness> disagreements;
};

LikelihoodReport induced_likelihood(const PreferenceRelation& rel);
LikelihoodRelation likelihood_from_capacity(const Capacity& sigma);

bool is_null_event(const PreferenceRelation& rel, Subset a);

// (f ⪯ g)_A read through a caller-chosen h: fAh ⪯ gAh.
bool conditional_leq(const PreferenceRelation& rel, std::uint64_t f, std::uint64_t g, Subset a,
                     std::uint64_t h);
// First pair (h, h') giving different answers for (f ⪯ g)_A, if any.
std::optional<std::pair<std::uint64_t, std::uint64_t>> conditional_ambiguity(
    const PreferenceRelation& rel, std::uint64_t f, std::uint64_t g, Subset a);

// Size of the quantifier space the check for `axiom` enumerates.
std::uint64_t quantifier_space(const PreferenceRelation& rel, Axiom axiom);

AxiomVerdict check_axiom(const PreferenceRelation& rel, Axiom axiom, const Budget& budget = {});

// Re-evaluates the axiom formula at the witness; true iff it is a violation.
bool replay_witness(const PreferenceRelation& rel, Axiom axiom, const Witness& witness);

// fAh ≺ gAh and fAh' ≻ gAh' (strict reversal), first in (f, g, h, h', A)
// order.
std::optional<Witness> find_strict_sure_thing_violation(const PreferenceRelation& rel,
                                                        const Budget& budget = {});

struct ComparativeVerdict {
  bool holds = true;
  std::string failed;            // "A1", "A2", "A3", "Pi" or "P"
  std::vector<Subset> witness;   // events involved in the failure
};

// A1 (transitivity), A2, A3 and B ≤ C ⇒ A∪B ≤ A∪C. Throws on a partial
// relation.
ComparativeVerdict is_comparative_possibility(const LikelihoodRelation& rel);
// A1, A2, A3 and additivity over disjoint A.
ComparativeVerdict is_comparative_probability(const LikelihoodRelation& rel);

}  // namespace qdt
