#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qdt/acts.hpp"
#include "qdt/capacity.hpp"
#include "qdt/preference.hpp"

namespace qdt {

// Ranks every act of X^S by its Sugeno utility under the frame.
PreferenceRelation induce_preorder(const DecisionFrame& frame, const Budget& budget = {});

// Ranks every act by a real score; scores within `tolerance` of the previous
// distinct score share a rank.
PreferenceRelation rank_by_scores(ActSpace space, std::span<const double> scores,
                                  double tolerance = 1e-12);

// (scale, utility, capacity) on the quotient scale of indifference classes.
struct Representation {
  Scale scale;
  std::vector<Level> mu;     // per outcome
  Capacity capacity;
  int best_outcome = 0;      // least-index representative of the top class
  int worst_outcome = 0;     // least-index representative of the bottom class
  // For each quotient rank: the least act index in that class and the rank
  // the source relation gave it.
  std::vector<std::uint64_t> representative_acts;
  std::vector<int> source_ranks;
  // Set only when synthesis ran with Sav 5 waived on a one-class relation.
  bool diagnostic = false;
};

// Synthesis refused because the relation fails a precondition axiom.
class SynthesisRefused : public Error {
 public:
  explicit SynthesisRefused(AxiomVerdict verdict);
  const AxiomVerdict& verdict() const noexcept { return verdict_; }

 private:
  AxiomVerdict verdict_;
};

struct SynthesisOptions {
  Budget budget;
  bool waive_sav5 = false;  // diagnostic: accept a single indifference class
};

// Steps: quotient scale and μ' from constant acts; σ'(A) from the bet
// x* A x_*; checks u(x A x_*) = min(μ'(x), σ'(A)) and the join rule for
// nested bets; finally the full representation check. Any failed check after
// the axioms passed is an internal error.
Representation synthesize_representation(const PreferenceRelation& rel,
                                          const SynthesisOptions& options = {});

struct RepresentationCheck {
  bool holds = true;
  // Acts (f, f') with f ⪯ f' in the relation but not u(f) ≤ u(f'), or the
  // other way round.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> distinguishing;
};

// True iff f ⪯ f' ⇔ u(f) ≤ u(f') for all act pairs, u being the Sugeno
// utility under (rep.mu, rep.capacity).
RepresentationCheck verify_representation(const PreferenceRelation& rel, const Representation& rep);

enum class PossibilisticMode { optimistic, pessimistic };

struct PossibilisticRepresentation {
  PossibilisticMode mode = PossibilisticMode::optimistic;
  Representation representation;
  PossibilityDistribution pi;
  RepresentationCheck check;
  // Pessimistic mode only: whether min_s max(π(s), μ(f(s))), i.e. the
  // formula without the order reversal on π, also represents the relation.
  std::optional<bool> unreversed_formula_represents;
};

PossibilisticRepresentation synthesize_possibilistic(const PreferenceRelation& rel,
                                                     PossibilisticMode mode,
                                                     const SynthesisOptions& options = {});

// Strict sure-thing reversal under the frame's Sugeno ranking.
std::optional<Witness> find_sure_thing_violation(const DecisionFrame& frame,
                                                 const Budget& budget = {});

// Expected utility against restricted conjunctive dominance on two states
// with probabilities (α, 1-α).
struct EuDemo {
  double alpha = 0, a = 0, b = 0, a2 = 0, b2 = 0, c = 0;
  double eu_better = 0;  // EU(a, b)
  double eu_worse = 0;   // EU(a', b')
  double eu_capped = 0;  // EU(min(a, c), min(b, c))
  bool rcd_violation = false;
  // Mirror image: payoffs negated and min replaced by max.
  double mirror_eu_better = 0;  // EU(-a', -b')
  double mirror_eu_worse = 0;   // EU(-a, -b)
  double mirror_constant = 0;   // -c
  double mirror_eu_raised = 0;  // EU(max(-a, -c), max(-b, -c))
  bool rdd_violation = false;
};

EuDemo eu_dominance_demo(double alpha, double a, double b, double a2, double b2, double c);
EuDemo eu_dominance_demo();  // α = 0.93, a = 1000, b = 2, a' = 3, b' = 100, c = 10

}  // namespace qdt
