#include "qdt/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdt/errors.hpp"
#include "qdt/evaluate.hpp"

namespace qdt {

namespace {

// Sugeno utility on an explicit (μ, σ) pair without requiring the extremes
// to be attained, so that diagnostic representations can be checked too.
int sugeno_rank(std::span<const int> mu, const Capacity& sigma, const Act& f) {
  int best = 0;
  for (int lambda = 0; lambda <= sigma.scale().top_rank(); ++lambda)
    best = std::max(best, std::min(lambda, sigma.rank(level_set(mu, f, lambda))));
  return best;
}

std::vector<int> ranks_of(std::span<const Level> levels) {
  std::vector<int> out;
  out.reserve(levels.size());
  for (const Level& l : levels) out.push_back(l.rank());
  return out;
}

// Checks that `values` is a strictly increasing function of the relation's
// rank, which is the same as agreement on every act pair.
RepresentationCheck agrees_with(const PreferenceRelation& rel, std::span<const int> values) {
  const auto ranks = rel.dense_ranks();
  std::vector<std::uint64_t> acts(ranks.size());
  std::iota(acts.begin(), acts.end(), std::uint64_t{0});
  std::stable_sort(acts.begin(), acts.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return ranks[a] < ranks[b]; });
  for (std::size_t i = 1; i < acts.size(); ++i) {
    const auto p = acts[i - 1], q = acts[i];
    // Report the pair in the order on which the two comparisons differ.
    if (ranks[p] == ranks[q] && values[p] != values[q])
      return {false, values[p] > values[q] ? std::pair{p, q} : std::pair{q, p}};
    if (ranks[p] < ranks[q] && values[p] >= values[q]) return {false, std::pair{q, p}};
  }
  return {};
}

[[noreturn]] void internal(const std::string& what) {
  fail(ErrorKind::internal, "representation synthesis self-check failed: " + what);
}

void require(const PreferenceRelation& rel, std::initializer_list<Axiom> axioms,
             const SynthesisOptions& options) {
  for (Axiom axiom : axioms) {
    if (axiom == Axiom::sav5 && options.waive_sav5) continue;
    AxiomVerdict v = check_axiom(rel, axiom, options.budget);
    if (!v.holds) throw SynthesisRefused(std::move(v));
  }
}

Representation build(const PreferenceRelation& rel, const SynthesisOptions& options) {
  const ActSpace& space = rel.space();
  const auto ranks = rel.dense_ranks();
  const int states = space.state_count();

  // Quotient scale of indifference classes.
  std::vector<int> distinct(ranks.begin(), ranks.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const int classes = static_cast<int>(distinct.size());
  auto class_of = [&](std::uint64_t act) {
    return static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), ranks[act]) -
                            distinct.begin());
  };

  const Scale scale(std::max(classes, 2));
  std::vector<std::uint64_t> representatives(static_cast<std::size_t>(classes), space.size());
  for (std::uint64_t f = 0; f < space.size(); ++f) {
    auto& slot = representatives[static_cast<std::size_t>(class_of(f))];
    slot = std::min(slot, f);
  }

  std::vector<int> mu(static_cast<std::size_t>(space.outcome_count()));
  for (int x = 0; x < space.outcome_count(); ++x)
    mu[static_cast<std::size_t>(x)] = class_of(space.constant(x));

  if (classes == 1) {
    if (!options.waive_sav5)
      throw SynthesisRefused(AxiomVerdict{Axiom::sav5, false, std::nullopt});
    // Diagnostic one-class case: every act sits at the bottom of a two-level
    // scale.
    std::vector<Level> table(subset_count(states), scale.top());
    table[0] = scale.bottom();
    return Representation{scale,
                          std::vector<Level>(mu.size(), scale.bottom()),
                          validate_capacity(std::move(table), states, scale),
                          0,
                          0,
                          std::move(representatives),
                          std::move(distinct),
                          true};
  }

  const int best = static_cast<int>(std::max_element(mu.begin(), mu.end()) - mu.begin());
  const int worst = static_cast<int>(std::min_element(mu.begin(), mu.end()) - mu.begin());
  if (mu[static_cast<std::size_t>(best)] != classes - 1 || mu[static_cast<std::size_t>(worst)] != 0)
    fail(ErrorKind::precondition,
         "the best and worst constant acts are not the extreme indifference classes");

  // σ'(A) is the class of the bet x* A x_*.
  std::vector<Level> table(subset_count(states));
  for (Subset a = 0; a < table.size(); ++a)
    table[a] = scale.level(class_of(space.index(binary_act(states, best, a, worst))));
  std::optional<Capacity> sigma;
  try {
    sigma = validate_capacity(std::move(table), states, scale);
  } catch (const CapacityError& e) {
    internal(std::string("bets do not define a capacity: ") + e.what());
  }

  std::vector<Level> mu_levels;
  for (int m : mu) mu_levels.push_back(scale.level(m));
  Representation rep{scale,        std::move(mu_levels), std::move(*sigma),     best, worst,
                     std::move(representatives), distinct, false};

  // Check u(x A x_*) = min(μ'(x), σ'(A)).
  for (int x = 0; x < space.outcome_count(); ++x)
    for (Subset a = 0; a < subset_count(states); ++a) {
      const int u = class_of(space.index(binary_act(states, x, a, rep.worst_outcome)));
      if (u != std::min(mu[static_cast<std::size_t>(x)], rep.capacity.rank(a)))
        internal("u(x A x_*) != min(mu(x), sigma(A)) for outcome " + std::to_string(x) +
                 ", event " + std::to_string(a));
    }

  // Check joins of nested bets x A x_* and y B x_* with B ⊆ A.
  for (int x = 0; x < space.outcome_count(); ++x)
    for (int y = 0; y < space.outcome_count(); ++y)
      for (Subset a = 0; a < subset_count(states); ++a)
        for (Subset b = a;; b = (b - 1) & a) {
          const Act fa = binary_act(states, x, a, rep.worst_outcome);
          const Act fb = binary_act(states, y, b, rep.worst_outcome);
          const Act up = pointwise_combine(mu, fa, fb, Combine::best);
          const int u = class_of(space.index(up));
          if (u != std::max(class_of(space.index(fa)), class_of(space.index(fb))))
            internal("join of nested bets is not the max of their classes");
          if (b == 0) break;
        }
  return rep;
}

}  // namespace

PreferenceRelation induce_preorder(const DecisionFrame& frame, const Budget& budget) {
  const ActSpace space = frame.act_space();
  if (space.size() > budget.enumerated_acts)
    throw BudgetExceeded(space.size(), budget.enumerated_acts,
                         "inducing a preorder needs " + std::to_string(space.size()) +
                             " acts, budget is " + std::to_string(budget.enumerated_acts));
  // Utility ranks are already in 0..m; equal utility means equal rank.
  return PreferenceRelation(space, utilities_of_all_acts(frame)).with_frame(frame);
}

PreferenceRelation rank_by_scores(ActSpace space, std::span<const double> scores, double tolerance) {
  if (scores.size() != space.size())
    fail(ErrorKind::invalid_argument, "one score per act is required");
  std::vector<std::uint64_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scores[a] < scores[b]; });
  std::vector<int> ranks(scores.size(), 0);
  int rank = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (scores[order[i]] - scores[order[i - 1]] > tolerance) ++rank;
    ranks[order[i]] = rank;
  }
  return PreferenceRelation(space, std::move(ranks));
}

SynthesisRefused::SynthesisRefused(AxiomVerdict verdict)
    : Error(ErrorKind::precondition,
            "relation fails " + std::string(axiom_label(verdict.axiom)) +
                "; no representation is synthesized"),
      verdict_(std::move(verdict)) {}

Representation synthesize_representation(const PreferenceRelation& rel,
                                          const SynthesisOptions& options) {
  if (!rel.is_full())
    fail(ErrorKind::precondition, "synthesis needs a relation over the full act space");
  require(rel, {Axiom::sav1, Axiom::ws3, Axiom::sav5, Axiom::rcd, Axiom::rdd}, options);
  Representation rep = build(rel, options);
  const RepresentationCheck check = verify_representation(rel, rep);
  if (!check.holds)
    internal("synthesized representation disagrees with the relation on acts " +
             std::to_string(check.distinguishing->first) + " and " +
             std::to_string(check.distinguishing->second));
  return rep;
}

RepresentationCheck verify_representation(const PreferenceRelation& rel, const Representation& rep) {
  const ActSpace& space = rel.space();
  if (static_cast<int>(rep.mu.size()) != space.outcome_count() ||
      rep.capacity.state_count() != space.state_count())
    fail(ErrorKind::frame_mismatch, "representation and relation disagree on states or outcomes");
  const std::vector<int> mu = ranks_of(rep.mu);
  std::vector<int> values(space.size());
  for (std::uint64_t f = 0; f < space.size(); ++f)
    values[f] = sugeno_rank(mu, rep.capacity, space.act(f));
  return agrees_with(rel, values);
}

PossibilisticRepresentation synthesize_possibilistic(const PreferenceRelation& rel,
                                                     PossibilisticMode mode,
                                                     const SynthesisOptions& options) {
  if (!rel.is_full())
    fail(ErrorKind::precondition, "synthesis needs a relation over the full act space");
  const bool optimistic = mode == PossibilisticMode::optimistic;
  if (optimistic)
    require(rel, {Axiom::sav1, Axiom::ws3, Axiom::sav5, Axiom::rcd, Axiom::dd}, options);
  else
    require(rel, {Axiom::sav1, Axiom::ws3, Axiom::sav5, Axiom::rdd, Axiom::cd}, options);

  PossibilisticRepresentation out{mode, synthesize_representation(rel, options),
                                  PossibilityDistribution{Scale(2), {}}, {}, std::nullopt};
  const Representation& rep = out.representation;
  const Capacity& sigma = rep.capacity;
  const int states = rel.space().state_count();
  const CapacityClassification cls = classify_capacity(sigma);
  out.pi.scale = rep.scale;
  if (optimistic) {
    if (!cls.maxitive) internal("capacity of an optimistic relation is not maxitive");
    for (int s = 0; s < states; ++s) out.pi.values.push_back(sigma(singleton(s)));
  } else {
    if (!cls.minitive) internal("capacity of a pessimistic relation is not minitive");
    for (int s = 0; s < states; ++s)
      out.pi.values.push_back(order_reverse(rep.scale, sigma(complement(singleton(s), states))));
  }
  require_normalized(out.pi);

  const ActSpace& space = rel.space();
  std::vector<int> values(space.size()), unreversed(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const Act f = space.act(i);
    int opt = 0, pes = rep.scale.top_rank(), lit = rep.scale.top_rank();
    for (int s = 0; s < states; ++s) {
      const int p = out.pi.values[static_cast<std::size_t>(s)].rank();
      const int u = rep.mu[static_cast<std::size_t>(f[s])].rank();
      opt = std::max(opt, std::min(p, u));
      pes = std::min(pes, std::max(rep.scale.top_rank() - p, u));
      lit = std::min(lit, std::max(p, u));
    }
    values[i] = optimistic ? opt : pes;
    unreversed[i] = lit;
  }
  out.check = agrees_with(rel, values);
  if (!out.check.holds) internal("possibilistic utility disagrees with the relation");
  if (!optimistic) out.unreversed_formula_represents = agrees_with(rel, unreversed).holds;
  return out;
}

std::optional<Witness> find_sure_thing_violation(const DecisionFrame& frame, const Budget& budget) {
  const PreferenceRelation rel = induce_preorder(frame, budget);
  return find_strict_sure_thing_violation(rel, budget);
}

EuDemo eu_dominance_demo(double alpha, double a, double b, double a2, double b2, double c) {
  const double p[] = {alpha, 1.0 - alpha};
  auto eu = [&](double first, double second) {
    const double payoffs[] = {first, second};
    return expected_utility(p, payoffs);
  };
  EuDemo d{alpha, a, b, a2, b2, c};
  d.eu_better = eu(a, b);
  d.eu_worse = eu(a2, b2);
  d.eu_capped = eu(std::min(a, c), std::min(b, c));
  d.rcd_violation = d.eu_better > d.eu_worse && c > d.eu_worse && !(d.eu_capped > d.eu_worse);

  d.mirror_eu_better = eu(-a2, -b2);
  d.mirror_eu_worse = eu(-a, -b);
  d.mirror_constant = -c;
  d.mirror_eu_raised = eu(std::max(-a, -c), std::max(-b, -c));
  d.rdd_violation = d.mirror_eu_better > d.mirror_eu_worse &&
                    d.mirror_eu_better > d.mirror_constant &&
                    !(d.mirror_eu_better > d.mirror_eu_raised);
  return d;
}

EuDemo eu_dominance_demo() { return eu_dominance_demo(0.93, 1000.0, 2.0, 3.0, 100.0, 10.0); }

}  // namespace qdt
