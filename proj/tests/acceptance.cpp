#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "qdt/evaluate.hpp"
#include "qdt/synthesis.hpp"
#include "support.hpp"

using namespace qdt;
using testing::all_mu;
using testing::levels;
using testing::oracle_sugeno;
using testing::order_isomorphic;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message and keeps counting.
struct Tally {
  bool ok = true;
  std::string first;
  std::uint64_t checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first = what;
    }
  }
  Outcome done(const std::string& summary) const {
    return {ok, ok ? summary : first};
  }
};

std::string act_str(const Act& f) {
  std::string s = "(";
  for (int i = 0; i < f.state_count(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + ")";
}

std::vector<DecisionFrame> round_trip_frames() {
  std::vector<DecisionFrame> out;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) out.push_back(testing::random_frame(3, 3, 2, seed));
  return out;
}

std::vector<std::vector<int>> normalized_distributions(int states, int m) {
  std::vector<std::vector<int>> out;
  for (const auto& d : all_mu(states, m)) out.push_back(d);
  // all_mu needs a zero somewhere; add the distributions without one.
  std::vector<int> d(static_cast<std::size_t>(states), 1);
  for (;;) {
    if (std::count(d.begin(), d.end(), m)) out.push_back(d);
    int i = states - 1;
    while (i >= 0 && d[static_cast<std::size_t>(i)] == m) d[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++d[static_cast<std::size_t>(i)];
  }
  return out;
}

Outcome three_forms() {
  Tally t;
  for (int states = 1; states <= 3; ++states)
    for (int outcomes = 2; outcomes <= 3; ++outcomes)
      for (int m = 1; m <= 4; ++m) {
        const Scale scale(m + 1);
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
          const Capacity sigma = random_monotone_capacity(states, scale, seed);
          for (const auto& mu : all_mu(outcomes, m)) {
            const DecisionFrame fr(scale, levels(scale, mu), sigma);
            const ActSpace space = fr.act_space();
            for (std::uint64_t i = 0; i < space.size(); ++i) {
              const Act f = space.act(i);
              const int a = sugeno_levelcut(fr, f).rank();
              const int b = sugeno_outcome(fr, f).rank();
              const int c = sugeno_median(fr, f).rank();
              const int o = oracle_sugeno(fr, f);
              t.expect(a == b && b == c && c == o,
                       "act " + act_str(f) + " seed " + std::to_string(seed) + ": " + std::to_string(a) +
                           "/" + std::to_string(b) + "/" + std::to_string(c) + " oracle " + std::to_string(o));
            }
          }
        }
      }
  return t.done(std::to_string(t.checks) + " acts evaluated");
}

Outcome eu_example() {
  const EuDemo d = eu_dominance_demo();
  // Independent arithmetic on the same payoffs.
  const double p = 0.93, q = 1 - p;
  const double better = p * 1000 + q * 2;
  const double worse = p * 3 + q * 100;
  const double capped = p * std::min(1000.0, 10.0) + q * std::min(2.0, 10.0);
  Tally t;
  t.expect(std::abs(better - 930.14) < 1e-9 && std::abs(d.eu_better - 930.14) < 1e-9,
           "EU of the better act is " + std::to_string(d.eu_better));
  t.expect(std::abs(worse - 9.79) < 1e-9 && std::abs(d.eu_worse - 9.79) < 1e-9,
           "EU of the worse act is " + std::to_string(d.eu_worse));
  t.expect(std::abs(capped - 9.44) < 1e-9 && std::abs(d.eu_capped - 9.44) < 1e-9,
           "EU of the capped act is " + std::to_string(d.eu_capped));
  // Both the act and the constant beat the worse act, yet their meet does not.
  const bool violated = better > worse && 10 > worse && capped < worse;
  t.expect(violated && d.rcd_violation, "RCD violation not reported");
  t.expect(d.rdd_violation, "RDD mirror violation not reported");
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.2f, %.2f, %.2f; RCD violated", d.eu_better, d.eu_worse, d.eu_capped);
  return t.done(buf);
}

Outcome closed_forms() {
  Tally t;
  for (int states = 1; states <= 4; ++states)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DecisionFrame fr = testing::random_frame(states, 4, 3, seed);
      const int best = fr.best_outcome(), worst = fr.worst_outcome();
      for (int x = 0; x < fr.outcome_count(); ++x) {
        const Act c = constant_act(states, x);
        t.expect(sugeno_levelcut(fr, c) == fr.mu(x) && oracle_sugeno(fr, c) == fr.mu(x).rank(),
                 "constant act " + std::to_string(x));
      }
      for (Subset a = 0; a < subset_count(states); ++a) {
        const Act bet = binary_act(states, best, a, worst);
        t.expect(sugeno_levelcut(fr, bet) == fr.capacity()(a) && oracle_sugeno(fr, bet) == fr.capacity().rank(a),
                 "bet on event " + std::to_string(a));
        for (int x = 0; x < fr.outcome_count(); ++x)
          for (int y = 0; y < fr.outcome_count(); ++y) {
            const Act f = binary_act(states, x, a, y);
            const int u = oracle_sugeno(fr, f);
            t.expect(binary_act_value(fr, x, a, y).rank() == u && sugeno_levelcut(fr, f).rank() == u,
                     "binary act " + act_str(f));
            if (fr.mu(x) >= fr.mu(y)) {
              const int closed = std::max(fr.mu(y).rank(), std::min(fr.mu(x).rank(), fr.capacity().rank(a)));
              t.expect(closed == u, "max/min form on " + act_str(f));
            }
          }
      }
    }
  return t.done(std::to_string(t.checks) + " closed-form checks");
}

Outcome comonotonic_decomposition() {
  Tally t;
  bool join_broken = false, meet_broken = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const DecisionFrame fr = testing::random_frame(3, 3, 3, seed);
    const ActSpace space = fr.act_space();
    auto u = [&](const Act& f) { return oracle_sugeno(fr, f); };
    for (std::uint64_t i = 0; i < space.size(); ++i)
      for (std::uint64_t j = 0; j < space.size(); ++j) {
        const Act f = space.act(i), g = space.act(j);
        Act join = f, meet = f;
        bool comonotonic = true;
        for (int s = 0; s < 3; ++s) {
          if (fr.mu(g[s]) > fr.mu(f[s])) join.outcomes[static_cast<std::size_t>(s)] = g[s];
          if (fr.mu(g[s]) < fr.mu(f[s])) meet.outcomes[static_cast<std::size_t>(s)] = g[s];
          for (int r = 0; r < 3; ++r)
            if (fr.mu(f[s]) < fr.mu(f[r]) && fr.mu(g[s]) > fr.mu(g[r])) comonotonic = false;
        }
        t.expect(comonotonic == is_comonotonic(fr, f, g), "comonotonicity of " + act_str(f) + act_str(g));
        const bool join_ok = sugeno_levelcut(fr, join).rank() == std::max(u(f), u(g));
        const bool meet_ok = sugeno_levelcut(fr, meet).rank() == std::min(u(f), u(g));
        t.expect(pointwise_combine(fr, f, g, Combine::best) == join, "join of " + act_str(f) + act_str(g));
        t.expect(pointwise_combine(fr, f, g, Combine::worst) == meet, "meet of " + act_str(f) + act_str(g));
        if (comonotonic) {
          t.expect(join_ok, "join fails on comonotonic " + act_str(f) + act_str(g));
          t.expect(meet_ok, "meet fails on comonotonic " + act_str(f) + act_str(g));
        } else {
          join_broken |= !join_ok;
          meet_broken |= !meet_ok;
        }
      }
  }
  t.expect(join_broken, "no non-comonotonic pair breaks the join equality");
  t.expect(meet_broken, "no non-comonotonic pair breaks the meet equality");
  return t.done("comonotonic pairs decompose; non-comonotonic counterexamples found for max and min");
}

Outcome possibilistic_utilities() {
  Tally t;
  const Scale scale(3);
  const auto dists = normalized_distributions(3, 2);
  for (const auto& d : dists) {
    const PossibilityDistribution pi = make_distribution(scale, d);
    for (const auto& mu : all_mu(3, 2)) {
      const DecisionFrame base(scale, levels(scale, mu), possibility_capacity(pi));
      const DecisionFrame nec = base.with_capacity(necessity_capacity(pi));
      const ActSpace space = base.act_space();
      for (std::uint64_t i = 0; i < space.size(); ++i) {
        const Act f = space.act(i);
        int opt = 0, pes = 2;
        for (int s = 0; s < 3; ++s) {
          opt = std::max(opt, std::min(d[static_cast<std::size_t>(s)], mu[static_cast<std::size_t>(f[s])]));
          pes = std::min(pes, std::max(2 - d[static_cast<std::size_t>(s)], mu[static_cast<std::size_t>(f[s])]));
        }
        t.expect(qu_optimistic(base, pi, f).rank() == opt && oracle_sugeno(base, f) == opt,
                 "optimistic utility of " + act_str(f));
        t.expect(qu_pessimistic(base, pi, f).rank() == pes && oracle_sugeno(nec, f) == pes,
                 "pessimistic utility of " + act_str(f));
      }
    }
  }
  return t.done(std::to_string(dists.size()) + " distributions, " + std::to_string(t.checks) + " checks");
}

Outcome axiom_profile() {
  Tally t;
  const Axiom profile[] = {Axiom::sav1, Axiom::sav5, Axiom::ws3, Axiom::sav4p,
                           Axiom::rcd,  Axiom::rdd,  Axiom::cod};
  int relations = 0;
  const Scale scale(3);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Capacity sigma = random_monotone_capacity(3, scale, seed);
    for (const auto& mu : all_mu(3, 2)) {
      const PreferenceRelation rel = induce_preorder(DecisionFrame(scale, levels(scale, mu), sigma));
      ++relations;
      for (Axiom a : profile)
        t.expect(check_axiom(rel, a).holds, std::string(axiom_id(a)) + " fails, seed " + std::to_string(seed));
    }
  }

  const DecisionFrame fr = testing::sav2_frame();
  const auto w = find_sure_thing_violation(fr);
  t.expect(w.has_value(), "no sure-thing violation found");
  if (w) {
    const ActSpace space = fr.act_space();
    const Subset a = static_cast<Subset>(w->value("A"));
    auto u = [&](const char* x, const char* y) {
      return oracle_sugeno(fr, compound_act(fr, space.act(w->value(x)), a, space.act(w->value(y))));
    };
    t.expect(u("f", "h") < u("g", "h") && u("f", "h'") > u("g", "h'"), "sure-thing witness does not reverse");
  }
  return t.done(std::to_string(relations) + " induced relations; sure-thing witness verified");
}

Outcome representation_round_trip() {
  Tally t;
  for (const DecisionFrame& fr : round_trip_frames()) {
    const PreferenceRelation rel = induce_preorder(fr);
    try {
      const Representation rep = synthesize_representation(rel);
      t.expect(verify_representation(rel, rep).holds, "verification failed");
      t.expect(order_isomorphic(rep.capacity, fr.capacity()), "capacity not order-isomorphic");
      t.expect(order_isomorphic(rep.mu, fr.mu()), "utility not order-isomorphic");
      const DecisionFrame rebuilt(rep.scale, rep.mu, rep.capacity);
      const ActSpace space = rel.space();
      for (std::uint64_t f = 0; f < space.size(); ++f)
        for (std::uint64_t g = 0; g < space.size(); ++g)
          t.expect((rel.rank_of(f) <= rel.rank_of(g)) ==
                       (oracle_sugeno(rebuilt, space.act(f)) <= oracle_sugeno(rebuilt, space.act(g))),
                   "synthesized triple misorders " + act_str(space.act(f)) + act_str(space.act(g)));
    } catch (const std::exception& e) {
      t.expect(false, std::string("synthesis threw: ") + e.what());
    }
  }
  return t.done("50 frames synthesized and verified");
}

Outcome possibilistic_round_trip() {
  Tally t;
  const Scale scale(3);
  int recovered = 0;
  for (const auto& d : normalized_distributions(3, 2)) {
    const PossibilityDistribution pi = make_distribution(scale, d);
    for (const auto& mu : all_mu(3, 2)) {
      const DecisionFrame base(scale, levels(scale, mu), possibility_capacity(pi));
      try {
        const auto o = synthesize_possibilistic(induce_preorder(base), PossibilisticMode::optimistic);
        t.expect(o.check.holds && order_isomorphic(o.pi.values, pi.values), "optimistic π not recovered");
        const auto p = synthesize_possibilistic(induce_preorder(base.with_capacity(necessity_capacity(pi))),
                                                PossibilisticMode::pessimistic);
        t.expect(p.check.holds && order_isomorphic(p.pi.values, pi.values), "pessimistic π not recovered");
        recovered += 2;
      } catch (const std::exception& e) {
        t.expect(false, std::string("possibilistic synthesis threw: ") + e.what());
      }
    }
  }

  int dd_refusals = 0, cd_refusals = 0;
  for (const DecisionFrame& fr : round_trip_frames()) {
    const CapacityClassification c = classify_capacity(fr.capacity());
    const PreferenceRelation rel = induce_preorder(fr);
    const std::pair<PossibilisticMode, Axiom> cases[] = {{PossibilisticMode::optimistic, Axiom::dd},
                                                         {PossibilisticMode::pessimistic, Axiom::cd}};
    for (const auto& [mode, axiom] : cases) {
      const bool eligible = mode == PossibilisticMode::optimistic ? c.maxitive : c.minitive;
      if (eligible) continue;
      try {
        synthesize_possibilistic(rel, mode);
        t.expect(false, "a capacity outside the class was accepted");
      } catch (const SynthesisRefused& e) {
        const bool ok = e.verdict().axiom == axiom && e.verdict().witness &&
                        replay_witness(rel, axiom, *e.verdict().witness);
        t.expect(ok, "refusal without a replayable " + std::string(axiom_id(axiom)) + " witness");
        (axiom == Axiom::dd ? dd_refusals : cd_refusals) += ok;
      }
    }
  }
  t.expect(dd_refusals > 0 && cd_refusals > 0, "no refusals exercised");
  return t.done(std::to_string(recovered) + " possibility and necessity frames recovered; " + std::to_string(dd_refusals) +
                " DD and " + std::to_string(cd_refusals) + " CD refusals");
}

Outcome dominance_equivalence() {
  Tally t;
  std::vector<PreferenceRelation> induced;
  for (const DecisionFrame& fr : round_trip_frames()) induced.push_back(induce_preorder(fr));

  // Mutations are kept only when the background axioms WS 3 and Sav 5 hold.
  std::vector<PreferenceRelation> mutated;
  for (std::uint64_t k = 0; mutated.size() < 50 && k < 5000; ++k) {
    PreferenceRelation rel = testing::mutate(induced[k % induced.size()], 1000 + k);
    if (check_axiom(rel, Axiom::ws3).holds && check_axiom(rel, Axiom::sav5).holds) mutated.push_back(std::move(rel));
  }
  t.expect(mutated.size() == 50, "only " + std::to_string(mutated.size()) + " admissible mutations");

  int dd_fail = 0, cd_fail = 0;
  auto compare = [&](const PreferenceRelation& rel, const std::string& name) {
    const bool dd = check_axiom(rel, Axiom::dd).holds;
    const bool cd = check_axiom(rel, Axiom::cd).holds;
    t.expect(dd == check_axiom(rel, Axiom::optimism).holds, "DD and Optimism differ on " + name);
    t.expect(cd == check_axiom(rel, Axiom::pessimism).holds, "CD and Pessimism differ on " + name);
    dd_fail += !dd;
    cd_fail += !cd;
  };
  for (std::size_t i = 0; i < induced.size(); ++i) compare(induced[i], "induced relation " + std::to_string(i));
  for (std::size_t i = 0; i < mutated.size(); ++i) compare(mutated[i], "mutated relation " + std::to_string(i));
  t.expect(dd_fail > 0 && cd_fail > 0, "equivalence never exercised on a failing relation");
  return t.done(std::to_string(induced.size() + mutated.size()) + " relations; DD failed " +
                std::to_string(dd_fail) + ", CD failed " + std::to_string(cd_fail));
}

Outcome comparative_structures() {
  Tally t;
  const Scale scale(3);
  for (const auto& d : normalized_distributions(3, 2)) {
    const auto v = is_comparative_possibility(likelihood_from_capacity(possibility_capacity(make_distribution(scale, d))));
    t.expect(v.holds, "possibility likelihood rejected (" + v.failed + ")");
  }

  std::vector<int> d{0, 1, 2};
  int witnessed = 0;
  do {
    const auto v = is_comparative_probability(likelihood_from_capacity(possibility_capacity(make_distribution(scale, d))));
    auto poss = [&](Subset a) {
      int best = 0;
      for (int s = 0; s < 3; ++s)
        if (a & (Subset{1} << s)) best = std::max(best, d[static_cast<std::size_t>(s)]);
      return best;
    };
    bool valid = !v.holds && v.failed == "P" && v.witness.size() == 3;
    if (valid) {
      const Subset a = v.witness[0], b = v.witness[1], c = v.witness[2];
      valid = (a & (b | c)) == 0 && (poss(b) <= poss(c)) != (poss(a | b) <= poss(a | c));
    }
    t.expect(valid, "no valid additivity witness");
    witnessed += valid;
  } while (std::next_permutation(d.begin(), d.end()));
  return t.done("possibility orderings accepted; " + std::to_string(witnessed) + " additivity witnesses verified");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Sugeno forms agree on all acts", three_forms},
      {"expected utility dominance example", eu_example},
      {"closed forms for constant and binary acts", closed_forms},
      {"comonotonic max/min decomposition", comonotonic_decomposition},
      {"possibilistic utilities are Sugeno integrals", possibilistic_utilities},
      {"axiom profile of induced relations", axiom_profile},
      {"representation round trip", representation_round_trip},
      {"possibilistic representation round trip", possibilistic_round_trip},
      {"dominance axioms match optimism and pessimism", dominance_equivalence},
      {"comparative possibility and probability", comparative_structures},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2zu  %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
