#include <doctest.h>

#include <random>

#include "qdt/evaluate.hpp"
#include "qdt/preference.hpp"
#include "qdt/synthesis.hpp"
#include "support.hpp"

using namespace qdt;
using qdt::testing::levels;
using qdt::testing::mutate;

namespace {

// Literal quantifier loops, independent of the optimized checker.
struct Naive {
  const PreferenceRelation& rel;
  ActSpace space;
  int n, outcomes;
  std::uint64_t acts;
  std::vector<int> order;  // rank of each constant act

  explicit Naive(const PreferenceRelation& r)
      : rel(r), space(r.space()), n(space.state_count()), outcomes(space.outcome_count()),
        acts(space.size()) {
    for (int x = 0; x < outcomes; ++x) order.push_back(r.rank_of(space.constant(x)));
  }
  int rk(const Act& f) const { return rel.rank_of(space.index(f)); }
  int rk(std::uint64_t i) const { return rel.rank_of(i); }
  Act act(std::uint64_t i) const { return space.act(i); }
  Act meet(const Act& f, const Act& g) const {
    Act h = f;
    for (int s = 0; s < n; ++s)
      if (order[static_cast<std::size_t>(g[s])] < order[static_cast<std::size_t>(f[s])]) h.outcomes[static_cast<std::size_t>(s)] = g[s];
    return h;
  }
  Act join(const Act& f, const Act& g) const {
    Act h = f;
    for (int s = 0; s < n; ++s)
      if (order[static_cast<std::size_t>(g[s])] > order[static_cast<std::size_t>(f[s])]) h.outcomes[static_cast<std::size_t>(s)] = g[s];
    return h;
  }
  bool comonotonic(const Act& f, const Act& g) const {
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (order[static_cast<std::size_t>(f[s])] > order[static_cast<std::size_t>(f[t])] &&
            order[static_cast<std::size_t>(g[s])] < order[static_cast<std::size_t>(g[t])])
          return false;
    return true;
  }
  Act cst(int x) const { return constant_act(n, x); }

  bool rcd() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (int y = 0; y < outcomes; ++y)
          if (rk(g) > rk(f) && rk(cst(y)) > rk(f) && !(rk(meet(act(g), cst(y))) > rk(f))) return false;
    return true;
  }
  bool rdd() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (int y = 0; y < outcomes; ++y)
          if (rk(f) > rk(g) && rk(f) > rk(cst(y)) && !(rk(f) > rk(join(act(g), cst(y))))) return false;
    return true;
  }
  bool cd() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (std::uint64_t h = 0; h < acts; ++h)
          if (rk(g) > rk(f) && rk(h) > rk(f) && !(rk(meet(act(g), act(h))) > rk(f))) return false;
    return true;
  }
  bool dd() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (std::uint64_t h = 0; h < acts; ++h)
          if (rk(f) > rk(g) && rk(f) > rk(h) && !(rk(f) > rk(join(act(g), act(h))))) return false;
    return true;
  }
  bool cod() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g) {
        if (!comonotonic(act(f), act(g))) continue;
        const int j = rk(join(act(f), act(g))), m = rk(meet(act(f), act(g)));
        if (j > rk(f) && j != rk(g)) return false;
        if (m < rk(f) && m != rk(g)) return false;
      }
    return true;
  }
  bool optimism() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (Subset a = 0; a < subset_count(n); ++a)
          if (rk(compound_act(act(f), a, act(g))) < rk(f) && !(rk(f) <= rk(compound_act(act(g), a, act(f)))))
            return false;
    return true;
  }
  bool pessimism() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (Subset a = 0; a < subset_count(n); ++a)
          if (rk(compound_act(act(f), a, act(g))) > rk(f) && !(rk(f) >= rk(compound_act(act(g), a, act(f)))))
            return false;
    return true;
  }
  bool ws3() const {
    for (int x = 0; x < outcomes; ++x)
      for (int y = 0; y < outcomes; ++y)
        for (Subset b = 0; b < subset_count(n); ++b)
          for (std::uint64_t h = 0; h < acts; ++h)
            if (order[static_cast<std::size_t>(x)] <= order[static_cast<std::size_t>(y)] &&
                rk(compound_act(cst(x), b, act(h))) > rk(compound_act(cst(y), b, act(h))))
              return false;
    return true;
  }
  bool sav2() const {
    for (std::uint64_t f = 0; f < acts; ++f)
      for (std::uint64_t g = 0; g < acts; ++g)
        for (std::uint64_t h = 0; h < acts; ++h)
          for (std::uint64_t h2 = 0; h2 < acts; ++h2)
            for (Subset a = 0; a < subset_count(n); ++a)
              if (rk(compound_act(act(f), a, act(h))) <= rk(compound_act(act(g), a, act(h))) &&
                  rk(compound_act(act(f), a, act(h2))) > rk(compound_act(act(g), a, act(h2))))
                return false;
    return true;
  }
  bool sav4p() const {
    auto o = [&](int x) { return order[static_cast<std::size_t>(x)]; };
    auto bet = [&](int x, Subset a, int y) { return rk(binary_act(n, x, a, y)); };
    for (int x = 0; x < outcomes; ++x)
      for (int x2 = 0; x2 < outcomes; ++x2)
        for (int y = 0; y < outcomes; ++y)
          for (int y2 = 0; y2 < outcomes; ++y2) {
            if (!(o(x) > o(x2) && o(y) > o(y2))) continue;
            for (Subset a = 0; a < subset_count(n); ++a)
              for (Subset b = 0; b < subset_count(n); ++b) {
                const bool xs = bet(x, a, x2) < bet(x, b, x2);
                const bool ys = bet(y, a, y2) < bet(y, b, y2);
                if (xs && bet(y, a, y2) > bet(y, b, y2)) return false;
                if (o(x) >= o(y) && o(y2) >= o(x2) && ys && !xs) return false;
              }
          }
    return true;
  }
  bool sav5() const {
    for (int x = 0; x < outcomes; ++x)
      if (order[static_cast<std::size_t>(x)] != order[0]) return true;
    return false;
  }
};

bool naive_verdict(const Naive& nv, Axiom a) {
  switch (a) {
    case Axiom::rcd: return nv.rcd();
    case Axiom::rdd: return nv.rdd();
    case Axiom::cd: return nv.cd();
    case Axiom::dd: return nv.dd();
    case Axiom::cod: return nv.cod();
    case Axiom::optimism: return nv.optimism();
    case Axiom::pessimism: return nv.pessimism();
    case Axiom::ws3: return nv.ws3();
    case Axiom::sav2: return nv.sav2();
    case Axiom::sav4p: return nv.sav4p();
    case Axiom::sav5: return nv.sav5();
    default: return true;
  }
}


}  // namespace

TEST_CASE("axiom names") {
  CHECK(axiom_id(Axiom::sav4p) == "SAV4P");
  CHECK(axiom_label(Axiom::sav4p) == "Sav 4'");
  CHECK(axiom_label(Axiom::ws3) == "WS 3");
  CHECK(axiom_label(Axiom::cod) == "CoD");
  CHECK(parse_axiom("SAV4'") == Axiom::sav4p);
  CHECK(parse_axiom("optimism") == Axiom::optimism);
  CHECK_FALSE(parse_axiom("SAV6"));
  CHECK(all_axioms().size() == 14);
}

TEST_CASE("relation construction") {
  const ActSpace space(2, 2);
  CHECK_THROWS_AS(PreferenceRelation(space, std::vector<int>{0, 1}), Error);
  CHECK_THROWS_AS(PreferenceRelation(space, std::vector<int>{0, -1, 0, 0}), Error);
  const PreferenceRelation partial(space, std::vector<std::uint64_t>{3, 0}, std::vector<int>{1, 0});
  CHECK_FALSE(partial.is_full());
  CHECK(partial.act_at(0) == 0);
  CHECK(partial.rank(3) == 1);
  CHECK_FALSE(partial.rank(1));
  CHECK_THROWS_AS(PreferenceRelation(space, std::vector<std::uint64_t>{0, 0}, std::vector<int>{0, 0}), Error);
  const PreferenceRelation covered(space, std::vector<std::uint64_t>{3, 2, 1, 0}, std::vector<int>{1, 1, 0, 0});
  CHECK(covered.is_full());
  CHECK_THROWS_AS(check_axiom(partial, Axiom::rcd), Error);
}

TEST_CASE("outcome order read off constant acts") {
  const DecisionFrame fr = testing::random_frame(2, 3, 2, 4);
  const auto order = induced_outcome_order(induce_preorder(fr));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK((order[static_cast<std::size_t>(x)] <= order[static_cast<std::size_t>(y)]) == (fr.mu(x) <= fr.mu(y)));

  const ActSpace space(2, 3);
  std::mt19937_64 rng(9);
  std::vector<int> ranks(space.size());
  for (int& r : ranks) r = static_cast<int>(rng() % 5);
  const PreferenceRelation rel(space, ranks);
  const auto o = induced_outcome_order(rel);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK((o[static_cast<std::size_t>(x)] < o[static_cast<std::size_t>(y)]) ==
            (ranks[space.constant(x)] < ranks[space.constant(y)]));

  const PreferenceRelation flat(space, std::vector<int>(space.size(), 0));
  const auto f = induced_outcome_order(flat);
  CHECK(std::count(f.begin(), f.end(), 0) == 3);
  CHECK_FALSE(check_axiom(flat, Axiom::sav5).holds);
}

TEST_CASE("induced likelihood of a Sugeno relation is the capacity order") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DecisionFrame fr = testing::random_frame(3, 3, 2, seed);
    const PreferenceRelation rel = induce_preorder(fr);
    const auto report = induced_likelihood(rel);
    // A disagreement between stakes is exactly a Sav 4 failure.
    CHECK(report.disagreements.empty() == check_axiom(rel, Axiom::sav4).holds);
    CHECK_FALSE(report.relation.incomparable_pair());
    for (Subset a = 0; a < 8; ++a) {
      CHECK(report.relation.leq(0, a));
      CHECK(report.relation.leq(a, 7));
      for (Subset b = 0; b < 8; ++b)
        CHECK(report.relation.leq(a, b) == (fr.capacity().rank(a) <= fr.capacity().rank(b)));
    }
  }
  const ActSpace space(2, 2);
  CHECK_THROWS_AS(induced_likelihood(PreferenceRelation(space, std::vector<int>(4, 0))), Error);
}

TEST_CASE("likelihood disagreements carry a Sav 4 style tuple") {
  // Bets with different stakes rank the events differently.
  const ActSpace space(2, 3);
  std::vector<int> values(space.size(), 0);
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const Act f = space.act(i);
    values[i] = 10 * (f[0] + f[1]);
  }
  values[space.index(Act{{2, 0}})] = 15;  // 2{s0}0 above 0{s0}2 ... tie broken one way
  values[space.index(Act{{0, 2}})] = 14;
  values[space.index(Act{{1, 0}})] = 5;
  values[space.index(Act{{0, 1}})] = 6;   // ... and the other way at lower stakes
  const PreferenceRelation rel = testing::relation_from_values(space, values);
  const auto report = induced_likelihood(rel);
  REQUIRE_FALSE(report.disagreements.empty());
  const Witness& w = report.disagreements.front();
  CHECK(w.items.size() == 6);
  const int x = static_cast<int>(w.value("x")), y = static_cast<int>(w.value("y"));
  const int x2 = static_cast<int>(w.value("x'")), y2 = static_cast<int>(w.value("y'"));
  const Subset a = static_cast<Subset>(w.value("A")), b = static_cast<Subset>(w.value("B"));
  const bool first = rel.rank_of(space.index(binary_act(2, x, a, y))) <= rel.rank_of(space.index(binary_act(2, x, b, y)));
  const bool second = rel.rank_of(space.index(binary_act(2, x2, a, y2))) <= rel.rank_of(space.index(binary_act(2, x2, b, y2)));
  CHECK(first != second);
  CHECK_FALSE(check_axiom(rel, Axiom::sav4).holds);
}

TEST_CASE("null events") {
  const Scale s(3);
  // σ is 0 on every subset of {s0}.
  const DecisionFrame fr(s, levels(s, {0, 1, 2}),
                         capacity_from_ranks(std::vector<int>{0, 0, 1, 1, 1, 1, 2, 2}, 3, s));
  const PreferenceRelation rel = induce_preorder(fr);
  CHECK(is_null_event(rel, 0));
  CHECK(is_null_event(rel, 0b001));
  CHECK_FALSE(is_null_event(rel, 0b111));
  CHECK_FALSE(is_null_event(rel, 0b010));

  // Brute force over triples: A null iff fAh ~ gAh for all f, g, h.
  const ActSpace space = rel.space();
  for (Subset a = 0; a < 8; ++a) {
    bool null = true;
    for (std::uint64_t f = 0; f < space.size() && null; ++f)
      for (std::uint64_t g = 0; g < space.size() && null; ++g)
        for (std::uint64_t h = 0; h < space.size() && null; ++h)
          null = rel.rank_of(space.index(compound_act(space.act(f), a, space.act(h)))) ==
                 rel.rank_of(space.index(compound_act(space.act(g), a, space.act(h))));
    CHECK(is_null_event(rel, a) == null);
  }
}

TEST_CASE("null events and likelihood-equivalence to the empty event") {
  // A null ⇒ A ~L ∅ always; the converse fails for Sugeno relations.
  int converse_failures = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const DecisionFrame fr = testing::random_frame(3, 3, 2, seed);
    const PreferenceRelation rel = induce_preorder(fr);
    const auto lik = induced_likelihood(rel).relation;
    for (Subset a = 0; a < 8; ++a) {
      const bool like_empty = lik.leq(a, 0);
      if (is_null_event(rel, a)) CHECK(like_empty);
      if (like_empty && !is_null_event(rel, a)) ++converse_failures;
    }
  }
  MESSAGE("non-null events likelihood-equivalent to the empty event: " << converse_failures);
  CHECK(converse_failures > 0);
}

TEST_CASE("conditional preference through a chosen h") {
  const DecisionFrame fr = testing::sav2_frame();
  const PreferenceRelation rel = induce_preorder(fr);
  const ActSpace space = rel.space();
  const auto f = space.index(Act{{1, 0, 0, 0}}), g = space.index(Act{{0, 1, 0, 0}});
  const auto h = space.index(Act{{0, 0, 1, 0}}), h2 = space.index(Act{{0, 0, 0, 1}});
  CHECK(conditional_leq(rel, f, g, 0b0011, h));
  CHECK_FALSE(conditional_leq(rel, f, g, 0b0011, h2));
  const auto amb = conditional_ambiguity(rel, f, g, 0b0011);
  REQUIRE(amb);
  CHECK(conditional_leq(rel, f, g, 0b0011, amb->first) != conditional_leq(rel, f, g, 0b0011, amb->second));
  CHECK_FALSE(conditional_ambiguity(rel, f, g, 0b1111));
}

TEST_CASE("Sugeno relations: axiom profile against naive loops") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const DecisionFrame fr = testing::random_frame(2, 3, 2, seed);
    const PreferenceRelation rel = induce_preorder(fr);
    const Naive nv(rel);
    for (Axiom a : {Axiom::sav1, Axiom::sav5, Axiom::ws3, Axiom::sav4p, Axiom::rcd, Axiom::rdd, Axiom::cod})
      CHECK_MESSAGE(check_axiom(rel, a).holds, axiom_id(a));
    for (Axiom a : all_axioms()) {
      const AxiomVerdict v = check_axiom(rel, a);
      if (a != Axiom::sav1 && a != Axiom::sav3 && a != Axiom::sav4) CHECK_MESSAGE(v.holds == naive_verdict(nv, a), axiom_id(a));
      CHECK(v.holds == !v.witness.has_value());
      if (v.witness) CHECK_MESSAGE(replay_witness(rel, a, *v.witness), axiom_id(a));
    }
  }
}

TEST_CASE("Sav 3 and Sav 4 can fail for Sugeno relations") {
  bool sav3 = false, sav4 = false;
  for (std::uint64_t seed = 0; seed < 30 && !(sav3 && sav4); ++seed) {
    const PreferenceRelation rel = induce_preorder(testing::random_frame(3, 3, 2, seed));
    const auto v3 = check_axiom(rel, Axiom::sav3);
    const auto v4 = check_axiom(rel, Axiom::sav4);
    if (!v3.holds) {
      sav3 = true;
      CHECK(replay_witness(rel, Axiom::sav3, *v3.witness));
      CHECK_FALSE(is_null_event(rel, static_cast<Subset>(v3.witness->value("A"))));
    }
    if (!v4.holds) {
      sav4 = true;
      CHECK(replay_witness(rel, Axiom::sav4, *v4.witness));
    }
  }
  CHECK(sav3);
  CHECK(sav4);
}

TEST_CASE("mutated relations: checker matches naive loops and witnesses replay") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PreferenceRelation rel = mutate(induce_preorder(testing::random_frame(2, 3, 2, seed)), seed + 100);
    const Naive nv(rel);
    for (Axiom a : all_axioms()) {
      const AxiomVerdict v = check_axiom(rel, a);
      if (a != Axiom::sav1 && a != Axiom::sav3 && a != Axiom::sav4) CHECK_MESSAGE(v.holds == naive_verdict(nv, a), axiom_id(a));
      if (v.witness) CHECK_MESSAGE(replay_witness(rel, a, *v.witness), axiom_id(a));
    }
  }
}

TEST_CASE("CoD implies RCD and RDD") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    PreferenceRelation rel = induce_preorder(testing::random_frame(2, 3, 2, seed));
    if (seed % 2) rel = mutate(rel, seed);
    if (check_axiom(rel, Axiom::cod).holds) {
      CHECK(check_axiom(rel, Axiom::rcd).holds);
      CHECK(check_axiom(rel, Axiom::rdd).holds);
    }
  }
}

TEST_CASE("pointwise dominance under Sav 1, WS 3, Sav 5") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    PreferenceRelation rel = induce_preorder(testing::random_frame(2, 3, 2, seed));
    if (seed % 2) rel = mutate(rel, seed);
    if (!check_axiom(rel, Axiom::ws3).holds || !check_axiom(rel, Axiom::sav5).holds) continue;
    const auto order = induced_outcome_order(rel);
    const ActSpace space = rel.space();
    for (std::uint64_t f = 0; f < space.size(); ++f)
      for (std::uint64_t g = 0; g < space.size(); ++g) {
        if (pointwise_leq(order, space.act(g), space.act(f))) CHECK(rel.rank_of(g) <= rel.rank_of(f));
      }
  }
}

TEST_CASE("sure-thing capacity: Sav 2 fails with a replayable witness") {
  const PreferenceRelation rel = induce_preorder(testing::sav2_frame());
  const AxiomVerdict v = check_axiom(rel, Axiom::sav2);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.witness);
  CHECK(v.witness->items.size() == 5);
  CHECK(v.witness->items[0].role == "f");
  CHECK(v.witness->items[4].role == "A");
  CHECK(replay_witness(rel, Axiom::sav2, *v.witness));
  const auto strict = find_strict_sure_thing_violation(rel);
  REQUIRE(strict);
  const ActSpace space = rel.space();
  const Subset a = static_cast<Subset>(strict->value("A"));
  auto r = [&](const char* x, const char* h) {
    return rel.rank_of(space.index(compound_act(space.act(strict->value(x)), a, space.act(strict->value(h)))));
  };
  CHECK(r("f", "h") < r("g", "h"));
  CHECK(r("f", "h'") > r("g", "h'"));
}

TEST_CASE("possibility relations satisfy DD and Optimism") {
  const Scale s(3);
  for (const auto& pi : std::vector<std::vector<int>>{{2, 1, 0}, {1, 2, 2}, {2, 0, 1}}) {
    const auto dist = make_distribution(s, pi);
    const PreferenceRelation opt = induce_preorder(DecisionFrame(s, levels(s, {0, 1, 2}), possibility_capacity(dist)));
    CHECK(check_axiom(opt, Axiom::dd).holds);
    CHECK(check_axiom(opt, Axiom::optimism).holds);
    const PreferenceRelation pes = induce_preorder(DecisionFrame(s, levels(s, {0, 1, 2}), necessity_capacity(dist)));
    CHECK(check_axiom(pes, Axiom::cd).holds);
    CHECK(check_axiom(pes, Axiom::pessimism).holds);
  }
}

TEST_CASE("DD matches Optimism and CD matches Pessimism") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PreferenceRelation rel = induce_preorder(testing::random_frame(3, 2, 2, seed));
    CHECK(check_axiom(rel, Axiom::dd).holds == check_axiom(rel, Axiom::optimism).holds);
    CHECK(check_axiom(rel, Axiom::cd).holds == check_axiom(rel, Axiom::pessimism).holds);
  }
  // On perturbed relations the equivalence needs the background axioms.
  int kept = 0, dd_fails = 0;
  for (std::uint64_t seed = 0; kept < 40 && seed < 400; ++seed) {
    const PreferenceRelation rel = mutate(induce_preorder(testing::random_frame(2, 3, 2, seed)), seed);
    if (!check_axiom(rel, Axiom::ws3).holds || !check_axiom(rel, Axiom::sav5).holds) continue;
    ++kept;
    const bool dd = check_axiom(rel, Axiom::dd).holds;
    dd_fails += !dd;
    CHECK(dd == check_axiom(rel, Axiom::optimism).holds);
    CHECK(check_axiom(rel, Axiom::cd).holds == check_axiom(rel, Axiom::pessimism).holds);
  }
  CHECK(kept == 40);
  CHECK(dd_fails > 0);
}

TEST_CASE("without WS 3 the two forms can disagree") {
  bool split = false;
  for (std::uint64_t seed = 0; seed < 200 && !split; ++seed) {
    const PreferenceRelation rel = mutate(induce_preorder(testing::random_frame(2, 2, 2, seed)), seed);
    split = check_axiom(rel, Axiom::dd).holds != check_axiom(rel, Axiom::optimism).holds ||
            check_axiom(rel, Axiom::cd).holds != check_axiom(rel, Axiom::pessimism).holds;
  }
  CHECK(split);
}

TEST_CASE("budget refusals report the quantifier space") {
  const PreferenceRelation rel = induce_preorder(testing::random_frame(4, 3, 2, 1));  // 81 acts
  try {
    check_axiom(rel, Axiom::sav2);
    FAIL("expected a budget refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.space() == quantifier_space(rel, Axiom::sav2));
  }
  CHECK_NOTHROW(check_axiom(rel, Axiom::rcd));
  Budget tiny;
  tiny.max_tuples = 10;
  CHECK_THROWS_AS(check_axiom(rel, Axiom::rcd, tiny), BudgetExceeded);
  CHECK_NOTHROW(check_axiom(rel, Axiom::sav5, tiny));
}

TEST_CASE("witnesses do not depend on the thread count") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PreferenceRelation rel = mutate(induce_preorder(testing::random_frame(2, 3, 2, seed)), seed);
    for (Axiom a : all_axioms()) {
      Budget one, many;
      one.threads = 1;
      many.threads = 4;
      const auto v1 = check_axiom(rel, a, one);
      const auto v4 = check_axiom(rel, a, many);
      CHECK(v1.holds == v4.holds);
      CHECK(v1.witness == v4.witness);
    }
  }
}

TEST_CASE("pairwise data compression") {
  using Pairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
  const ActSpace space(1, 4);
  const Compression chain = compress_weak_preferences(space, {0, 1, 2}, Pairs{{0, 1}, {1, 2}});
  REQUIRE(chain.relation);
  CHECK(chain.sav1.holds);
  CHECK(chain.relation->rank_of(0) < chain.relation->rank_of(1));
  CHECK(chain.relation->rank_of(1) < chain.relation->rank_of(2));

  const Compression tie = compress_weak_preferences(space, {0, 1, 2}, Pairs{{0, 1}, {1, 0}, {1, 2}});
  REQUIRE(tie.relation);
  CHECK(tie.relation->rank_of(0) == tie.relation->rank_of(1));
  CHECK(tie.relation->rank_of(1) < tie.relation->rank_of(2));

  // A weak cycle is indifference.
  const Compression loop = compress_weak_preferences(space, {0, 1, 2}, Pairs{{0, 1}, {1, 2}, {2, 0}});
  REQUIRE(loop.relation);
  CHECK(loop.relation->rank_of(0) == loop.relation->rank_of(2));

  const Compression gap = compress_weak_preferences(space, {0, 1, 2, 3}, Pairs{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK_FALSE(gap.relation);
  REQUIRE(gap.sav1.witness);
  CHECK(gap.sav1.witness->clause == "incomparable");
  CHECK(gap.sav1.witness->value("f") == 1);
  CHECK(gap.sav1.witness->value("g") == 2);

  const Compression cyc = compress_weak_preferences(space, {0, 1, 2}, Pairs{{1, 2}, {2, 0}}, Pairs{{0, 1}});
  CHECK_FALSE(cyc.relation);
  REQUIRE(cyc.sav1.witness);
  CHECK(cyc.sav1.witness->clause == "strict cycle");
  REQUIRE(cyc.sav1.witness->items.size() == 3);
  CHECK(cyc.sav1.witness->value("f1") == 0);
  CHECK(cyc.sav1.witness->value("f2") == 1);
  CHECK(cyc.sav1.witness->value("f3") == 2);

  const Compression strict = compress_weak_preferences(space, {0, 1, 2}, Pairs{{1, 2}}, Pairs{{0, 1}});
  REQUIRE(strict.relation);
  CHECK(strict.relation->rank_of(0) < strict.relation->rank_of(1));
  CHECK_THROWS_AS(compress_weak_preferences(space, {0, 1}, Pairs{{0, 3}}), Error);
}

TEST_CASE("comparative structures") {
  const Scale s(4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> pi(4);
    for (int& v : pi) v = static_cast<int>(rng() % 4);
    pi[rng() % 4] = 3;
    CHECK(is_comparative_possibility(likelihood_from_capacity(possibility_capacity(make_distribution(s, pi)))).holds);
  }

  // Counting measure.
  LikelihoodRelation counting(3);
  for (Subset a = 0; a < 8; ++a)
    for (Subset b = 0; b < 8; ++b) counting.set(a, b, cardinality(a) <= cardinality(b));
  CHECK(is_comparative_probability(counting).holds);

  const auto distinct = likelihood_from_capacity(possibility_capacity(make_distribution(Scale(3), std::vector<int>{2, 1, 0})));
  const ComparativeVerdict p = is_comparative_probability(distinct);
  CHECK_FALSE(p.holds);
  CHECK(p.failed == "P");
  REQUIRE(p.witness.size() == 3);
  const Subset a = p.witness[0], b = p.witness[1], c = p.witness[2];
  CHECK((a & (b | c)) == 0);
  CHECK(distinct.leq(b, c) != distinct.leq(a | b, a | c));

  const ComparativeVerdict pi_fail = is_comparative_possibility(likelihood_from_capacity(testing::sav2_capacity()));
  CHECK_FALSE(pi_fail.holds);
  CHECK(pi_fail.failed == "Pi");
  REQUIRE(pi_fail.witness.size() == 3);

  LikelihoodRelation intransitive(2);
  for (Subset x = 0; x < 4; ++x)
    for (Subset y = 0; y < 4; ++y) intransitive.set(x, y, true);
  intransitive.set(0b11, 0b01, false);  // {s0} < S
  intransitive.set(0b01, 0b10, false);  // {s1} < {s0}
  intransitive.set(0b11, 0b10, true);   // but S ≤ {s1}
  intransitive.set(0b10, 0b11, true);
  CHECK(is_comparative_possibility(intransitive).failed == "A1");

  LikelihoodRelation partial(2);
  CHECK_THROWS_AS(is_comparative_possibility(partial), Error);
}
