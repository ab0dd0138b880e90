#include "qdt/report.hpp"

#include <iomanip>
#include <sstream>

#include "qdt/evaluate.hpp"

namespace qdt {

namespace {

Json axiom_json(Axiom a) { return Json{{"axiom", axiom_id(a)}, {"label", axiom_label(a)}}; }

Json capacity_table_json(const FrameDocument& doc, const Capacity& sigma) {
  Json out = Json::array();
  for (Subset a = 0; a < subset_count(sigma.state_count()); ++a)
    out.push_back(Json{{"event", event_json(doc, a)}, {"level", sigma.rank(a)}});
  return out;
}

std::vector<std::uint64_t> acts_to_show(const FrameDocument& doc, const ActSpace& space,
                                        const std::vector<Act>& acts, bool all_acts,
                                        const Budget& budget) {
  std::vector<std::uint64_t> out;
  if (!acts.empty() && !all_acts) {
    for (const Act& f : acts) out.push_back(space.index(f));
    return out;
  }
  if (!doc.acts.empty() && !all_acts) {
    for (const auto& named : doc.acts) out.push_back(space.index(Act{named.outcomes}));
    return out;
  }
  if (space.size() > budget.enumerated_acts)
    throw BudgetExceeded(space.size(), budget.enumerated_acts,
                         "enumerating " + std::to_string(space.size()) +
                             " acts exceeds the budget of " + std::to_string(budget.enumerated_acts));
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(i);
  return out;
}

std::string act_name(const FrameDocument& doc, const Act& f) {
  for (const auto& named : doc.acts)
    if (named.outcomes == f.outcomes) return named.name;
  return {};
}

Json act_entry(const FrameDocument& doc, const Act& f) {
  Json j;
  const std::string name = act_name(doc, f);
  if (!name.empty()) j["name"] = name;
  j["act"] = act_json(doc, f);
  return j;
}

std::string number(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

std::string labels_text(const Json& list, char open, char close) {
  std::string out(1, open);
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ",";
    out += list[i].get<std::string>();
  }
  return out + close;
}

std::string act_entry_text(const Json& entry) {
  std::string text = labels_text(entry.at("act"), '(', ')');
  if (entry.contains("name")) text = entry.at("name").get<std::string>() + " " + text;
  return text;
}

std::string witness_text(const Json& w) {
  std::string out;
  for (const auto& item : w.at("items")) {
    if (!out.empty()) out += " ";
    out += item.at("role").get<std::string>() + "=";
    if (item.contains("act"))
      out += labels_text(item.at("act"), '(', ')');
    else if (item.contains("event"))
      out += labels_text(item.at("event"), '{', '}');
    else
      out += item.at("outcome").get<std::string>();
  }
  if (w.contains("clause")) out += " [" + w.at("clause").get<std::string>() + "]";
  return out;
}

Json verdict_json(const FrameDocument& doc, const AxiomVerdict& v) {
  Json j = axiom_json(v.axiom);
  j["holds"] = v.holds;
  if (v.witness) j["witness"] = witness_json(doc, *v.witness);
  return j;
}

std::string verdict_text(const Json& v) {
  std::string line = v.at("label").get<std::string>() + ": ";
  if (v.contains("evaluated") && !v.at("evaluated").get<bool>()) return line + "not evaluated";
  line += v.at("holds").get<bool>() ? "holds" : "fails";
  if (v.contains("witness")) line += "  " + witness_text(v.at("witness"));
  return line;
}

Json representation_json(const FrameDocument& doc, const Representation& rep) {
  Json j;
  j["scale"] = rep.scale.size();
  Json mu = Json::array();
  for (std::size_t x = 0; x < rep.mu.size(); ++x)
    mu.push_back(Json{{"outcome", doc.outcomes[x]}, {"level", rep.mu[x].rank()}});
  j["mu"] = std::move(mu);
  j["capacity"] = capacity_table_json(doc, rep.capacity);
  j["best_outcome"] = doc.outcomes[static_cast<std::size_t>(rep.best_outcome)];
  j["worst_outcome"] = doc.outcomes[static_cast<std::size_t>(rep.worst_outcome)];
  if (rep.diagnostic) j["diagnostic"] = true;
  return j;
}

Json check_json(const FrameDocument& doc, const ActSpace& space, const RepresentationCheck& check) {
  Json j{{"holds", check.holds}};
  if (check.distinguishing)
    j["distinguishing"] = Json::array({act_json(doc, space.act(check.distinguishing->first)),
                                       act_json(doc, space.act(check.distinguishing->second))});
  return j;
}

}  // namespace

std::optional<EvalMethod> parse_eval_method(std::string_view text) {
  if (text == "levelcut") return EvalMethod::levelcut;
  if (text == "outcome") return EvalMethod::outcome;
  if (text == "median") return EvalMethod::median;
  if (text == "all") return EvalMethod::all;
  return std::nullopt;
}

std::optional<SynthesisMode> parse_synthesis_mode(std::string_view text) {
  if (text == "general") return SynthesisMode::general;
  if (text == "optimistic") return SynthesisMode::optimistic;
  if (text == "pessimistic") return SynthesisMode::pessimistic;
  return std::nullopt;
}

Json witness_json(const FrameDocument& doc, const Witness& w) {
  const ActSpace space(static_cast<int>(doc.states.size()), static_cast<int>(doc.outcomes.size()));
  Json items = Json::array();
  for (const auto& item : w.items) {
    Json j{{"role", item.role}};
    switch (item.kind) {
      case WitnessKind::act:
        j["act"] = act_json(doc, space.act(item.value));
        break;
      case WitnessKind::outcome:
        j["outcome"] = doc.outcomes[static_cast<std::size_t>(item.value)];
        break;
      case WitnessKind::event:
        j["event"] = event_json(doc, static_cast<Subset>(item.value));
        break;
    }
    items.push_back(std::move(j));
  }
  Json out{{"items", std::move(items)}};
  if (!w.clause.empty()) out["clause"] = w.clause;
  return out;
}

Report eval_report(const FrameDocument& doc, const std::vector<Act>& acts, bool all_acts,
                   EvalMethod method, const Budget& budget) {
  const DecisionFrame frame = build_frame(doc);
  for (const Act& f : acts) frame.check_act(f);
  const ActSpace space = frame.act_space();

  Report r;
  r.body["report"] = "eval";
  Json methods = Json::array();
  if (method == EvalMethod::levelcut || method == EvalMethod::all) methods.push_back("levelcut");
  if (method == EvalMethod::outcome || method == EvalMethod::all) methods.push_back("outcome");
  if (method == EvalMethod::median || method == EvalMethod::all) methods.push_back("median");
  r.body["methods"] = methods;

  bool agree = true;
  Json rows = Json::array();
  for (std::uint64_t idx : acts_to_show(doc, space, acts, all_acts, budget)) {
    const Act f = space.act(idx);
    Json row = act_entry(doc, f);
    std::optional<int> first;
    for (const auto& m : methods) {
      const std::string name = m.get<std::string>();
      const Level u = name == "levelcut"  ? sugeno_levelcut(frame, f)
                      : name == "outcome" ? sugeno_outcome(frame, f)
                                          : sugeno_median(frame, f);
      row[name] = u.rank();
      if (first && *first != u.rank()) agree = false;
      first = u.rank();
    }
    rows.push_back(std::move(row));
  }
  r.body["acts"] = std::move(rows);
  if (method == EvalMethod::all) r.body["agreement"] = agree;
  r.status = agree ? 0 : 1;
  return r;
}

Report capacity_report(const FrameDocument& doc) {
  Report r;
  r.body["report"] = "check-capacity";
  try {
    const Capacity sigma = build_capacity(doc);
    r.body["valid"] = true;
    const CapacityClassification c = classify_capacity(sigma);
    auto law = [&](bool holds, const std::optional<std::pair<Subset, Subset>>& w) {
      Json j{{"holds", holds}};
      if (w) j["witness"] = Json::array({event_json(doc, w->first), event_json(doc, w->second)});
      return j;
    };
    r.body["maxitive"] = law(c.maxitive, c.maxitive_witness);
    r.body["minitive"] = law(c.minitive, c.minitive_witness);
  } catch (const CapacityError& e) {
    r.body["valid"] = false;
    r.body["error"] = e.what();
    if (e.witness())
      r.body["witness"] = Json{{"smaller", event_json(doc, e.witness()->smaller)},
                               {"larger", event_json(doc, e.witness()->larger)}};
    if (e.missing()) r.body["missing"] = event_json(doc, *e.missing());
    r.status = 1;
  }
  return r;
}

Report axioms_report(const LoadedRelation& loaded, const std::vector<Axiom>& axioms,
                     const Budget& budget) {
  Report r;
  r.body["report"] = "check-axioms";
  Json verdicts = Json::array();
  for (Axiom a : axioms) {
    if (!loaded.relation) {
      // Without a complete preorder only the Sav 1 verdict is meaningful.
      if (a == Axiom::sav1) {
        verdicts.push_back(verdict_json(loaded.frame_doc, loaded.sav1));
      } else {
        Json j = axiom_json(a);
        j["evaluated"] = false;
        verdicts.push_back(std::move(j));
      }
      r.status = 1;
      continue;
    }
    const AxiomVerdict v = check_axiom(*loaded.relation, a, budget);
    if (!v.holds) r.status = 1;
    verdicts.push_back(verdict_json(loaded.frame_doc, v));
  }
  r.body["axioms"] = std::move(verdicts);
  return r;
}

Report synthesis_report(const LoadedRelation& loaded, SynthesisMode mode,
                        const SynthesisOptions& options) {
  Report r;
  r.body["report"] = "synthesize";
  r.body["mode"] = mode == SynthesisMode::general       ? "general"
                   : mode == SynthesisMode::optimistic ? "optimistic"
                                                       : "pessimistic";
  if (!loaded.relation) {
    r.body["refused"] = verdict_json(loaded.frame_doc, loaded.sav1);
    r.status = 1;
    return r;
  }
  const FrameDocument& doc = loaded.frame_doc;
  const ActSpace& space = loaded.relation->space();
  try {
    if (mode == SynthesisMode::general) {
      const Representation rep = synthesize_representation(*loaded.relation, options);
      r.body["representation"] = representation_json(doc, rep);
      const RepresentationCheck check = verify_representation(*loaded.relation, rep);
      r.body["verification"] = check_json(doc, space, check);
      if (!check.holds) r.status = 1;
    } else {
      const auto p = synthesize_possibilistic(
          *loaded.relation,
          mode == SynthesisMode::optimistic ? PossibilisticMode::optimistic
                                            : PossibilisticMode::pessimistic,
          options);
      r.body["representation"] = representation_json(doc, p.representation);
      Json pi = Json::array();
      for (std::size_t s = 0; s < p.pi.values.size(); ++s)
        pi.push_back(Json{{"state", doc.states[s]}, {"level", p.pi.values[s].rank()}});
      r.body["representation"]["pi"] = std::move(pi);
      r.body["verification"] = check_json(doc, space, p.check);
      if (p.unreversed_formula_represents)
        r.body["unreversed_formula_represents"] = *p.unreversed_formula_represents;
      if (!p.check.holds) r.status = 1;
    }
  } catch (const SynthesisRefused& e) {
    r.body["refused"] = verdict_json(doc, e.verdict());
    r.status = 1;
  }
  return r;
}

Report sure_thing_report(const FrameDocument& doc, const Budget& budget) {
  const DecisionFrame frame = build_frame(doc);
  Report r;
  r.body["report"] = "counterexample";
  r.body["kind"] = "surething";
  const auto w = find_sure_thing_violation(frame, budget);
  r.body["found"] = w.has_value();
  if (w) {
    r.body["witness"] = witness_json(doc, *w);
    r.status = 1;
  }
  return r;
}

Report eu_demo_report() {
  const EuDemo d = eu_dominance_demo();
  Report r;
  r.body["report"] = "counterexample";
  r.body["kind"] = "eu-rcd";
  r.body["alpha"] = d.alpha;
  r.body["f"] = Json::array({d.a, d.b});
  r.body["g"] = Json::array({d.a2, d.b2});
  r.body["c"] = d.c;
  r.body["eu_f"] = d.eu_better;
  r.body["eu_g"] = d.eu_worse;
  r.body["eu_f_and_c"] = d.eu_capped;
  r.body["rcd_violation"] = d.rcd_violation;
  r.body["mirror"] = Json{{"eu_f", d.mirror_eu_better},
                          {"eu_g", d.mirror_eu_worse},
                          {"c", d.mirror_constant},
                          {"eu_g_or_c", d.mirror_eu_raised},
                          {"rdd_violation", d.rdd_violation}};
  r.status = d.rcd_violation || d.rdd_violation ? 1 : 0;
  return r;
}

Report compare_report(const FrameDocument& doc, const std::vector<double>& probabilities,
                      const Budget& budget) {
  const DecisionFrame frame = build_frame(doc);
  if (probabilities.size() != doc.states.size())
    fail(ErrorKind::invalid_argument, "expected " + std::to_string(doc.states.size()) +
                                          " probabilities, got " +
                                          std::to_string(probabilities.size()));
  const ActSpace space = frame.act_space();
  if (space.size() > budget.enumerated_acts)
    throw BudgetExceeded(space.size(), budget.enumerated_acts,
                         "enumerating " + std::to_string(space.size()) +
                             " acts exceeds the budget of " + std::to_string(budget.enumerated_acts));

  std::vector<double> scores(space.size());
  std::vector<double> payoffs(static_cast<std::size_t>(frame.state_count()));
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    for (int s = 0; s < frame.state_count(); ++s)
      payoffs[static_cast<std::size_t>(s)] = frame.mu_ranks()[static_cast<std::size_t>(space.digit(i, s))];
    scores[i] = expected_utility(probabilities, payoffs);
  }
  const std::vector<int> sugeno = utilities_of_all_acts(frame);
  const PreferenceRelation eu = rank_by_scores(space, scores).with_frame(frame);

  Report r;
  r.body["report"] = "compare";
  r.body["probabilities"] = probabilities;
  const auto shown = acts_to_show(doc, space, {}, false, budget);
  Json rows = Json::array();
  for (std::uint64_t i : shown) {
    Json row = act_entry(doc, space.act(i));
    row["sugeno"] = sugeno[i];
    row["eu"] = scores[i];
    rows.push_back(std::move(row));
  }
  r.body["acts"] = std::move(rows);

  std::uint64_t reversals = 0;
  for (std::size_t a = 0; a < shown.size(); ++a)
    for (std::size_t b = a + 1; b < shown.size(); ++b) {
      const int ds = sugeno[shown[a]] - sugeno[shown[b]];
      const int de = eu.rank_of(shown[a]) - eu.rank_of(shown[b]);
      if ((ds < 0 && de > 0) || (ds > 0 && de < 0)) ++reversals;
    }
  r.body["reversed_pairs"] = reversals;

  Json divergences = Json::array();
  for (Axiom a : {Axiom::rcd, Axiom::rdd}) {
    const AxiomVerdict v = check_axiom(eu, a, budget);
    Json j = verdict_json(doc, v);
    j["ranking"] = "expected utility";
    if (!v.holds) r.status = 1;
    divergences.push_back(std::move(j));
  }
  r.body["expected_utility_axioms"] = std::move(divergences);
  return r;
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  const std::string kind = report.at("report").get<std::string>();
  if (kind == "eval") {
    for (const auto& row : report.at("acts")) {
      out << act_entry_text(row) << ":";
      for (const auto& m : report.at("methods")) {
        const std::string name = m.get<std::string>();
        out << " " << name << "=" << row.at(name).get<int>();
      }
      out << "\n";
    }
    if (report.contains("agreement"))
      out << (report.at("agreement").get<bool>() ? "all methods agree\n" : "methods DISAGREE\n");
  } else if (kind == "check-capacity") {
    if (!report.at("valid").get<bool>()) {
      out << "invalid capacity: " << report.at("error").get<std::string>() << "\n";
      if (report.contains("witness"))
        out << "witness: " << labels_text(report.at("witness").at("smaller"), '{', '}') << " within "
            << labels_text(report.at("witness").at("larger"), '{', '}') << "\n";
    } else {
      out << "valid capacity\n";
      for (const char* law : {"maxitive", "minitive"}) {
        const Json& j = report.at(law);
        out << law << ": " << (j.at("holds").get<bool>() ? "yes" : "no");
        if (j.contains("witness"))
          out << "  A=" << labels_text(j.at("witness")[0], '{', '}')
              << " B=" << labels_text(j.at("witness")[1], '{', '}');
        out << "\n";
      }
    }
  } else if (kind == "check-axioms") {
    for (const auto& v : report.at("axioms")) out << verdict_text(v) << "\n";
  } else if (kind == "synthesize") {
    out << "mode: " << report.at("mode").get<std::string>() << "\n";
    if (report.contains("refused")) {
      out << "refused, " << verdict_text(report.at("refused")) << "\n";
    } else {
      const Json& rep = report.at("representation");
      out << "scale: " << rep.at("scale").get<int>() << " levels"
          << (rep.contains("diagnostic") ? " (diagnostic, Sav 5 waived)" : "") << "\n";
      out << "utility:";
      for (const auto& e : rep.at("mu"))
        out << " " << e.at("outcome").get<std::string>() << "=" << e.at("level").get<int>();
      out << "\n";
      if (rep.contains("pi")) {
        out << "possibility:";
        for (const auto& e : rep.at("pi"))
          out << " " << e.at("state").get<std::string>() << "=" << e.at("level").get<int>();
        out << "\n";
      }
      out << "capacity:\n";
      for (const auto& e : rep.at("capacity"))
        out << "  " << labels_text(e.at("event"), '{', '}') << " = " << e.at("level").get<int>() << "\n";
      const Json& v = report.at("verification");
      out << "verification: " << (v.at("holds").get<bool>() ? "holds" : "fails");
      if (v.contains("distinguishing"))
        out << "  " << labels_text(v.at("distinguishing")[0], '(', ')') << " vs "
            << labels_text(v.at("distinguishing")[1], '(', ')');
      out << "\n";
      if (report.contains("unreversed_formula_represents"))
        out << "formula without order reversal also represents: "
            << (report.at("unreversed_formula_represents").get<bool>() ? "yes" : "no") << "\n";
    }
  } else if (kind == "counterexample" && report.at("kind") == "surething") {
    if (report.at("found").get<bool>())
      out << "sure-thing violation: " << witness_text(report.at("witness")) << "\n";
    else
      out << "no sure-thing violation\n";
  } else if (kind == "counterexample") {
    out << "alpha = " << number(report.at("alpha").get<double>()) << ", c = "
        << number(report.at("c").get<double>()) << "\n";
    out << "EU(f) = " << number(report.at("eu_f").get<double>()) << "\n";
    out << "EU(g) = " << number(report.at("eu_g").get<double>()) << "\n";
    out << "EU(f and c) = " << number(report.at("eu_f_and_c").get<double>()) << "\n";
    out << "RCD violated: " << (report.at("rcd_violation").get<bool>() ? "yes" : "no") << "\n";
    const Json& m = report.at("mirror");
    out << "mirror: EU(f) = " << number(m.at("eu_f").get<double>())
        << ", EU(g) = " << number(m.at("eu_g").get<double>())
        << ", c = " << number(m.at("c").get<double>())
        << ", EU(g or c) = " << number(m.at("eu_g_or_c").get<double>()) << "\n";
    out << "RDD violated: " << (m.at("rdd_violation").get<bool>() ? "yes" : "no") << "\n";
  } else if (kind == "compare") {
    out << "act: sugeno eu\n";
    for (const auto& row : report.at("acts"))
      out << act_entry_text(row) << ": " << row.at("sugeno").get<int>() << " "
          << number(row.at("eu").get<double>()) << "\n";
    out << "pairs ranked in opposite order: " << report.at("reversed_pairs").get<std::uint64_t>() << "\n";
    for (const auto& v : report.at("expected_utility_axioms"))
      out << "expected utility, " << verdict_text(v) << "\n";
  }
  return out.str();
}

}  // namespace qdt
