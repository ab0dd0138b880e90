#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdt/document.hpp"
#include "qdt/synthesis.hpp"

namespace qdt {

// A machine-readable report and its verdict: status 0 when everything holds,
// 1 when a violation or witness was found. Human-readable text is rendered
// from the JSON body so both modes always carry the same verdicts.
struct Report {
  Json body;
  int status = 0;
};

enum class EvalMethod { levelcut, outcome, median, all };
std::optional<EvalMethod> parse_eval_method(std::string_view text);

// With no acts given: the declared acts, or every act when none are declared
// or `all_acts` is set.
Report eval_report(const FrameDocument& doc, const std::vector<Act>& acts, bool all_acts,
                   EvalMethod method, const Budget& budget = {});

// Validity is a verdict here, not an input error.
Report capacity_report(const FrameDocument& doc);

Report axioms_report(const LoadedRelation& loaded, const std::vector<Axiom>& axioms,
                     const Budget& budget = {});

enum class SynthesisMode { general, optimistic, pessimistic };
std::optional<SynthesisMode> parse_synthesis_mode(std::string_view text);

Report synthesis_report(const LoadedRelation& loaded, SynthesisMode mode,
                        const SynthesisOptions& options = {});

Report sure_thing_report(const FrameDocument& doc, const Budget& budget = {});

Report eu_demo_report();

// Sugeno ranks next to expected utility of the μ ranks under the given
// state probabilities. RCD and RDD are checked on the EU ranking.
Report compare_report(const FrameDocument& doc, const std::vector<double>& probabilities,
                      const Budget& budget = {});

Json witness_json(const FrameDocument& doc, const Witness& w);
std::string render_text(const Json& report);

}  // namespace qdt
