#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdt/qdt.h"

namespace {

constexpr int kExitUsage = 2;

int input_error(qdt_status status) {
  std::cerr << "qdt: " << qdt_last_error() << "\n";
  if (status == QDT_BUDGET)
    std::cerr << "qdt: quantifier space of " << qdt_last_budget_space()
              << " exceeds the budget (raise QDT_BUDGET to allow it)\n";
  return kExitUsage;
}

int print_report(qdt_status status, char* body, int violation, bool json) {
  if (status != QDT_OK) return input_error(status);
  if (json) {
    std::fputs(body, stdout);
  } else {
    char* text = nullptr;
    const qdt_status s = qdt_report_render(body, &text);
    if (s != QDT_OK) {
      qdt_string_free(body);
      return input_error(s);
    }
    std::fputs(text, stdout);
    qdt_string_free(text);
  }
  qdt_string_free(body);
  return violation ? 1 : 0;
}

struct FrameHandle {
  qdt_frame* frame = nullptr;
  ~FrameHandle() { qdt_frame_free(frame); }
};

struct RelationHandle {
  qdt_relation* rel = nullptr;
  ~RelationHandle() { qdt_relation_free(rel); }
};

std::vector<double> parse_probabilities(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    double v = std::stod(part, &used);
    if (used != part.size()) throw std::invalid_argument(part);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative decision analysis with Sugeno utilities"};
  app.require_subcommand(1);
  bool json = false;
  unsigned threads = 0;
  app.fallthrough();
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--threads", threads, "Worker threads for exhaustive checks (0 = all cores)");

  std::string frame_path, rel_path, act, method = "all", axioms, mode = "general", kind,
                                                     probabilities;
  bool all_acts = false;

  auto* eval = app.add_subcommand("eval", "Sugeno utility of acts");
  eval->add_option("FRAME", frame_path, "Frame document")->required();
  auto* act_opt = eval->add_option("--act", act, "Declared act name or comma-separated outcome labels");
  eval->add_flag("--all", all_acts, "Every act of the frame")->excludes(act_opt);
  eval->add_option("--method", method, "levelcut, outcome, median or all")
      ->check(CLI::IsMember({"levelcut", "outcome", "median", "all"}));

  auto* capacity = app.add_subcommand("check-capacity", "Validate and classify a capacity");
  capacity->add_option("FRAME", frame_path, "Frame document")->required();

  auto* check = app.add_subcommand("check-axioms", "Check axioms on a preference relation");
  check->add_option("REL", rel_path, "Relation document")->required();
  check->add_option("--axioms", axioms, "Comma-separated axiom ids, or all")->required();

  auto* synth = app.add_subcommand("synthesize", "Recover a Sugeno representation");
  synth->add_option("REL", rel_path, "Relation document")->required();
  synth->add_option("--mode", mode, "general, optimistic or pessimistic")
      ->check(CLI::IsMember({"general", "optimistic", "pessimistic"}));

  auto* counter = app.add_subcommand("counterexample", "Search or show a counterexample");
  counter->add_option("--kind", kind, "surething or eu-rcd")
      ->required()
      ->check(CLI::IsMember({"surething", "eu-rcd"}));
  counter->add_option("FRAME", frame_path, "Frame document (surething)");

  auto* compare = app.add_subcommand("compare", "Sugeno against expected utility");
  compare->add_option("FRAME", frame_path, "Frame document")->required();
  compare->add_option("--probabilities", probabilities, "Comma-separated state probabilities")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  qdt_options options = qdt_options_default();
  if (threads) options.threads = threads;
  char* body = nullptr;
  int violation = 0;

  qdt_status status = QDT_OK;
  if (*capacity) {
    status = qdt_report_capacity_file(frame_path.c_str(), &body, &violation);
  } else if (*counter && kind == "eu-rcd") {
    status = qdt_report_eu_demo(&body, &violation);
  } else if (*check || *synth) {
    RelationHandle rel;
    status = qdt_relation_from_file(rel_path.c_str(), &rel.rel);
    if (status != QDT_OK) return input_error(status);
    status = *check ? qdt_report_axioms(rel.rel, axioms.c_str(), &options, &body, &violation)
                    : qdt_report_synthesis(rel.rel, mode.c_str(), &options, &body, &violation);
  } else {
    if (frame_path.empty()) {
      std::cerr << "qdt: counterexample --kind surething needs a FRAME\n";
      return kExitUsage;
    }
    FrameHandle frame;
    status = qdt_frame_from_file(frame_path.c_str(), &frame.frame);
    if (status != QDT_OK) return input_error(status);
    if (*eval) {
      status = qdt_report_eval(frame.frame, act.empty() ? nullptr : act.c_str(), all_acts ? 1 : 0,
                               method.c_str(), &options, &body, &violation);
    } else if (*counter) {
      status = qdt_report_sure_thing(frame.frame, &options, &body, &violation);
    } else {
      std::vector<double> p;
      try {
        p = parse_probabilities(probabilities);
      } catch (const std::exception&) {
        std::cerr << "qdt: --probabilities expects comma-separated numbers\n";
        return kExitUsage;
      }
      status = qdt_report_compare(frame.frame, p.data(), p.size(), &options, &body, &violation);
    }
  }
  return print_report(status, body, violation, json);
}
