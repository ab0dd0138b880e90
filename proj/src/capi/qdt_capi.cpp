#include "qdt/qdt.h"

#include <cstring>
#include <filesystem>
#include <sstream>

#include "qdt/document.hpp"
#include "qdt/evaluate.hpp"
#include "qdt/report.hpp"

struct qdt_frame {
  qdt::FrameDocument doc;
  qdt::DecisionFrame frame;
};

struct qdt_relation {
  qdt::LoadedRelation loaded;
};

namespace {

thread_local std::string last_error;
thread_local std::uint64_t last_budget_space = 0;

qdt_status status_of(qdt::ErrorKind kind) {
  switch (kind) {
    case qdt::ErrorKind::invalid_argument: return QDT_INVALID_ARGUMENT;
    case qdt::ErrorKind::frame_mismatch: return QDT_FRAME_MISMATCH;
    case qdt::ErrorKind::invalid_capacity: return QDT_INVALID_CAPACITY;
    case qdt::ErrorKind::parse: return QDT_PARSE;
    case qdt::ErrorKind::budget_exceeded: return QDT_BUDGET;
    case qdt::ErrorKind::precondition: return QDT_PRECONDITION;
    case qdt::ErrorKind::internal: return QDT_INTERNAL;
  }
  return QDT_INTERNAL;
}

template <class Body>
qdt_status guarded(Body body) {
  last_error.clear();
  last_budget_space = 0;
  try {
    body();
    return QDT_OK;
  } catch (const qdt::BudgetExceeded& e) {
    last_error = e.what();
    last_budget_space = e.space();
    return QDT_BUDGET;
  } catch (const qdt::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return QDT_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QDT_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QDT_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) qdt::fail(qdt::ErrorKind::invalid_argument, what);
}

qdt::Budget budget_of(const qdt_options* options) {
  if (!options) return qdt::Budget::from_environment();
  qdt::Budget b;
  if (options->max_tuples) b.max_tuples = options->max_tuples;
  b.threads = options->threads;
  return b;
}

void emit(const qdt::Report& r, char** out, int* violation) {
  *out = dup(r.body.dump(2) + "\n");
  if (violation) *violation = r.status;
}

qdt::FrameDocument read_frame(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw std::filesystem::filesystem_error("cannot open frame file", path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  try {
    return qdt::parse_frame_text(qdt::read_text_file(path));
  } catch (const qdt::ParseError& e) {
    throw qdt::ParseError(path + ": " + e.what());
  }
}

qdt_frame* make_frame(qdt::FrameDocument doc) {
  qdt::DecisionFrame frame = qdt::build_frame(doc);
  return new qdt_frame{std::move(doc), std::move(frame)};
}

}  // namespace

extern "C" {

qdt_options qdt_options_default(void) {
  const qdt::Budget b = qdt::Budget::from_environment();
  return qdt_options{b.max_tuples.value_or(0), b.threads};
}

const char* qdt_last_error(void) { return last_error.c_str(); }
uint64_t qdt_last_budget_space(void) { return last_budget_space; }
void qdt_string_free(char* s) { std::free(s); }

qdt_status qdt_frame_from_json(const char* json, qdt_frame** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = make_frame(qdt::parse_frame_text(json));
  });
}

qdt_status qdt_frame_from_file(const char* path, qdt_frame** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = make_frame(read_frame(path));
  });
}

qdt_status qdt_frame_create(int scale_size, int states, int outcomes, const int* mu,
                            const int* capacity, qdt_frame** out) {
  return guarded([&] {
    require(mu && capacity && out, "null argument");
    require(states >= 1 && states <= qdt::kMaxStates, "state count out of range");
    require(outcomes >= 1, "need at least one outcome");
    qdt::FrameDocument doc;
    doc.scale_size = scale_size;
    for (int s = 0; s < states; ++s) doc.states.push_back("s" + std::to_string(s));
    for (int x = 0; x < outcomes; ++x) {
      doc.outcomes.push_back("x" + std::to_string(x));
      doc.mu.push_back(mu[x]);
    }
    for (qdt::Subset a = 0; a < qdt::subset_count(states); ++a) doc.capacity.emplace_back(a, capacity[a]);
    // Re-parse so range checks match the document path.
    *out = make_frame(qdt::parse_frame_document(qdt::to_json(doc)));
  });
}

void qdt_frame_free(qdt_frame* frame) { delete frame; }
int qdt_frame_state_count(const qdt_frame* frame) { return frame ? frame->frame.state_count() : 0; }
int qdt_frame_outcome_count(const qdt_frame* frame) { return frame ? frame->frame.outcome_count() : 0; }
int qdt_frame_scale_size(const qdt_frame* frame) { return frame ? frame->frame.scale().size() : 0; }
uint64_t qdt_frame_act_count(const qdt_frame* frame) { return frame ? frame->frame.act_space().size() : 0; }

qdt_status qdt_frame_to_json(const qdt_frame* frame, char** out) {
  return guarded([&] {
    require(frame && out, "null argument");
    *out = dup(qdt::to_json(frame->doc).dump(2) + "\n");
  });
}

qdt_status qdt_frame_evaluate(const qdt_frame* frame, const int* act, int method, int* level) {
  return guarded([&] {
    require(frame && act && level, "null argument");
    qdt::Act f{std::vector<int>(act, act + frame->frame.state_count())};
    frame->frame.check_act(f);
    switch (method) {
      case QDT_LEVELCUT: *level = qdt::sugeno_levelcut(frame->frame, f).rank(); break;
      case QDT_OUTCOME: *level = qdt::sugeno_outcome(frame->frame, f).rank(); break;
      case QDT_MEDIAN: *level = qdt::sugeno_median(frame->frame, f).rank(); break;
      default: qdt::fail(qdt::ErrorKind::invalid_argument, "unknown evaluation method");
    }
  });
}

qdt_status qdt_frame_capacity(const qdt_frame* frame, uint32_t subset, int* level) {
  return guarded([&] {
    require(frame && level, "null argument");
    require(subset < qdt::subset_count(frame->frame.state_count()), "subset out of range");
    *level = frame->frame.capacity().rank(subset);
  });
}

qdt_status qdt_relation_from_json(const char* json, const char* base_dir, qdt_relation** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new qdt_relation{qdt::load_relation_text(json, base_dir ? base_dir : ".",
                                                     qdt::Budget::from_environment())};
  });
}

qdt_status qdt_relation_from_file(const char* path, qdt_relation** out) {
  return guarded([&] {
    require(path && out, "null argument");
    if (!std::filesystem::exists(path))
      throw std::filesystem::filesystem_error(
          "cannot open relation file", path,
          std::make_error_code(std::errc::no_such_file_or_directory));
    const std::filesystem::path p(path);
    try {
      *out = new qdt_relation{qdt::load_relation_text(qdt::read_text_file(p), p.parent_path(),
                                                       qdt::Budget::from_environment())};
    } catch (const qdt::ParseError& e) {
      throw qdt::ParseError(std::string(path) + ": " + e.what());
    }
  });
}

qdt_status qdt_relation_induce(const qdt_frame* frame, qdt_relation** out) {
  return guarded([&] {
    require(frame && out, "null argument");
    qdt::Json j{{"frame", qdt::to_json(frame->doc)}, {"induce", "capacity"}};
    *out = new qdt_relation{qdt::load_relation(j, ".", qdt::Budget::from_environment())};
  });
}

void qdt_relation_free(qdt_relation* rel) { delete rel; }

qdt_status qdt_relation_rank(const qdt_relation* rel, uint64_t act, int* rank) {
  return guarded([&] {
    require(rel && rank, "null argument");
    if (!rel->loaded.relation)
      qdt::fail(qdt::ErrorKind::precondition, "the preference data is not a complete preorder");
    const auto r = rel->loaded.relation->rank(act);
    if (!r) qdt::fail(qdt::ErrorKind::invalid_argument, "act is not ranked by the relation");
    *rank = *r;
  });
}

qdt_status qdt_check_axiom(const qdt_relation* rel, const char* axiom, const qdt_options* options,
                           int* holds, char** witness) {
  return guarded([&] {
    require(rel && axiom && holds, "null argument");
    const auto a = qdt::parse_axiom(axiom);
    if (!a) qdt::fail(qdt::ErrorKind::invalid_argument, std::string("unknown axiom '") + axiom + "'");
    qdt::AxiomVerdict v = rel->loaded.sav1;
    if (rel->loaded.relation)
      v = qdt::check_axiom(*rel->loaded.relation, *a, budget_of(options));
    else if (*a != qdt::Axiom::sav1)
      qdt::fail(qdt::ErrorKind::precondition, "the preference data is not a complete preorder");
    *holds = v.holds ? 1 : 0;
    if (witness) *witness = v.witness ? dup(qdt::witness_json(rel->loaded.frame_doc, *v.witness).dump()) : nullptr;
  });
}

qdt_status qdt_report_eval(const qdt_frame* frame, const char* act, int all_acts, const char* method,
                           const qdt_options* options, char** out, int* violation) {
  return guarded([&] {
    require(frame && out, "null argument");
    const auto m = qdt::parse_eval_method(method ? method : "all");
    if (!m) qdt::fail(qdt::ErrorKind::invalid_argument, std::string("unknown method '") + method + "'");
    std::vector<qdt::Act> acts;
    if (act) acts.push_back(qdt::resolve_act_text(frame->doc, act));
    emit(qdt::eval_report(frame->doc, acts, all_acts != 0, *m, budget_of(options)), out, violation);
  });
}

qdt_status qdt_report_capacity_json(const char* json, char** out, int* violation) {
  return guarded([&] {
    require(json && out, "null argument");
    emit(qdt::capacity_report(qdt::parse_frame_text(json)), out, violation);
  });
}

qdt_status qdt_report_capacity_file(const char* path, char** out, int* violation) {
  return guarded([&] {
    require(path && out, "null argument");
    emit(qdt::capacity_report(read_frame(path)), out, violation);
  });
}

qdt_status qdt_report_axioms(const qdt_relation* rel, const char* axioms, const qdt_options* options,
                             char** out, int* violation) {
  return guarded([&] {
    require(rel && axioms && out, "null argument");
    std::vector<qdt::Axiom> list;
    if (std::string(axioms) == "all") {
      list.assign(qdt::all_axioms().begin(), qdt::all_axioms().end());
    } else {
      std::stringstream in(axioms);
      std::string id;
      while (std::getline(in, id, ',')) {
        const auto a = qdt::parse_axiom(id);
        if (!a) qdt::fail(qdt::ErrorKind::invalid_argument, "unknown axiom '" + id + "'");
        list.push_back(*a);
      }
      if (list.empty()) qdt::fail(qdt::ErrorKind::invalid_argument, "no axioms given");
    }
    emit(qdt::axioms_report(rel->loaded, list, budget_of(options)), out, violation);
  });
}

qdt_status qdt_report_synthesis(const qdt_relation* rel, const char* mode, const qdt_options* options,
                                char** out, int* violation) {
  return guarded([&] {
    require(rel && out, "null argument");
    const auto m = qdt::parse_synthesis_mode(mode ? mode : "general");
    if (!m) qdt::fail(qdt::ErrorKind::invalid_argument, std::string("unknown mode '") + mode + "'");
    qdt::SynthesisOptions o;
    o.budget = budget_of(options);
    emit(qdt::synthesis_report(rel->loaded, *m, o), out, violation);
  });
}

qdt_status qdt_report_sure_thing(const qdt_frame* frame, const qdt_options* options, char** out,
                                 int* violation) {
  return guarded([&] {
    require(frame && out, "null argument");
    emit(qdt::sure_thing_report(frame->doc, budget_of(options)), out, violation);
  });
}

qdt_status qdt_report_eu_demo(char** out, int* violation) {
  return guarded([&] {
    require(out, "null argument");
    emit(qdt::eu_demo_report(), out, violation);
  });
}

qdt_status qdt_report_compare(const qdt_frame* frame, const double* probabilities, size_t count,
                              const qdt_options* options, char** out, int* violation) {
  return guarded([&] {
    require(frame && probabilities && out, "null argument");
    emit(qdt::compare_report(frame->doc, std::vector<double>(probabilities, probabilities + count),
                             budget_of(options)),
         out, violation);
  });
}

qdt_status qdt_report_render(const char* report_json, char** out) {
  return guarded([&] {
    require(report_json && out, "null argument");
    qdt::Json j;
    try {
      j = qdt::Json::parse(report_json);
    } catch (const qdt::Json::exception& e) {
      throw qdt::ParseError(e.what());
    }
    try {
      *out = dup(qdt::render_text(j));
    } catch (const qdt::Json::exception& e) {
      qdt::fail(qdt::ErrorKind::invalid_argument, std::string("not a report: ") + e.what());
    }
  });
}

}  // extern "C"
