#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdt/acts.hpp"
#include "qdt/errors.hpp"
#include "qdt/preference.hpp"

namespace qdt {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

struct NamedAct {
  std::string name;
  std::vector<int> outcomes;
  bool operator==(const NamedAct&) const = default;
};

enum class CapacityKind { table, possibility, necessity };

// Decision frame file:
//   { "scale": 3, "states": [...], "outcomes": [...], "mu": [0, 1, 2],
//     "capacity": [ {"event": ["s0"], "level": 1}, ... ]
//       | "possibility": {"kind": "possibility"|"necessity", "pi": [...]},
//     "acts": [ {"name": "f", "outcomes": ["x2", "x0"]} ] }
// Events are lists of state labels, written in state order.
struct FrameDocument {
  int scale_size = 2;
  std::vector<std::string> states;
  std::vector<std::string> outcomes;
  std::vector<int> mu;
  CapacityKind kind = CapacityKind::table;
  std::vector<std::pair<Subset, int>> capacity;  // document order
  std::vector<int> pi;
  std::vector<NamedAct> acts;

  bool operator==(const FrameDocument&) const = default;
};

FrameDocument parse_frame_document(const Json& json);
FrameDocument parse_frame_text(const std::string& text);
Json to_json(const FrameDocument& doc);

// Builds σ (validated) and the frame.
Capacity build_capacity(const FrameDocument& doc);
DecisionFrame build_frame(const FrameDocument& doc);

// An act reference is either the name of a declared act or a list of outcome
// labels, one per state (comma separated in text form).
Act resolve_act(const FrameDocument& doc, const Json& ref);
Act resolve_act_text(const FrameDocument& doc, const std::string& ref);

Json act_json(const FrameDocument& doc, const Act& f);
Json event_json(const FrameDocument& doc, Subset a);
std::string act_text(const FrameDocument& doc, const Act& f);
std::string event_text(const FrameDocument& doc, Subset a);

// Relation file:
//   { "frame": "frame.json" | { ...inline frame... },
//     "induce": "capacity"
//       | "ranks": [ {"act": <ref>, "rank": 0}, ... ]
//       | "weak_preferences": [ {"worse": <ref>, "better": <ref>, "strict": false}, ... ] }
// Pairwise data is closed under transitivity; every declared act takes part.
struct LoadedRelation {
  FrameDocument frame_doc;
  std::optional<DecisionFrame> frame;
  std::optional<PreferenceRelation> relation;
  AxiomVerdict sav1{Axiom::sav1, true, std::nullopt};
};

LoadedRelation load_relation(const Json& json, const std::filesystem::path& base_dir,
                             const Budget& budget = {});
LoadedRelation load_relation_text(const std::string& text, const std::filesystem::path& base_dir,
                                  const Budget& budget = {});

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qdt
