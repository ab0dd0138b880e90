#include "qdt/document.hpp"
#include "qdt/synthesis.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qdt {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& field) {
  if (!j.is_string()) bad(field, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> labels(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_string(j[i], field + "/" + std::to_string(i)));
    if (std::count(out.begin(), out.end(), out.back()) > 1)
      bad(field + "/" + std::to_string(i), "duplicate label '" + out.back() + "'");
  }
  if (out.empty()) bad(field, "must not be empty");
  return out;
}

int lookup(const std::vector<std::string>& names, const std::string& label, const std::string& field,
           const char* what) {
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end()) bad(field, std::string("unknown ") + what + " '" + label + "'");
  return static_cast<int>(it - names.begin());
}

Subset parse_event(const FrameDocument& doc, const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected a list of state labels");
  Subset a = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = field + "/" + std::to_string(i);
    const int s = lookup(doc.states, as_string(j[i], where), where, "state");
    if (contains(a, s)) bad(where, "state listed twice");
    a |= singleton(s);
  }
  return a;
}

std::vector<int> int_list(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_int(j[i], field + "/" + std::to_string(i)));
  return out;
}

std::vector<int> outcome_list(const FrameDocument& doc, const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected a list of outcome labels");
  if (j.size() != doc.states.size())
    bad(field, "act lists " + std::to_string(j.size()) + " outcomes for " +
                   std::to_string(doc.states.size()) + " states");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = field + "/" + std::to_string(i);
    out.push_back(lookup(doc.outcomes, as_string(j[i], where), where, "outcome"));
  }
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Convert the byte offset into a line/column pair.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON");
  }
}

}  // namespace

FrameDocument parse_frame_document(const Json& json) {
  FrameDocument doc;
  if (!json.is_object()) bad("/", "frame document must be a JSON object");
  doc.scale_size = as_int(member(json, "scale", "/"), "/scale");
  if (doc.scale_size < 2) bad("/scale", "a scale has at least two levels");
  doc.states = labels(member(json, "states", "/"), "/states");
  if (doc.states.size() > static_cast<std::size_t>(kMaxStates))
    bad("/states", "at most " + std::to_string(kMaxStates) + " states are supported");
  doc.outcomes = labels(member(json, "outcomes", "/"), "/outcomes");
  doc.mu = int_list(member(json, "mu", "/"), "/mu");
  if (doc.mu.size() != doc.outcomes.size())
    bad("/mu", "needs one level per outcome");
  for (std::size_t i = 0; i < doc.mu.size(); ++i)
    if (doc.mu[i] < 0 || doc.mu[i] >= doc.scale_size)
      bad("/mu/" + std::to_string(i), "level outside the scale");

  const bool has_table = json.contains("capacity");
  const bool has_pi = json.contains("possibility");
  if (has_table == has_pi) bad("/", "exactly one of 'capacity' or 'possibility' is required");
  if (has_table) {
    const Json& table = json.at("capacity");
    if (!table.is_array()) bad("/capacity", "expected an array of {event, level} entries");
    for (std::size_t i = 0; i < table.size(); ++i) {
      const std::string where = "/capacity/" + std::to_string(i);
      const Subset a = parse_event(doc, member(table[i], "event", where), where + "/event");
      const int level = as_int(member(table[i], "level", where), where + "/level");
      if (level < 0 || level >= doc.scale_size) bad(where + "/level", "level outside the scale");
      for (const auto& [seen, _] : doc.capacity)
        if (seen == a) bad(where + "/event", "event listed twice");
      doc.capacity.emplace_back(a, level);
    }
  } else {
    const Json& p = json.at("possibility");
    const std::string kind = as_string(member(p, "kind", "/possibility"), "/possibility/kind");
    if (kind == "possibility")
      doc.kind = CapacityKind::possibility;
    else if (kind == "necessity")
      doc.kind = CapacityKind::necessity;
    else
      bad("/possibility/kind", "expected 'possibility' or 'necessity'");
    doc.pi = int_list(member(p, "pi", "/possibility"), "/possibility/pi");
    if (doc.pi.size() != doc.states.size()) bad("/possibility/pi", "needs one level per state");
    for (std::size_t i = 0; i < doc.pi.size(); ++i)
      if (doc.pi[i] < 0 || doc.pi[i] >= doc.scale_size)
        bad("/possibility/pi/" + std::to_string(i), "level outside the scale");
  }

  if (json.contains("acts")) {
    const Json& acts = json.at("acts");
    if (!acts.is_array()) bad("/acts", "expected an array");
    for (std::size_t i = 0; i < acts.size(); ++i) {
      const std::string where = "/acts/" + std::to_string(i);
      NamedAct act{as_string(member(acts[i], "name", where), where + "/name"),
                   outcome_list(doc, member(acts[i], "outcomes", where), where + "/outcomes")};
      for (const auto& other : doc.acts)
        if (other.name == act.name) bad(where + "/name", "duplicate act name '" + act.name + "'");
      doc.acts.push_back(std::move(act));
    }
  }
  return doc;
}

FrameDocument parse_frame_text(const std::string& text) {
  return parse_frame_document(parse_json_text(text));
}

Json to_json(const FrameDocument& doc) {
  Json j;
  j["scale"] = doc.scale_size;
  j["states"] = doc.states;
  j["outcomes"] = doc.outcomes;
  j["mu"] = doc.mu;
  if (doc.kind == CapacityKind::table) {
    Json table = Json::array();
    for (const auto& [a, level] : doc.capacity)
      table.push_back(Json{{"event", event_json(doc, a)}, {"level", level}});
    j["capacity"] = std::move(table);
  } else {
    j["possibility"] = Json{{"kind", doc.kind == CapacityKind::possibility ? "possibility" : "necessity"},
                            {"pi", doc.pi}};
  }
  if (!doc.acts.empty()) {
    Json acts = Json::array();
    for (const auto& act : doc.acts) acts.push_back(Json{{"name", act.name}, {"outcomes", act_json(doc, Act{act.outcomes})}});
    j["acts"] = std::move(acts);
  }
  return j;
}

Capacity build_capacity(const FrameDocument& doc) {
  const Scale scale(doc.scale_size);
  const int n = static_cast<int>(doc.states.size());
  if (doc.kind == CapacityKind::table) {
    std::map<Subset, Level> table;
    for (const auto& [a, level] : doc.capacity) table.emplace(a, scale.level(level));
    return validate_capacity(table, n, scale);
  }
  const PossibilityDistribution pi = make_distribution(scale, doc.pi);
  return doc.kind == CapacityKind::possibility ? possibility_capacity(pi) : necessity_capacity(pi);
}

DecisionFrame build_frame(const FrameDocument& doc) {
  const Scale scale(doc.scale_size);
  std::vector<Level> mu;
  for (int m : doc.mu) mu.push_back(scale.level(m));
  return DecisionFrame(scale, std::move(mu), build_capacity(doc));
}

Act resolve_act(const FrameDocument& doc, const Json& ref) {
  if (ref.is_string()) {
    const std::string name = ref.get<std::string>();
    for (const auto& act : doc.acts)
      if (act.name == name) return Act{act.outcomes};
    return resolve_act_text(doc, name);
  }
  return Act{outcome_list(doc, ref, "act")};
}

Act resolve_act_text(const FrameDocument& doc, const std::string& ref) {
  for (const auto& act : doc.acts)
    if (act.name == ref) return Act{act.outcomes};
  Json list = Json::array();
  std::stringstream in(ref);
  std::string part;
  while (std::getline(in, part, ',')) list.push_back(part);
  if (list.size() != doc.states.size())
    bad("act", "'" + ref + "' is neither a declared act nor a list of " +
                   std::to_string(doc.states.size()) + " outcome labels");
  return Act{outcome_list(doc, list, "act")};
}

Json act_json(const FrameDocument& doc, const Act& f) {
  Json out = Json::array();
  for (int x : f.outcomes) out.push_back(doc.outcomes[static_cast<std::size_t>(x)]);
  return out;
}

Json event_json(const FrameDocument& doc, Subset a) {
  Json out = Json::array();
  for (int s : members(a)) out.push_back(doc.states[static_cast<std::size_t>(s)]);
  return out;
}

std::string act_text(const FrameDocument& doc, const Act& f) {
  std::string out = "(";
  for (int s = 0; s < f.state_count(); ++s) {
    if (s) out += ",";
    out += doc.outcomes[static_cast<std::size_t>(f[s])];
  }
  return out + ")";
}

std::string event_text(const FrameDocument& doc, Subset a) {
  std::string out = "{";
  bool first = true;
  for (int s : members(a)) {
    if (!first) out += ",";
    out += doc.states[static_cast<std::size_t>(s)];
    first = false;
  }
  return out + "}";
}

LoadedRelation load_relation(const Json& json, const std::filesystem::path& base_dir, const Budget& budget) {
  if (!json.is_object()) bad("/", "relation document must be a JSON object");
  LoadedRelation out;
  const Json& frame_ref = member(json, "frame", "/");
  if (frame_ref.is_string()) {
    const auto path = base_dir / frame_ref.get<std::string>();
    try {
      out.frame_doc = parse_frame_text(read_text_file(path));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
  } else {
    out.frame_doc = parse_frame_document(frame_ref);
  }
  out.frame = build_frame(out.frame_doc);
  const ActSpace space = out.frame->act_space();

  const int forms = static_cast<int>(json.contains("induce")) + static_cast<int>(json.contains("ranks")) +
                    static_cast<int>(json.contains("weak_preferences"));
  if (forms != 1) bad("/", "exactly one of 'induce', 'ranks' or 'weak_preferences' is required");

  if (json.contains("induce")) {
    const std::string what = as_string(json.at("induce"), "/induce");
    if (what != "capacity") bad("/induce", "only the frame capacity can be induced ('capacity')");
    out.relation = induce_preorder(*out.frame, budget);
    return out;
  }

  if (json.contains("ranks")) {
    const Json& entries = json.at("ranks");
    if (!entries.is_array()) bad("/ranks", "expected an array");
    std::vector<std::uint64_t> acts;
    std::vector<int> ranks;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string where = "/ranks/" + std::to_string(i);
      const Act f = resolve_act(out.frame_doc, member(entries[i], "act", where));
      const std::uint64_t idx = space.index(f);
      if (std::find(acts.begin(), acts.end(), idx) != acts.end())
        bad(where + "/act", "act " + act_text(out.frame_doc, f) + " ranked twice");
      const int r = as_int(member(entries[i], "rank", where), where + "/rank");
      if (r < 0) bad(where + "/rank", "ranks are non-negative");
      acts.push_back(idx);
      ranks.push_back(r);
    }
    if (!out.frame_doc.acts.empty()) {
      // Rank entries must cover the declared acts exactly.
      std::vector<std::uint64_t> declared;
      for (const auto& named : out.frame_doc.acts) declared.push_back(space.index(Act{named.outcomes}));
      for (std::size_t i = 0; i < acts.size(); ++i)
        if (std::find(declared.begin(), declared.end(), acts[i]) == declared.end())
          bad("/ranks/" + std::to_string(i) + "/act",
              "act " + act_text(out.frame_doc, space.act(acts[i])) + " is not declared in the frame");
      for (const auto& named : out.frame_doc.acts)
        if (std::find(acts.begin(), acts.end(), space.index(Act{named.outcomes})) == acts.end())
          bad("/ranks", "declared act '" + named.name + "' has no rank");
    }
    out.relation.emplace(space, std::move(acts), std::move(ranks));
    out.relation = out.relation->with_frame(*out.frame);
    return out;
  }

  const Json& pairs = json.at("weak_preferences");
  if (!pairs.is_array()) bad("/weak_preferences", "expected an array");
  std::vector<std::uint64_t> acts;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> leq, less;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = "/weak_preferences/" + std::to_string(i);
    const auto worse = space.index(resolve_act(out.frame_doc, member(pairs[i], "worse", where)));
    const auto better = space.index(resolve_act(out.frame_doc, member(pairs[i], "better", where)));
    bool strict = false;
    if (pairs[i].contains("strict")) {
      if (!pairs[i].at("strict").is_boolean()) bad(where + "/strict", "expected true or false");
      strict = pairs[i].at("strict").get<bool>();
    }
    acts.push_back(worse);
    acts.push_back(better);
    (strict ? less : leq).emplace_back(worse, better);
  }
  for (const auto& named : out.frame_doc.acts) acts.push_back(space.index(Act{named.outcomes}));
  Compression c = compress_weak_preferences(space, std::move(acts), leq, less);
  out.sav1 = c.sav1;
  if (c.relation) out.relation = c.relation->with_frame(*out.frame);
  return out;
}

LoadedRelation load_relation_text(const std::string& text, const std::filesystem::path& base_dir,
                                  const Budget& budget) {
  return load_relation(parse_json_text(text), base_dir, budget);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qdt
