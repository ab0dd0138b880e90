#include "qdt/preference.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>

#include "qdt/errors.hpp"
#include "qdt/parallel.hpp"

namespace qdt {

namespace {

struct AxiomInfo {
  Axiom axiom;
  std::string_view id;
  std::string_view label;
};

constexpr std::array<AxiomInfo, 14> kAxioms{{
    {Axiom::sav1, "SAV1", "Sav 1"},
    {Axiom::sav2, "SAV2", "Sav 2"},
    {Axiom::sav3, "SAV3", "Sav 3"},
    {Axiom::sav4, "SAV4", "Sav 4"},
    {Axiom::sav4p, "SAV4P", "Sav 4'"},
    {Axiom::sav5, "SAV5", "Sav 5"},
    {Axiom::ws3, "WS3", "WS 3"},
    {Axiom::rcd, "RCD", "RCD"},
    {Axiom::rdd, "RDD", "RDD"},
    {Axiom::cd, "CD", "CD"},
    {Axiom::dd, "DD", "DD"},
    {Axiom::cod, "COD", "CoD"},
    {Axiom::optimism, "OPTIMISM", "Optimism"},
    {Axiom::pessimism, "PESSIMISM", "Pessimism"},
}};

const std::array<Axiom, 14> kAxiomList = [] {
  std::array<Axiom, 14> out{};
  for (std::size_t i = 0; i < kAxioms.size(); ++i) out[i] = kAxioms[i].axiom;
  return out;
}();

const AxiomInfo& info(Axiom axiom) {
  for (const auto& a : kAxioms)
    if (a.axiom == axiom) return a;
  fail(ErrorKind::internal, "unknown axiom");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Read-only view of a full relation with the act algebra precomputed. All
// tables are built up front so that searches can share one view across
// worker threads.
class Checker {
 public:
  explicit Checker(const PreferenceRelation& rel)
      : space_(rel.space()),
        n_(space_.size()),
        states_(space_.state_count()),
        outcomes_(space_.outcome_count()),
        events_(subset_count(states_)),
        rank_(rel.dense_ranks().begin(), rel.dense_ranks().end()) {
    order_.resize(static_cast<std::size_t>(outcomes_));
    constants_.resize(static_cast<std::size_t>(outcomes_));
    for (int x = 0; x < outcomes_; ++x) {
      constants_[static_cast<std::size_t>(x)] = space_.constant(x);
      order_[static_cast<std::size_t>(x)] = rank_[constants_[static_cast<std::size_t>(x)]];
    }
    digits_.resize(n_ * static_cast<std::uint64_t>(states_));
    for (std::uint64_t f = 0; f < n_; ++f)
      for (int s = 0; s < states_; ++s)
        digits_[f * static_cast<std::uint64_t>(states_) + static_cast<std::uint64_t>(s)] =
            static_cast<std::uint16_t>(space_.digit(f, s));
    if (saturating_mul(events_, n_) <= (std::uint64_t{1} << 22)) {
      proj_.resize(events_ * n_);
      for (Subset a = 0; a < events_; ++a)
        for (std::uint64_t f = 0; f < n_; ++f) proj_[a * n_ + f] = project_slow(a, f);
    }
    if (saturating_mul(n_, n_) <= (std::uint64_t{1} << 20)) {
      meet_.resize(n_ * n_);
      join_.resize(n_ * n_);
      for (std::uint64_t f = 0; f < n_; ++f)
        for (std::uint64_t g = 0; g < n_; ++g) {
          meet_[f * n_ + g] = combine_slow(f, g, false);
          join_[f * n_ + g] = combine_slow(f, g, true);
        }
    }
  }

  std::uint64_t acts() const { return n_; }
  int states() const { return states_; }
  int outcomes() const { return outcomes_; }
  std::uint64_t events() const { return events_; }

  int rank(std::uint64_t f) const { return rank_[f]; }
  bool le(std::uint64_t a, std::uint64_t b) const { return rank_[a] <= rank_[b]; }
  bool lt(std::uint64_t a, std::uint64_t b) const { return rank_[a] < rank_[b]; }
  bool eq(std::uint64_t a, std::uint64_t b) const { return rank_[a] == rank_[b]; }
  int order(std::uint64_t x) const { return order_[x]; }
  std::uint64_t constant(std::uint64_t x) const { return constants_[x]; }

  int digit(std::uint64_t f, int s) const {
    return digits_[f * static_cast<std::uint64_t>(states_) + static_cast<std::uint64_t>(s)];
  }

  std::uint64_t project(Subset a, std::uint64_t f) const {
    return proj_.empty() ? project_slow(a, f) : proj_[a * n_ + f];
  }

  // Index of fAg.
  std::uint64_t compound(std::uint64_t f, Subset a, std::uint64_t g) const {
    return project(a, f) + project(complement(a, states_), g);
  }

  std::uint64_t binary(std::uint64_t x, Subset a, std::uint64_t y) const {
    return compound(constants_[x], a, constants_[y]);
  }

  std::uint64_t meet(std::uint64_t f, std::uint64_t g) const {
    return meet_.empty() ? combine_slow(f, g, false) : meet_[f * n_ + g];
  }
  std::uint64_t join(std::uint64_t f, std::uint64_t g) const {
    return join_.empty() ? combine_slow(f, g, true) : join_[f * n_ + g];
  }

  bool comonotonic(std::uint64_t f, std::uint64_t g) const {
    for (int s = 0; s < states_; ++s)
      for (int t = 0; t < states_; ++t)
        if (order_[digit(f, s)] > order_[digit(f, t)] && order_[digit(g, s)] < order_[digit(g, t)])
          return false;
    return true;
  }

  // An event is null when fAh ~ gAh for all f, g, h: the rank of an act must
  // not depend on its values inside A.
  bool null_event(Subset a) const {
    for (std::uint64_t f = 0; f < n_; ++f)
      if (rank_[f] != rank_[f - project(a, f)]) return false;
    return true;
  }

  void prepare_null_events() {
    null_.resize(events_);
    for (Subset a = 0; a < events_; ++a) null_[a] = null_event(a) ? 1 : 0;
  }
  bool null_cached(Subset a) const { return null_[a] != 0; }

 private:
  std::uint64_t project_slow(Subset a, std::uint64_t f) const {
    std::uint64_t out = 0;
    for (int s = 0; s < states_; ++s)
      if (contains(a, s)) out += static_cast<std::uint64_t>(digit(f, s)) * space_.weight(s);
    return out;
  }

  std::uint64_t combine_slow(std::uint64_t f, std::uint64_t g, bool best) const {
    std::uint64_t out = 0;
    for (int s = 0; s < states_; ++s) {
      const int df = digit(f, s), dg = digit(g, s);
      const bool take_g = best ? order_[dg] > order_[df] : order_[dg] < order_[df];
      out += static_cast<std::uint64_t>(take_g ? dg : df) * space_.weight(s);
    }
    return out;
  }

  ActSpace space_;
  std::uint64_t n_;
  int states_;
  int outcomes_;
  std::uint64_t events_;
  std::vector<int> rank_;
  std::vector<int> order_;
  std::vector<std::uint64_t> constants_;
  std::vector<std::uint16_t> digits_;
  std::vector<std::uint64_t> proj_;
  std::vector<std::uint64_t> meet_;
  std::vector<std::uint64_t> join_;
  std::vector<unsigned char> null_;
};

struct Dim {
  std::string_view role;
  WitnessKind kind;
};

using Tuple = std::array<std::uint64_t, 6>;

// Quantified variables of each axiom in the order the formula states them.
std::vector<Dim> signature(Axiom axiom) {
  using K = WitnessKind;
  switch (axiom) {
    case Axiom::sav2:
      return {{"f", K::act}, {"g", K::act}, {"h", K::act}, {"h'", K::act}, {"A", K::event}};
    case Axiom::sav3:
      return {{"x", K::outcome}, {"y", K::outcome}, {"A", K::event}, {"h", K::act}};
    case Axiom::sav4:
      return {{"x", K::outcome}, {"y", K::outcome}, {"x'", K::outcome},
              {"y'", K::outcome}, {"A", K::event},  {"B", K::event}};
    case Axiom::sav4p:
      return {{"x", K::outcome}, {"x'", K::outcome}, {"y", K::outcome},
              {"y'", K::outcome}, {"A", K::event},   {"B", K::event}};
    case Axiom::ws3:
      return {{"x", K::outcome}, {"y", K::outcome}, {"B", K::event}, {"h", K::act}};
    case Axiom::rcd:
    case Axiom::rdd:
      return {{"f", K::act}, {"g", K::act}, {"y", K::outcome}};
    case Axiom::cd:
    case Axiom::dd:
      return {{"f", K::act}, {"g", K::act}, {"h", K::act}};
    case Axiom::cod:
      return {{"f", K::act}, {"g", K::act}};
    case Axiom::optimism:
    case Axiom::pessimism:
      return {{"f", K::act}, {"g", K::act}, {"A", K::event}};
    case Axiom::sav1:
    case Axiom::sav5:
      return {};
  }
  return {};
}

// Number of act-valued variables, which selects the default act budget.
int act_arity(Axiom axiom) {
  int n = 0;
  for (const Dim& d : signature(axiom)) n += d.kind == WitnessKind::act ? 1 : 0;
  return n;
}

std::uint64_t dim_size(const Dim& d, std::uint64_t acts, int outcomes, std::uint64_t events) {
  switch (d.kind) {
    case WitnessKind::act:
      return acts;
    case WitnessKind::outcome:
      return static_cast<std::uint64_t>(outcomes);
    case WitnessKind::event:
      return events;
  }
  return 0;
}

// 0 when the tuple satisfies the axiom, otherwise a clause number >= 1.
int violation(const Checker& c, Axiom axiom, const Tuple& t) {
  switch (axiom) {
    case Axiom::sav2: {
      const Subset a = static_cast<Subset>(t[4]);
      return c.le(c.compound(t[0], a, t[2]), c.compound(t[1], a, t[2])) &&
                     !c.le(c.compound(t[0], a, t[3]), c.compound(t[1], a, t[3]))
                 ? 1
                 : 0;
    }
    case Axiom::sav3: {
      const auto x = t[0], y = t[1], h = t[3];
      const Subset a = static_cast<Subset>(t[2]);
      if (c.null_cached(a)) return 0;
      const bool conditional = c.le(c.compound(c.constant(x), a, h), c.compound(c.constant(y), a, h));
      return conditional != (c.order(x) <= c.order(y)) ? 1 : 0;
    }
    case Axiom::sav4: {
      const auto x = t[0], y = t[1], x2 = t[2], y2 = t[3];
      if (!(c.order(x2) < c.order(x) && c.order(y2) < c.order(y))) return 0;
      const Subset a = static_cast<Subset>(t[4]), b = static_cast<Subset>(t[5]);
      return c.le(c.binary(x, a, x2), c.binary(x, b, x2)) !=
                     c.le(c.binary(y, a, y2), c.binary(y, b, y2))
                 ? 1
                 : 0;
    }
    case Axiom::sav4p: {
      const auto x = t[0], x2 = t[1], y = t[2], y2 = t[3];
      if (!(c.order(x) > c.order(x2) && c.order(y) > c.order(y2))) return 0;
      const Subset a = static_cast<Subset>(t[4]), b = static_cast<Subset>(t[5]);
      const bool x_strict = c.lt(c.binary(x, a, x2), c.binary(x, b, x2));
      const bool y_strict = c.lt(c.binary(y, a, y2), c.binary(y, b, y2));
      const bool y_reversed = c.lt(c.binary(y, b, y2), c.binary(y, a, y2));
      // A strict preference between bets at stakes (x, x') is never reversed
      // at stakes (y, y').
      if (x_strict && y_reversed) return 1;
      // With x ≥ y > y' ≥ x', strictness at the inner stakes carries over to
      // the outer stakes.
      if (c.order(x) >= c.order(y) && c.order(y2) >= c.order(x2) && y_strict && !x_strict) return 2;
      return 0;
    }
    case Axiom::ws3: {
      const auto x = t[0], y = t[1], h = t[3];
      const Subset b = static_cast<Subset>(t[2]);
      return c.order(x) <= c.order(y) &&
                     !c.le(c.compound(c.constant(x), b, h), c.compound(c.constant(y), b, h))
                 ? 1
                 : 0;
    }
    case Axiom::rcd: {
      const auto f = t[0], g = t[1], y = c.constant(t[2]);
      return c.lt(f, g) && c.lt(f, y) && !c.lt(f, c.meet(g, y)) ? 1 : 0;
    }
    case Axiom::rdd: {
      const auto f = t[0], g = t[1], y = c.constant(t[2]);
      return c.lt(g, f) && c.lt(y, f) && !c.lt(c.join(g, y), f) ? 1 : 0;
    }
    case Axiom::cd: {
      const auto f = t[0], g = t[1], h = t[2];
      return c.lt(f, g) && c.lt(f, h) && !c.lt(f, c.meet(g, h)) ? 1 : 0;
    }
    case Axiom::dd: {
      const auto f = t[0], g = t[1], h = t[2];
      return c.lt(g, f) && c.lt(h, f) && !c.lt(c.join(g, h), f) ? 1 : 0;
    }
    case Axiom::cod: {
      const auto f = t[0], g = t[1];
      const auto up = c.join(f, g), down = c.meet(f, g);
      const bool join_fails = c.lt(f, up) && !c.eq(up, g);
      const bool meet_fails = c.lt(down, f) && !c.eq(down, g);
      if (!join_fails && !meet_fails) return 0;
      if (!c.comonotonic(f, g)) return 0;
      return join_fails ? 1 : 2;
    }
    case Axiom::optimism: {
      const auto f = t[0], g = t[1];
      const Subset a = static_cast<Subset>(t[2]);
      return c.lt(c.compound(f, a, g), f) && !c.le(f, c.compound(g, a, f)) ? 1 : 0;
    }
    case Axiom::pessimism: {
      const auto f = t[0], g = t[1];
      const Subset a = static_cast<Subset>(t[2]);
      return c.lt(f, c.compound(f, a, g)) && !c.le(c.compound(g, a, f), f) ? 1 : 0;
    }
    case Axiom::sav1:
    case Axiom::sav5:
      return 0;
  }
  return 0;
}

std::string clause_name(Axiom axiom, int clause) {
  switch (axiom) {
    case Axiom::sav4p:
      return clause == 1 ? "strict preference reversed at other stakes"
                         : "strictness lost at wider stakes";
    case Axiom::cod:
      return clause == 1 ? "join" : "meet";
    default:
      return {};
  }
}

Witness make_witness(Axiom axiom, const std::vector<Dim>& dims, const Tuple& t, int clause) {
  Witness w;
  for (std::size_t i = 0; i < dims.size(); ++i)
    w.items.push_back({std::string(dims[i].role), dims[i].kind, t[i]});
  w.clause = clause_name(axiom, clause);
  return w;
}

std::optional<Witness> exhaustive_search(const Checker& c, Axiom axiom, unsigned threads) {
  const auto dims = signature(axiom);
  std::vector<std::uint64_t> sizes;
  for (const Dim& d : dims) sizes.push_back(dim_size(d, c.acts(), c.outcomes(), c.events()));
  if (std::find(sizes.begin(), sizes.end(), 0u) != sizes.end()) return std::nullopt;

  auto scan = [&](std::uint64_t outer) -> std::optional<Witness> {
    Tuple t{};
    t[0] = outer;
    const std::size_t depth = dims.size();
    while (true) {
      if (int clause = violation(c, axiom, t)) return make_witness(axiom, dims, t, clause);
      std::size_t k = depth - 1;
      while (k >= 1) {
        if (++t[k] < sizes[k]) break;
        t[k] = 0;
        --k;
      }
      if (k == 0) return std::nullopt;
    }
  };
  return find_first<Witness>(sizes[0], threads, scan);
}

// Sav 2 and its strict variant. For fixed (f, g, A) the premise and the
// conclusion depend on different acts, so the least (h, h') pair is found by
// two independent scans; the least (h, h', A) over A is then the
// lexicographically first witness for (f, g).
std::optional<Witness> sure_thing_search(const Checker& c, bool strict, unsigned threads) {
  const std::uint64_t n = c.acts();
  const std::uint64_t events = c.events();
  auto premise = [&](std::uint64_t f, std::uint64_t g, Subset a, std::uint64_t h) {
    const auto fa = c.compound(f, a, h), ga = c.compound(g, a, h);
    return strict ? c.lt(fa, ga) : c.le(fa, ga);
  };
  auto reversal = [&](std::uint64_t f, std::uint64_t g, Subset a, std::uint64_t h) {
    return c.lt(c.compound(g, a, h), c.compound(f, a, h));
  };

  auto scan = [&](std::uint64_t f) -> std::optional<Witness> {
    for (std::uint64_t g = 0; g < n; ++g) {
      std::optional<std::array<std::uint64_t, 3>> best;
      for (Subset a = 0; a < events; ++a) {
        std::uint64_t h = 0;
        while (h < n && !premise(f, g, a, h)) ++h;
        if (h == n) continue;
        std::uint64_t h2 = 0;
        while (h2 < n && !reversal(f, g, a, h2)) ++h2;
        if (h2 == n) continue;
        const std::array<std::uint64_t, 3> cand{h, h2, a};
        if (!best || cand < *best) best = cand;
      }
      if (best) {
        const Tuple t{f, g, (*best)[0], (*best)[1], (*best)[2], 0};
        return make_witness(Axiom::sav2, signature(Axiom::sav2), t, 1);
      }
    }
    return std::nullopt;
  };
  return find_first<Witness>(n, threads, scan);
}

void require_full(const PreferenceRelation& rel, std::string_view what) {
  if (!rel.is_full())
    fail(ErrorKind::precondition,
         std::string(what) + " quantifies over all acts; the relation only ranks a declared subset");
}

void enforce_budget(const PreferenceRelation& rel, Axiom axiom, const Budget& budget) {
  const std::uint64_t space = quantifier_space(rel, axiom);
  if (budget.max_tuples) {
    if (space > *budget.max_tuples)
      throw BudgetExceeded(space, *budget.max_tuples,
                           std::string(axiom_label(axiom)) + " check needs " + std::to_string(space) +
                               " quantified tuples, budget is " + std::to_string(*budget.max_tuples));
    return;
  }
  if (axiom == Axiom::sav1 || axiom == Axiom::sav5) return;
  const std::uint64_t limit = act_arity(axiom) >= 4 ? budget.four_act_acts : budget.three_act_acts;
  if (rel.space().size() > limit)
    throw BudgetExceeded(space, limit,
                         std::string(axiom_label(axiom)) + " check over " +
                             std::to_string(rel.space().size()) + " acts exceeds the " +
                             std::to_string(limit) + "-act budget (quantifier space " +
                             std::to_string(space) + ")");
}

AxiomVerdict check_sav5(const PreferenceRelation& rel) {
  const auto order = induced_outcome_order(rel);
  AxiomVerdict v{Axiom::sav5, true, std::nullopt};
  if (*std::max_element(order.begin(), order.end()) == 0) {
    v.holds = false;
    Witness w;
    for (int x = 0; x < rel.space().outcome_count(); ++x)
      w.items.push_back({"x", WitnessKind::outcome, static_cast<std::uint64_t>(x)});
    w.clause = "all constant acts indifferent";
    v.witness = std::move(w);
  }
  return v;
}

}  // namespace

std::string_view axiom_id(Axiom axiom) { return info(axiom).id; }
std::string_view axiom_label(Axiom axiom) { return info(axiom).label; }

std::optional<Axiom> parse_axiom(std::string_view text) {
  std::string upper;
  for (char ch : text)
    if (ch != ' ' && ch != '_' && ch != '-') upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (upper == "SAV4'") upper = "SAV4P";
  for (const auto& a : kAxioms)
    if (upper == a.id) return a.axiom;
  return std::nullopt;
}

std::span<const Axiom> all_axioms() { return kAxiomList; }

std::uint64_t Witness::value(std::string_view role) const {
  for (const auto& item : items)
    if (item.role == role) return item.value;
  fail(ErrorKind::invalid_argument, "witness has no component named " + std::string(role));
}

Budget Budget::from_environment() {
  Budget b;
  if (const char* env = std::getenv("QDT_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      fail(ErrorKind::invalid_argument, "QDT_BUDGET must be a non-negative integer, got '" +
                                            std::string(env) + "'");
    b.max_tuples = static_cast<std::uint64_t>(v);
  }
  return b;
}

PreferenceRelation::PreferenceRelation(ActSpace space, std::vector<int> ranks)
    : space_(space), full_(true), ranks_(std::move(ranks)) {
  if (ranks_.size() != space_.size())
    fail(ErrorKind::invalid_argument, "rank table has " + std::to_string(ranks_.size()) +
                                          " entries for " + std::to_string(space_.size()) + " acts");
  for (int r : ranks_)
    if (r < 0) fail(ErrorKind::invalid_argument, "ranks must be non-negative");
}

PreferenceRelation::PreferenceRelation(ActSpace space, std::vector<std::uint64_t> acts,
                                       std::vector<int> ranks)
    : space_(space), full_(false) {
  if (acts.size() != ranks.size())
    fail(ErrorKind::invalid_argument, "acts and ranks differ in length");
  std::vector<std::size_t> perm(acts.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return acts[a] < acts[b]; });
  for (std::size_t i : perm) {
    if (acts[i] >= space_.size()) fail(ErrorKind::invalid_argument, "act index out of range");
    if (ranks[i] < 0) fail(ErrorKind::invalid_argument, "ranks must be non-negative");
    if (!acts_.empty() && acts_.back() == acts[i])
      fail(ErrorKind::invalid_argument, "act " + std::to_string(acts[i]) + " ranked twice");
    acts_.push_back(acts[i]);
    ranks_.push_back(ranks[i]);
  }
  if (acts_.size() == space_.size()) {
    full_ = true;
    acts_.clear();
  }
}

std::optional<int> PreferenceRelation::rank(std::uint64_t act) const {
  if (full_) {
    if (act >= ranks_.size()) return std::nullopt;
    return ranks_[act];
  }
  auto it = std::lower_bound(acts_.begin(), acts_.end(), act);
  if (it == acts_.end() || *it != act) return std::nullopt;
  return ranks_[static_cast<std::size_t>(it - acts_.begin())];
}

int PreferenceRelation::rank_of(std::uint64_t act) const {
  if (auto r = rank(act)) return *r;
  fail(ErrorKind::invalid_argument, "act " + std::to_string(act) + " is not ranked by the relation");
}

std::span<const int> PreferenceRelation::dense_ranks() const {
  if (!full_) fail(ErrorKind::precondition, "relation does not rank the full act space");
  return ranks_;
}

PreferenceRelation PreferenceRelation::with_frame(DecisionFrame frame) const {
  if (!(frame.act_space() == space_))
    fail(ErrorKind::frame_mismatch, "frame and relation disagree on states or outcomes");
  PreferenceRelation out = *this;
  out.frame_ = std::move(frame);
  return out;
}

Compression compress_weak_preferences(ActSpace space, std::vector<std::uint64_t> acts,
                                      std::span<const std::pair<std::uint64_t, std::uint64_t>> leq,
                                      std::span<const std::pair<std::uint64_t, std::uint64_t>> less) {
  std::sort(acts.begin(), acts.end());
  acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
  const std::size_t k = acts.size();
  auto pos = [&](std::uint64_t act) {
    auto it = std::lower_bound(acts.begin(), acts.end(), act);
    if (it == acts.end() || *it != act)
      fail(ErrorKind::invalid_argument, "preference names undeclared act " + std::to_string(act));
    return static_cast<std::size_t>(it - acts.begin());
  };
  // Edge i -> j means acts[i] is weakly below acts[j].
  std::vector<std::vector<std::size_t>> up(k);
  for (const auto& [lhs, rhs] : leq) up[pos(lhs)].push_back(pos(rhs));
  for (const auto& [lhs, rhs] : less) up[pos(lhs)].push_back(pos(rhs));
  for (auto& edges : up) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  // Strongly connected components (iterative Tarjan) are indifference classes.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(k, none), low(k, 0), comp(k, none), stack;
  std::vector<bool> on_stack(k, false);
  std::size_t counter = 0, components = 0;
  for (std::size_t root = 0; root < k; ++root) {
    if (index[root] != none) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next < up[v].size()) {
        const std::size_t w = up[v][next++];
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }

  Compression out;
  out.sav1.axiom = Axiom::sav1;

  // A strict step inside a class closes a cycle through it.
  for (const auto& [lhs, rhs] : less) {
    const std::size_t a = pos(lhs), b = pos(rhs);
    if (comp[a] != comp[b]) continue;
    // Shortest path b -> a; the cycle is a < b <= ... <= a.
    std::vector<std::size_t> parent(k, none);
    std::vector<std::size_t> queue{b};
    parent[b] = b;
    for (std::size_t q = 0; q < queue.size() && parent[a] == none; ++q)
      for (std::size_t w : up[queue[q]])
        if (parent[w] == none) {
          parent[w] = queue[q];
          queue.push_back(w);
        }
    std::vector<std::size_t> path{a};
    while (path.back() != b) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());  // b ... a
    Witness w;
    w.clause = "strict cycle";
    w.items.push_back({"f1", WitnessKind::act, acts[a]});
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      w.items.push_back({"f" + std::to_string(i + 2), WitnessKind::act, acts[path[i]]});
    out.sav1.holds = false;
    out.sav1.witness = std::move(w);
    return out;
  }

  // Order classes topologically, least act index first among ready classes.
  std::vector<std::size_t> first(components, none);
  for (std::size_t i = 0; i < k; ++i)
    if (first[comp[i]] == none) first[comp[i]] = i;
  std::vector<std::vector<std::size_t>> dag(components);
  std::vector<std::size_t> indegree(components, 0);
  for (std::size_t v = 0; v < k; ++v)
    for (std::size_t w : up[v])
      if (comp[v] != comp[w]) dag[comp[v]].push_back(comp[w]);
  for (auto& edges : dag) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (std::size_t c : edges) ++indegree[c];
  }
  auto later = [&](std::size_t x, std::size_t y) { return first[x] > first[y]; };
  std::vector<std::size_t> ready;
  for (std::size_t c = 0; c < components; ++c)
    if (indegree[c] == 0) ready.push_back(c);
  std::make_heap(ready.begin(), ready.end(), later);
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), later);
    const std::size_t c = ready.back();
    ready.pop_back();
    topo.push_back(c);
    for (std::size_t d : dag[c])
      if (--indegree[d] == 0) {
        ready.push_back(d);
        std::push_heap(ready.begin(), ready.end(), later);
      }
  }

  // The closure is complete iff consecutive classes are directly linked.
  for (std::size_t i = 0; i + 1 < topo.size(); ++i) {
    const auto& edges = dag[topo[i]];
    if (!std::binary_search(edges.begin(), edges.end(), topo[i + 1])) {
      std::uint64_t f = acts[first[topo[i]]], g = acts[first[topo[i + 1]]];
      if (f > g) std::swap(f, g);
      out.sav1.holds = false;
      out.sav1.witness = Witness{{{"f", WitnessKind::act, f}, {"g", WitnessKind::act, g}}, "incomparable"};
      return out;
    }
  }

  std::vector<int> class_rank(components, 0);
  for (std::size_t i = 0; i < topo.size(); ++i) class_rank[topo[i]] = static_cast<int>(i);
  std::vector<int> ranks(k);
  for (std::size_t i = 0; i < k; ++i) ranks[i] = class_rank[comp[i]];
  out.relation.emplace(space, std::move(acts), std::move(ranks));
  return out;
}

std::vector<int> induced_outcome_order(const PreferenceRelation& rel) {
  const int outcomes = rel.space().outcome_count();
  std::vector<int> raw(static_cast<std::size_t>(outcomes));
  for (int x = 0; x < outcomes; ++x) {
    const auto r = rel.rank(rel.space().constant(x));
    if (!r)
      fail(ErrorKind::precondition,
           "constant act of outcome " + std::to_string(x) + " is missing from the relation");
    raw[static_cast<std::size_t>(x)] = *r;
  }
  std::vector<int> distinct = raw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (int& r : raw)
    r = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), r) - distinct.begin());
  return raw;
}

LikelihoodRelation::LikelihoodRelation(int state_count)
    : states_(state_count), cells_(subset_count(state_count) * subset_count(state_count), 0) {
  if (state_count < 1 || state_count > 12)
    fail(ErrorKind::invalid_argument, "likelihood relations are limited to 12 states");
}

std::optional<std::pair<Subset, Subset>> LikelihoodRelation::incomparable_pair() const {
  const Subset count = static_cast<Subset>(subset_count(states_));
  for (Subset a = 0; a < count; ++a)
    for (Subset b = a + 1; b < count; ++b)
      if (!leq(a, b) && !leq(b, a)) return std::pair{a, b};
  return std::nullopt;
}

LikelihoodReport induced_likelihood(const PreferenceRelation& rel) {
  require_full(rel, "the likelihood relation");
  const Checker c(rel);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stakes;  // (x, y) with y < x
  for (int x = 0; x < c.outcomes(); ++x)
    for (int y = 0; y < c.outcomes(); ++y)
      if (c.order(static_cast<std::uint64_t>(y)) < c.order(static_cast<std::uint64_t>(x)))
        stakes.emplace_back(x, y);
  if (stakes.empty())
    fail(ErrorKind::precondition,
         "likelihood is undefined: no strictly preferred outcome pair (Sav 5 fails)");

  LikelihoodReport report{LikelihoodRelation(c.states()), {}};
  for (Subset a = 0; a < c.events(); ++a)
    for (Subset b = 0; b < c.events(); ++b) {
      std::optional<std::pair<std::uint64_t, std::uint64_t>> yes, no;
      for (const auto& [x, y] : stakes) {
        const bool le = c.le(c.binary(x, a, y), c.binary(x, b, y));
        if (le && !yes) yes = std::pair{x, y};
        if (!le && !no) no = std::pair{x, y};
      }
      report.relation.set(a, b, !no);
      if (yes && no)
        report.disagreements.push_back(Witness{{{"x", WitnessKind::outcome, yes->first},
                                                {"y", WitnessKind::outcome, yes->second},
                                                {"x'", WitnessKind::outcome, no->first},
                                                {"y'", WitnessKind::outcome, no->second},
                                                {"A", WitnessKind::event, a},
                                                {"B", WitnessKind::event, b}},
                                               "stakes disagree"});
    }
  return report;
}

LikelihoodRelation likelihood_from_capacity(const Capacity& sigma) {
  LikelihoodRelation out(sigma.state_count());
  const Subset count = static_cast<Subset>(subset_count(sigma.state_count()));
  for (Subset a = 0; a < count; ++a)
    for (Subset b = 0; b < count; ++b) out.set(a, b, sigma(a) <= sigma(b));
  return out;
}

bool is_null_event(const PreferenceRelation& rel, Subset a) {
  require_full(rel, "null-event detection");
  a &= full_set(rel.space().state_count());
  const auto ranks = rel.dense_ranks();
  const ActSpace& sp = rel.space();
  for (std::uint64_t f = 0; f < sp.size(); ++f) {
    std::uint64_t inside = 0;
    for (int s = 0; s < sp.state_count(); ++s)
      if (contains(a, s)) inside += static_cast<std::uint64_t>(sp.digit(f, s)) * sp.weight(s);
    if (ranks[f] != ranks[f - inside]) return false;
  }
  return true;
}

bool conditional_leq(const PreferenceRelation& rel, std::uint64_t f, std::uint64_t g, Subset a,
                     std::uint64_t h) {
  const ActSpace& sp = rel.space();
  const Act hf = sp.act(h);
  return rel.weakly_prefers(sp.index(compound_act(sp.act(f), a, hf)),
                            sp.index(compound_act(sp.act(g), a, hf)));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> conditional_ambiguity(
    const PreferenceRelation& rel, std::uint64_t f, std::uint64_t g, Subset a) {
  require_full(rel, "conditional preference");
  std::optional<std::uint64_t> yes, no;
  for (std::uint64_t h = 0; h < rel.space().size(); ++h) {
    (conditional_leq(rel, f, g, a, h) ? yes : no).emplace(h);
    if (yes && no) return std::pair{*yes, *no};
  }
  return std::nullopt;
}

std::uint64_t quantifier_space(const PreferenceRelation& rel, Axiom axiom) {
  if (axiom == Axiom::sav1) return 1;
  if (axiom == Axiom::sav5) return static_cast<std::uint64_t>(rel.space().outcome_count());
  std::uint64_t space = 1;
  for (const Dim& d : signature(axiom))
    space = saturating_mul(space, dim_size(d, rel.space().size(), rel.space().outcome_count(),
                                           subset_count(rel.space().state_count())));
  return space;
}

AxiomVerdict check_axiom(const PreferenceRelation& rel, Axiom axiom, const Budget& budget) {
  // A rank function is a complete preorder; pairwise data is screened by
  // compress_weak_preferences before it becomes a relation.
  if (axiom == Axiom::sav1) return {Axiom::sav1, true, std::nullopt};
  enforce_budget(rel, axiom, budget);
  if (axiom == Axiom::sav5) return check_sav5(rel);
  require_full(rel, axiom_label(axiom));

  Checker c(rel);
  if (axiom == Axiom::sav3) c.prepare_null_events();
  std::optional<Witness> w = axiom == Axiom::sav2 ? sure_thing_search(c, false, budget.threads)
                                                  : exhaustive_search(c, axiom, budget.threads);
  AxiomVerdict v{axiom, !w.has_value(), std::move(w)};
  return v;
}

bool replay_witness(const PreferenceRelation& rel, Axiom axiom, const Witness& witness) {
  if (axiom == Axiom::sav1) return false;
  if (axiom == Axiom::sav5) {
    const auto order = induced_outcome_order(rel);
    return *std::max_element(order.begin(), order.end()) == 0;
  }
  require_full(rel, axiom_label(axiom));
  const auto dims = signature(axiom);
  if (witness.items.size() != dims.size()) return false;
  Checker c(rel);
  if (axiom == Axiom::sav3) c.prepare_null_events();
  Tuple t{};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (witness.items[i].kind != dims[i].kind) return false;
    if (witness.items[i].value >= dim_size(dims[i], c.acts(), c.outcomes(), c.events())) return false;
    t[i] = witness.items[i].value;
  }
  return violation(c, axiom, t) != 0;
}

std::optional<Witness> find_strict_sure_thing_violation(const PreferenceRelation& rel,
                                                        const Budget& budget) {
  require_full(rel, "the sure-thing search");
  enforce_budget(rel, Axiom::sav2, budget);
  const Checker c(rel);
  auto w = sure_thing_search(c, true, budget.threads);
  if (w) w->clause = "strict reversal";
  return w;
}

namespace {

ComparativeVerdict common_structure(const LikelihoodRelation& rel) {
  if (auto pair = rel.incomparable_pair())
    fail(ErrorKind::precondition, "likelihood relation is partial: events " +
                                      std::to_string(pair->first) + " and " +
                                      std::to_string(pair->second) + " are incomparable");
  const Subset count = static_cast<Subset>(subset_count(rel.state_count()));
  const Subset full = full_set(rel.state_count());
  for (Subset a = 0; a < count; ++a)
    for (Subset b = 0; b < count; ++b) {
      if (!rel.leq(a, b)) continue;
      for (Subset c = 0; c < count; ++c)
        if (rel.leq(b, c) && !rel.leq(a, c)) return {false, "A1", {a, b, c}};
    }
  if (rel.leq(full, 0)) return {false, "A2", {0, full}};
  for (Subset a = 0; a < count; ++a)
    if (!rel.leq(0, a)) return {false, "A3", {a}};
  return {};
}

}  // namespace

ComparativeVerdict is_comparative_possibility(const LikelihoodRelation& rel) {
  if (auto v = common_structure(rel); !v.holds) return v;
  const Subset count = static_cast<Subset>(subset_count(rel.state_count()));
  for (Subset a = 0; a < count; ++a)
    for (Subset b = 0; b < count; ++b)
      for (Subset c = 0; c < count; ++c)
        if (rel.leq(b, c) && !rel.leq(a | b, a | c)) return {false, "Pi", {a, b, c}};
  return {};
}

ComparativeVerdict is_comparative_probability(const LikelihoodRelation& rel) {
  if (auto v = common_structure(rel); !v.holds) return v;
  const Subset count = static_cast<Subset>(subset_count(rel.state_count()));
  for (Subset a = 0; a < count; ++a)
    for (Subset b = 0; b < count; ++b)
      for (Subset c = 0; c < count; ++c) {
        if ((a & (b | c)) != 0) continue;
        if (rel.leq(b, c) != rel.leq(a | b, a | c)) return {false, "P", {a, b, c}};
      }
  return {};
}

}  // namespace qdt
