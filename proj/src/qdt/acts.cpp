#include "qdt/acts.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qdt/errors.hpp"

namespace qdt {

ActSpace::ActSpace(int state_count, int outcome_count)
    : states_(state_count), outcomes_(outcome_count), size_(1) {
  if (state_count < 1 || state_count > kMaxStates)
    fail(ErrorKind::invalid_argument, "state count must lie in 1.." + std::to_string(kMaxStates));
  if (outcome_count < 1) fail(ErrorKind::invalid_argument, "need at least one outcome");
  weights_.assign(static_cast<std::size_t>(state_count), 1);
  for (int s = state_count - 1; s >= 0; --s) {
    weights_[static_cast<std::size_t>(s)] = size_;
    if (size_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(outcome_count))
      fail(ErrorKind::invalid_argument, "act space too large to index");
    size_ *= static_cast<std::uint64_t>(outcome_count);
  }
}

Act ActSpace::act(std::uint64_t index) const {
  if (index >= size_) fail(ErrorKind::invalid_argument, "act index out of range");
  Act f;
  f.outcomes.resize(static_cast<std::size_t>(states_));
  for (int s = 0; s < states_; ++s) f.outcomes[static_cast<std::size_t>(s)] = digit(index, s);
  return f;
}

std::uint64_t ActSpace::index(const Act& f) const {
  if (f.state_count() != states_)
    fail(ErrorKind::frame_mismatch, "act has " + std::to_string(f.state_count()) +
                                        " states, expected " + std::to_string(states_));
  std::uint64_t idx = 0;
  for (int s = 0; s < states_; ++s) {
    if (f[s] < 0 || f[s] >= outcomes_)
      fail(ErrorKind::frame_mismatch, "outcome index " + std::to_string(f[s]) + " out of range");
    idx += static_cast<std::uint64_t>(f[s]) * weight(s);
  }
  return idx;
}

std::uint64_t ActSpace::constant(int outcome) const {
  return index(constant_act(states_, outcome));
}

DecisionFrame::DecisionFrame(Scale scale, std::vector<Level> mu, Capacity capacity)
    : scale_(scale), mu_(std::move(mu)), capacity_(std::move(capacity)) {
  if (mu_.empty()) fail(ErrorKind::invalid_argument, "frame needs at least one outcome");
  if (!(capacity_.scale() == scale_))
    fail(ErrorKind::frame_mismatch, "capacity scale differs from the frame scale");
  bool has_top = false, has_bottom = false;
  for (const Level& l : mu_) {
    if (!scale_.contains(l)) fail(ErrorKind::invalid_argument, "utility level outside the scale");
    has_top = has_top || l == scale_.top();
    has_bottom = has_bottom || l == scale_.bottom();
    mu_ranks_.push_back(l.rank());
  }
  if (!has_top || !has_bottom)
    fail(ErrorKind::invalid_argument,
         "utility must attain both the top and the bottom level (add ideal/worst outcomes)");
}

DecisionFrame DecisionFrame::with_capacity(Capacity capacity) const {
  return DecisionFrame(scale_, mu_, std::move(capacity));
}

void DecisionFrame::check_act(const Act& f) const {
  if (f.state_count() != state_count())
    fail(ErrorKind::frame_mismatch, "act has " + std::to_string(f.state_count()) +
                                        " states, frame has " + std::to_string(state_count()));
  for (int x : f.outcomes)
    if (x < 0 || x >= outcome_count())
      fail(ErrorKind::frame_mismatch, "outcome index " + std::to_string(x) + " out of range");
}

int DecisionFrame::best_outcome() const {
  return static_cast<int>(std::max_element(mu_ranks_.begin(), mu_ranks_.end(),
                                            [](int a, int b) { return a < b; }) -
                          mu_ranks_.begin());
}

int DecisionFrame::worst_outcome() const {
  return static_cast<int>(std::min_element(mu_ranks_.begin(), mu_ranks_.end()) -
                          mu_ranks_.begin());
}

Act constant_act(int state_count, int outcome) {
  return Act{std::vector<int>(static_cast<std::size_t>(state_count), outcome)};
}

Act compound_act(const Act& f, Subset a, const Act& g) {
  if (f.state_count() != g.state_count())
    fail(ErrorKind::frame_mismatch, "compound of acts over different state spaces");
  Act out = g;
  for (int s = 0; s < f.state_count(); ++s)
    if (contains(a, s)) out.outcomes[static_cast<std::size_t>(s)] = f[s];
  return out;
}

Act binary_act(int state_count, int x, Subset a, int y) {
  return compound_act(constant_act(state_count, x), a, constant_act(state_count, y));
}

Act binary_act(const DecisionFrame& frame, int x, Subset a, int y) {
  if (x < 0 || x >= frame.outcome_count() || y < 0 || y >= frame.outcome_count())
    fail(ErrorKind::invalid_argument, "outcome index out of range");
  return binary_act(frame.state_count(), x, a & full_set(frame.state_count()), y);
}

Act pointwise_combine(std::span<const int> order, const Act& f, const Act& g, Combine mode) {
  if (f.state_count() != g.state_count())
    fail(ErrorKind::frame_mismatch, "combining acts over different state spaces");
  Act out = f;
  for (int s = 0; s < f.state_count(); ++s) {
    const int of = order[static_cast<std::size_t>(f[s])];
    const int og = order[static_cast<std::size_t>(g[s])];
    const bool take_g = mode == Combine::worst ? og < of : og > of;
    if (take_g) out.outcomes[static_cast<std::size_t>(s)] = g[s];
  }
  return out;
}

bool pointwise_leq(std::span<const int> order, const Act& f, const Act& g) {
  for (int s = 0; s < f.state_count(); ++s)
    if (order[static_cast<std::size_t>(f[s])] > order[static_cast<std::size_t>(g[s])])
      return false;
  return true;
}

bool is_comonotonic(std::span<const int> order, const Act& f, const Act& g) {
  const auto u = [&](const Act& a, int s) { return order[static_cast<std::size_t>(a[s])]; };
  for (int s = 0; s < f.state_count(); ++s)
    for (int t = 0; t < f.state_count(); ++t)
      if (u(f, s) > u(f, t) && u(g, s) < u(g, t)) return false;
  return true;
}

Subset level_set(std::span<const int> order, const Act& f, int threshold) {
  Subset out = 0;
  for (int s = 0; s < f.state_count(); ++s)
    if (order[static_cast<std::size_t>(f[s])] >= threshold) out |= singleton(s);
  return out;
}

Act compound_act(const DecisionFrame& frame, const Act& f, Subset a, const Act& g) {
  frame.check_act(f);
  frame.check_act(g);
  return compound_act(f, a, g);
}

Act pointwise_combine(const DecisionFrame& frame, const Act& f, const Act& g, Combine mode) {
  frame.check_act(f);
  frame.check_act(g);
  return pointwise_combine(frame.mu_ranks(), f, g, mode);
}

bool pointwise_leq(const DecisionFrame& frame, const Act& f, const Act& g) {
  frame.check_act(f);
  frame.check_act(g);
  return pointwise_leq(frame.mu_ranks(), f, g);
}

bool is_comonotonic(const DecisionFrame& frame, const Act& f, const Act& g) {
  frame.check_act(f);
  frame.check_act(g);
  return is_comonotonic(frame.mu_ranks(), f, g);
}

Subset level_set(const DecisionFrame& frame, const Act& f, Level threshold) {
  frame.check_act(f);
  if (!frame.scale().contains(threshold))
    fail(ErrorKind::frame_mismatch, "threshold level is not on the frame scale");
  return level_set(frame.mu_ranks(), f, threshold.rank());
}

}  // namespace qdt
