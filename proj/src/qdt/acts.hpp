#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdt/capacity.hpp"
#include "qdt/scale.hpp"
#include "qdt/subset.hpp"

namespace qdt {

// An act f: S -> X, one outcome index per state.
struct Act {
  std::vector<int> outcomes;

  int operator[](int state) const { return outcomes[static_cast<std::size_t>(state)]; }
  int state_count() const noexcept { return static_cast<int>(outcomes.size()); }
  bool operator==(const Act&) const = default;
  auto operator<=>(const Act&) const = default;
};

// The full act set X^S, enumerated lexicographically over outcome sequences
// with state 0 most significant. Act indices are positions in that order.
class ActSpace {
 public:
  ActSpace(int state_count, int outcome_count);

  int state_count() const noexcept { return states_; }
  int outcome_count() const noexcept { return outcomes_; }
  std::uint64_t size() const noexcept { return size_; }

  Act act(std::uint64_t index) const;
  std::uint64_t index(const Act& f) const;
  std::uint64_t constant(int outcome) const;
  // Place value of state s in an act index.
  std::uint64_t weight(int state) const { return weights_[static_cast<std::size_t>(state)]; }
  int digit(std::uint64_t index, int state) const {
    return static_cast<int>((index / weight(state)) % static_cast<std::uint64_t>(outcomes_));
  }

  bool operator==(const ActSpace& o) const {
    return states_ == o.states_ && outcomes_ == o.outcomes_;
  }

 private:
  int states_;
  int outcomes_;
  std::uint64_t size_;
  std::vector<std::uint64_t> weights_;
};

// Evaluation context: states, outcomes with utility μ: X -> L, and σ.
class DecisionFrame {
 public:
  // Requires 0_L and 1_L in μ(X) and a capacity on the same scale and states.
  DecisionFrame(Scale scale, std::vector<Level> mu, Capacity capacity);

  const Scale& scale() const noexcept { return scale_; }
  int state_count() const noexcept { return capacity_.state_count(); }
  int outcome_count() const noexcept { return static_cast<int>(mu_.size()); }
  const std::vector<Level>& mu() const noexcept { return mu_; }
  Level mu(int outcome) const { return mu_[static_cast<std::size_t>(outcome)]; }
  std::span<const int> mu_ranks() const noexcept { return mu_ranks_; }
  const Capacity& capacity() const noexcept { return capacity_; }
  ActSpace act_space() const { return {state_count(), outcome_count()}; }

  // Same outcomes and utility, different capacity.
  DecisionFrame with_capacity(Capacity capacity) const;

  // Throws ErrorKind::frame_mismatch unless f is an act of this frame.
  void check_act(const Act& f) const;

  // Indices of a best and a worst outcome (least index among ties).
  int best_outcome() const;
  int worst_outcome() const;

 private:
  Scale scale_;
  std::vector<Level> mu_;
  std::vector<int> mu_ranks_;
  Capacity capacity_;
};

enum class Combine { worst, best };

Act constant_act(int state_count, int outcome);
Act compound_act(const Act& f, Subset a, const Act& g);
Act binary_act(int state_count, int x, Subset a, int y);
Act binary_act(const DecisionFrame& frame, int x, Subset a, int y);

// Statewise worst/best by the outcome preorder given as per-outcome ranks.
// On ties the outcome of f is kept.
Act pointwise_combine(std::span<const int> order, const Act& f, const Act& g, Combine mode);
bool pointwise_leq(std::span<const int> order, const Act& f, const Act& g);
bool is_comonotonic(std::span<const int> order, const Act& f, const Act& g);
Subset level_set(std::span<const int> order, const Act& f, int threshold);

// Frame-checked versions over μ.
Act compound_act(const DecisionFrame& frame, const Act& f, Subset a, const Act& g);
Act pointwise_combine(const DecisionFrame& frame, const Act& f, const Act& g, Combine mode);
bool pointwise_leq(const DecisionFrame& frame, const Act& f, const Act& g);
bool is_comonotonic(const DecisionFrame& frame, const Act& f, const Act& g);
Subset level_set(const DecisionFrame& frame, const Act& f, Level threshold);

}  // namespace qdt
