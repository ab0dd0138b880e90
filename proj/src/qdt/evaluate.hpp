#pragma once

#include <span>
#include <vector>

#include "qdt/acts.hpp"
#include "qdt/capacity.hpp"

namespace qdt {

// u_S(f) = max_λ min(λ, σ(F_λ)), F_λ = {s : μ(f(s)) ≥ λ}.
Level sugeno_levelcut(const DecisionFrame& frame, const Act& f);

// max_x min(μ(x), σ(F_x)), F_x = {s : μ(f(s)) ≥ μ(x)}.
Level sugeno_outcome(const DecisionFrame& frame, const Act& f);

// Median of {σ(F_{x_i}) : i = 1..n} ∪ {μ(x_i) : i = 0..n} with outcomes
// sorted by (μ, index). Multiplicities are kept.
Level sugeno_median(const DecisionFrame& frame, const Act& f);

// Closed form max(μ(y), min(μ(x), σ(A))). When μ(x) < μ(y) the act is
// rewritten as y Ā x first.
Level binary_act_value(const DecisionFrame& frame, int x, Subset a, int y);

// QU*(f) = max_s min(π(s), μ(f(s))).
Level qu_optimistic(const DecisionFrame& frame, const PossibilityDistribution& pi, const Act& f);

// QU_*(f) = min_s max(n(π(s)), μ(f(s))).
Level qu_pessimistic(const DecisionFrame& frame, const PossibilityDistribution& pi, const Act& f);

// Probability-weighted sum. Weights must be non-negative and sum to 1
// within 1e-9.
double expected_utility(std::span<const double> probabilities, std::span<const double> payoffs);

// Sugeno utility rank of every act of the frame, indexed by act index.
std::vector<int> utilities_of_all_acts(const DecisionFrame& frame);

}  // namespace qdt
