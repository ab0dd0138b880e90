#include "qdt/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

int levelcut_rank(const Capacity& sigma, std::span<const int> mu, const Act& f, int top) {
  int best = 0;
  for (int lambda = 0; lambda <= top; ++lambda)
    best = std::max(best, std::min(lambda, sigma.rank(level_set(mu, f, lambda))));
  return best;
}

void check_distribution(const DecisionFrame& frame, const PossibilityDistribution& pi) {
  require_normalized(pi);
  if (!(pi.scale == frame.scale()))
    fail(ErrorKind::frame_mismatch, "possibility distribution uses a different scale");
  if (static_cast<int>(pi.values.size()) != frame.state_count())
    fail(ErrorKind::frame_mismatch, "possibility distribution has the wrong number of states");
}

}  // namespace

Level sugeno_levelcut(const DecisionFrame& frame, const Act& f) {
  frame.check_act(f);
  return frame.scale().level(
      levelcut_rank(frame.capacity(), frame.mu_ranks(), f, frame.scale().top_rank()));
}

Level sugeno_outcome(const DecisionFrame& frame, const Act& f) {
  frame.check_act(f);
  const auto mu = frame.mu_ranks();
  int best = 0;
  for (int x = 0; x < frame.outcome_count(); ++x) {
    const int mx = mu[static_cast<std::size_t>(x)];
    best = std::max(best, std::min(mx, frame.capacity().rank(level_set(mu, f, mx))));
  }
  return frame.scale().level(best);
}

Level sugeno_median(const DecisionFrame& frame, const Act& f) {
  frame.check_act(f);
  const auto mu = frame.mu_ranks();
  std::vector<int> sorted(static_cast<std::size_t>(frame.outcome_count()));
  std::iota(sorted.begin(), sorted.end(), 0);
  std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    return mu[static_cast<std::size_t>(a)] < mu[static_cast<std::size_t>(b)];
  });

  std::vector<Level> numbers;
  numbers.reserve(2 * sorted.size() - 1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const int x = sorted[i];
    numbers.push_back(frame.mu(x));
    if (i > 0) numbers.push_back(frame.capacity()(level_set(mu, f, mu[static_cast<std::size_t>(x)])));
  }
  return median(numbers);
}

Level binary_act_value(const DecisionFrame& frame, int x, Subset a, int y) {
  if (x < 0 || x >= frame.outcome_count() || y < 0 || y >= frame.outcome_count())
    fail(ErrorKind::frame_mismatch, "outcome index out of range");
  a &= full_set(frame.state_count());
  if (frame.mu(x) < frame.mu(y)) {
    std::swap(x, y);
    a = complement(a, frame.state_count());
  }
  return std::max(frame.mu(y), std::min(frame.mu(x), frame.capacity()(a)));
}

Level qu_optimistic(const DecisionFrame& frame, const PossibilityDistribution& pi, const Act& f) {
  frame.check_act(f);
  check_distribution(frame, pi);
  Level best = frame.scale().bottom();
  for (int s = 0; s < frame.state_count(); ++s)
    best = std::max(best, std::min(pi.values[static_cast<std::size_t>(s)], frame.mu(f[s])));
  return best;
}

Level qu_pessimistic(const DecisionFrame& frame, const PossibilityDistribution& pi, const Act& f) {
  frame.check_act(f);
  check_distribution(frame, pi);
  Level worst = frame.scale().top();
  for (int s = 0; s < frame.state_count(); ++s)
    worst = std::min(worst, std::max(order_reverse(pi.scale, pi.values[static_cast<std::size_t>(s)]),
                                     frame.mu(f[s])));
  return worst;
}

double expected_utility(std::span<const double> probabilities, std::span<const double> payoffs) {
  if (probabilities.size() != payoffs.size() || probabilities.empty())
    fail(ErrorKind::invalid_argument, "probabilities and payoffs must be non-empty and aligned");
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p))
      fail(ErrorKind::invalid_argument, "probabilities must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    fail(ErrorKind::invalid_argument, "probabilities sum to " + std::to_string(total) + ", not 1");
  double eu = 0.0;
  for (std::size_t i = 0; i < payoffs.size(); ++i) eu += probabilities[i] * payoffs[i];
  return eu;
}

std::vector<int> utilities_of_all_acts(const DecisionFrame& frame) {
  const ActSpace space = frame.act_space();
  std::vector<int> out(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i)
    out[i] = levelcut_rank(frame.capacity(), frame.mu_ranks(), space.act(i),
                           frame.scale().top_rank());
  return out;
}

}  // namespace qdt
