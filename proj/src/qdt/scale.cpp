#include "qdt/scale.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "qdt/errors.hpp"

namespace qdt {

Scale::Scale(int size) : size_(size) {
  if (size < 2)
    fail(ErrorKind::invalid_argument,
         "scale needs at least two levels, got " + std::to_string(size));
}

Level Scale::level(int rank) const {
  if (rank < 0 || rank > top_rank())
    fail(ErrorKind::invalid_argument, "rank " + std::to_string(rank) +
                                          " outside scale 0.." +
                                          std::to_string(top_rank()));
  return {rank, top_rank()};
}

bool Scale::contains(Level level) const noexcept {
  return level.top() == top_rank() && level.rank() >= 0 &&
         level.rank() <= top_rank();
}

Level order_reverse(const Scale& scale, Level level) {
  if (!scale.contains(level))
    fail(ErrorKind::invalid_argument,
         "level " + std::to_string(level.rank()) + " does not belong to scale of size " +
             std::to_string(scale.size()));
  return {scale.top_rank() - level.rank(), scale.top_rank()};
}

Level median(std::span<const Level> levels) {
  if (levels.empty()) fail(ErrorKind::invalid_argument, "median of an empty multiset");
  if (levels.size() % 2 == 0)
    fail(ErrorKind::invalid_argument,
         "median needs an odd number of levels, got " + std::to_string(levels.size()));
  const int top = levels.front().top();
  for (const Level& l : levels)
    if (l.top() != top) fail(ErrorKind::invalid_argument, "median over mixed scales");

  std::vector<Level> sorted(levels.begin(), levels.end());
  auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  return *mid;
}

}  // namespace qdt
