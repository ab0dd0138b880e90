#pragma once

#include <compare>
#include <span>

namespace qdt {

// A level of a finite chain 0_L < ... < 1_L. The level remembers the top rank
// of the scale it was drawn from so that mixing scales can be detected.
class Level {
 public:
  constexpr Level() = default;
  constexpr Level(int rank, int top) : rank_(rank), top_(top) {}

  constexpr int rank() const noexcept { return rank_; }
  constexpr int top() const noexcept { return top_; }

  // Lexicographic on (rank, top); only meaningful for levels of one scale.
  constexpr auto operator<=>(const Level&) const = default;

 private:
  int rank_ = 0;
  int top_ = 1;
};

// Finite totally ordered scale with ranks 0..m, m = size - 1.
class Scale {
 public:
  explicit Scale(int size);

  int size() const noexcept { return size_; }
  int top_rank() const noexcept { return size_ - 1; }

  Level level(int rank) const;
  Level top() const noexcept { return {size_ - 1, size_ - 1}; }
  Level bottom() const noexcept { return {0, size_ - 1}; }
  bool contains(Level level) const noexcept;

  bool operator==(const Scale&) const = default;

 private:
  int size_;
};

// Rank complement m - i: the unique strictly antitone involution of a chain.
Level order_reverse(const Scale& scale, Level level);

// Middle element of an odd-size multiset. Even-size input is rejected.
Level median(std::span<const Level> levels);

}  // namespace qdt
