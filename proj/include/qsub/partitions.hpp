#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsub/words.hpp"

namespace qsub {

// A set partition of k upper and l lower colored points.
// Points are numbered upper left to right, then lower left to right; block
// labels are kept in first-appearance order, so equal partitions compare equal.
// Text form: "upper;lower;b1,...,b_{k+l}" with 1-based labels, e.g. "ox;ox;1,2,1,2".
class ColoredPartition {
 public:
  ColoredPartition() = default;
  ColoredPartition(ColorWord upper, ColorWord lower, std::vector<std::uint8_t> blocks);

  static ColoredPartition parse(std::string_view text);
  std::string str() const;

  const ColorWord& upper() const noexcept { return upper_; }
  const ColorWord& lower() const noexcept { return lower_; }
  std::size_t upper_size() const noexcept { return upper_.size(); }
  std::size_t lower_size() const noexcept { return lower_.size(); }
  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<std::uint8_t>& blocks() const noexcept { return blocks_; }
  std::uint8_t block_of(std::size_t point) const { return blocks_[point]; }
  std::size_t block_count() const noexcept { return block_count_; }
  Color color_of(std::size_t point) const {
    return point < upper_.size() ? upper_[point] : lower_[point - upper_.size()];
  }
  bool is_upper(std::size_t point) const noexcept { return point < upper_.size(); }

  friend bool operator==(const ColoredPartition& a, const ColoredPartition& b) {
    return a.blocks_ == b.blocks_ && a.upper_ == b.upper_ && a.lower_ == b.lower_;
  }
  friend std::strong_ordering operator<=>(const ColoredPartition& a, const ColoredPartition& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = a.upper_ <=> b.upper_; c != 0) return c;
    if (auto c = a.lower_ <=> b.lower_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  ColorWord upper_;
  ColorWord lower_;
  std::vector<std::uint8_t> blocks_;
  std::size_t block_count_ = 0;
};

struct ColoredPartitionHash {
  std::size_t operator()(const ColoredPartition& p) const noexcept;
};

// Building blocks.
ColoredPartition identity(Color c);
// Two upper points joined, no lower points; the colors must differ.
ColoredPartition duality(Color left, Color right);
// p_w = id_{w_1} (x) ... (x) id_{w_n}.
ColoredPartition word_partition(const ColorWord& w);
ColoredPartition identity_on(const ColorWord& w);
// One block containing every point of the frame.
ColoredPartition one_block(const ColorWord& upper, const ColorWord& lower);
// Every point a singleton.
ColoredPartition all_singletons(const ColorWord& upper, const ColorWord& lower);

ColoredPartition tensor(const ColoredPartition& p, const ColoredPartition& q);

struct Composition {
  ColoredPartition result;
  std::size_t loops = 0;  // components lying entirely in the middle row
};
// Vertical composition qp: p on top, q below; needs lower(p) == upper(q).
Composition compose(const ColoredPartition& q, const ColoredPartition& p);
// Shorthand that drops the loop count.
ColoredPartition operator*(const ColoredPartition& q, const ColoredPartition& p);

ColoredPartition adjoint(const ColoredPartition& p);
// Mirror left-right and invert every color.
ColoredPartition reverse(const ColoredPartition& p);

enum class Corner : std::uint8_t { UpperLeftDown, LowerLeftUp, UpperRightDown, LowerRightUp };
ColoredPartition rotate(const ColoredPartition& p, Corner corner);

ColoredPartition forget_colors(const ColoredPartition& p);

struct PartitionStats {
  std::size_t blocks = 0;
  std::size_t through = 0;
  std::size_t non_through = 0;
  bool noncrossing = false;
  bool projective = false;
};

PartitionStats stats(const ColoredPartition& p);
bool is_noncrossing(const ColoredPartition& p);
bool is_projective(const ColoredPartition& p);
std::size_t through_block_count(const ColoredPartition& p);
std::vector<std::size_t> block_sizes(const ColoredPartition& p);
// Point indices in circular order: upper left to right, then lower right to left.
std::vector<std::size_t> circular_order(const ColoredPartition& p);

// Membership in the two-colored noncrossing pair category: pairs in one row
// have different colors, pairs across rows have equal colors.
bool is_cu_partition(const ColoredPartition& p);

// Splits a noncrossing projective partition into tensor factors with one
// through-block each.
std::vector<ColoredPartition> through_factorize(const ColoredPartition& p);

// Colors of the through strands of a projective partition of the colored pair category.
ColorWord through_word(const ColoredPartition& p);

}  // namespace qsub
