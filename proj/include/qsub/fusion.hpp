#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "qsub/words.hpp"

namespace qsub {

// Formal N-linear combination of irreducible labels.
using FusionVector = std::map<ColorWord, std::uint64_t>;

// "word:mult" terms in sorted order, separated by spaces.
std::string to_string(const FusionVector& v);
void add_into(FusionVector& acc, const FusionVector& v, std::uint64_t scale = 1);

// Tensor decomposition of the irreducibles labelled w and w2: the sum over
// every z with w = a z and w2 = conj(z) b of the term a b.
FusionVector product_u(const ColorWord& w, const ColorWord& w2);
FusionVector product_u(const FusionVector& x, const FusionVector& y);

// product_u with both factors and every output term checked against spec.
FusionVector restricted_product(const AdmissibleSetSpec& spec, const ColorWord& a, const ColorWord& b);

// Multiplicity of the empty word in the product of the single letters of w.
std::uint64_t trivial_multiplicity(const ColorWord& w);

// ---------------------------------------------------------------------------
// Words of base labels, the wreath product fusion rule.

using WreathWord = std::vector<ColorWord>;
using WreathVector = std::map<WreathWord, std::uint64_t>;
using BaseFusion = std::function<FusionVector(const ColorWord&, const ColorWord&)>;

// "[ox][e]"; the empty sequence prints as "()".
std::string to_string(const WreathWord& x);
std::string to_string(const WreathVector& v);
WreathWord parse_wreath(std::string_view text);
void add_into(WreathVector& acc, const WreathVector& v, std::uint64_t scale = 1);

// Product of letter sequences over a base fusion ring. For x = x' a and y = b y':
//   x (x) y = x y + sum_g m(g, a (x) b) x' g y' + [a = conj(b)] (x' (x) y'),
// where g runs over every term of a (x) b, the trivial label included.
// Results are memoized; the ring may be shared between threads.
class WreathRing {
 public:
  explicit WreathRing(BaseFusion base) : base_(std::move(base)) {}

  WreathVector product(const WreathWord& x, const WreathWord& y);
  WreathVector product(const WreathVector& x, const WreathVector& y);

 private:
  BaseFusion base_;
  std::map<std::pair<WreathWord, WreathWord>, WreathVector> memo_;
  std::mutex mutex_;
};

// x1..xn -> o x1 x ... o xn x
ColorWord psi(const WreathWord& x);
// Inverse on words of White(k+1): cut at each return of the prefix balance to 0.
WreathWord psi_inverse(const ColorWord& v);
FusionVector psi(const WreathVector& v);

// ---------------------------------------------------------------------------
// Free products of two fusion rings.

struct FreeLetter {
  std::uint8_t factor = 0;  // 0 or 1
  ColorWord label;          // nonempty
  friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};
using FreeWord = std::vector<FreeLetter>;
using FreeVector = std::map<FreeWord, std::uint64_t>;

std::string to_string(const FreeWord& x);

// Alternating words; adjacent letters of one factor merge through the factor's
// rule, the trivial term recursing into the remaining letters.
class FreeProductRing {
 public:
  FreeProductRing(BaseFusion first, BaseFusion second) : base_{std::move(first), std::move(second)} {}

  FreeVector product(const FreeWord& x, const FreeWord& y);

 private:
  BaseFusion base_[2];
};

// Splits a word of Pair(k, k2) into alternating runs of rising (factor 0) and
// falling (factor 1) balanced factors.
FreeWord split_alternating(const ColorWord& w);
ColorWord concatenate(const FreeWord& x);

}  // namespace qsub
