#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qsub {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color flip(Color c) noexcept {
  return c == Color::White ? Color::Black : Color::White;
}

constexpr char color_char(Color c) noexcept { return c == Color::White ? 'o' : 'x'; }

// Finite word over {o, x}. The empty word prints as "e".
// Ordering is shortlex (length first, then white < black).
class ColorWord {
 public:
  ColorWord() = default;
  explicit ColorWord(std::vector<Color> letters) : letters_(std::move(letters)) {}

  static ColorWord parse(std::string_view text);
  static ColorWord repeat(Color c, std::size_t n);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Color operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Color>& letters() const noexcept { return letters_; }

  ColorWord subword(std::size_t pos, std::size_t len) const;
  ColorWord conjugate() const;
  ColorWord operator+(const ColorWord& other) const;

  std::string str() const;

  friend bool operator==(const ColorWord&, const ColorWord&) = default;
  friend std::strong_ordering operator<=>(const ColorWord& a, const ColorWord& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Color> letters_;
};

struct ColorWordHash {
  std::size_t operator()(const ColorWord& w) const noexcept;
};

int color_balance(const ColorWord& w);
// cb of every nonempty prefix, in order.
std::vector<int> prefix_balances(const ColorWord& w);
std::set<ColorWord> cancellations(const ColorWord& w);
// All words of length <= max_len in shortlex order.
std::vector<ColorWord> all_words(std::size_t max_len);

inline constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

// One entry of the admissible-set catalog. Constructors canonicalize so that
// every set has exactly one representation.
struct AdmissibleSetSpec {
  enum class Kind : std::uint8_t { Empty, ModK, White, Black, Pair };
  Kind kind = Kind::Empty;
  std::uint32_t k = 0;
  std::uint32_t k2 = 0;

  static AdmissibleSetSpec empty();
  static AdmissibleSetSpec mod(std::uint32_t k);
  static AdmissibleSetSpec white(std::uint32_t k);
  static AdmissibleSetSpec black(std::uint32_t k);
  static AdmissibleSetSpec pair(std::uint32_t k, std::uint32_t k2);
  static AdmissibleSetSpec parse(std::string_view text);

  bool finite_params() const noexcept;
  std::string str() const;
  // Generators of the set when all parameters are finite.
  std::vector<ColorWord> generators() const;

  friend bool operator==(const AdmissibleSetSpec&, const AdmissibleSetSpec&) = default;
};

bool member(const AdmissibleSetSpec& spec, const ColorWord& w);
std::vector<ColorWord> slice(const AdmissibleSetSpec& spec, std::size_t max_len);

struct GeneratedWordSet {
  std::vector<ColorWord> generators;
  std::size_t bound = 0;
  std::set<ColorWord> members;

  bool contains(const ColorWord& w) const { return members.count(w) != 0; }
};

// Least set containing the generators and closed under concatenation,
// conjugation and single cancellations, keeping only words of length <= bound.
GeneratedWordSet generate(const std::vector<ColorWord>& gens, std::size_t bound);

struct WordClassification {
  AdmissibleSetSpec spec;
  std::size_t bound = 0;       // length at which the slices were compared
  std::size_t work_bound = 0;  // length used for generation
  bool may_be_larger = false;  // a larger parameter has the same slice
  std::vector<ColorWord> missing;  // in the catalog slice, not generated
  std::vector<ColorWord> extra;    // generated, not in the catalog slice
};

// Identifies the catalog set generated by gens, comparing slices at length L.
// Generation runs at a working bound >= max(L, 2 * longest generator) that is
// raised until the slice at L stabilizes on a catalog entry.
WordClassification classify(const std::vector<ColorWord>& gens, std::size_t L);

// Rewrites w in White(k) with maximal prefix balance k down to o^k x^k.
// Returns the full trace; consecutive entries differ by one cancellation.
std::vector<ColorWord> reduce(const ColorWord& w, std::uint32_t k);

// True iff b arises from a by deleting one adjacent ox or xo pair.
bool is_elementary_cancellation(const ColorWord& a, const ColorWord& b);

}  // namespace qsub
