#include "qsub/words.hpp"

#include <algorithm>
#include <deque>

#include "qsub/errors.hpp"

namespace qsub {

ColorWord ColorWord::parse(std::string_view text) {
  if (text == "e" || text == "()" || text.empty()) return {};
  std::vector<Color> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c == 'o')
      letters.push_back(Color::White);
    else if (c == 'x')
      letters.push_back(Color::Black);
    else
      throw ParseError("bad letter '" + std::string(1, c) + "' in word \"" + std::string(text) + "\"");
  }
  return ColorWord(std::move(letters));
}

ColorWord ColorWord::repeat(Color c, std::size_t n) { return ColorWord(std::vector<Color>(n, c)); }

ColorWord ColorWord::subword(std::size_t pos, std::size_t len) const {
  if (pos + len > size()) throw PreconditionViolated("subword out of range");
  return ColorWord(std::vector<Color>(letters_.begin() + pos, letters_.begin() + pos + len));
}

ColorWord ColorWord::conjugate() const {
  std::vector<Color> out(letters_.rbegin(), letters_.rend());
  for (auto& c : out) c = flip(c);
  return ColorWord(std::move(out));
}

ColorWord ColorWord::operator+(const ColorWord& other) const {
  std::vector<Color> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return ColorWord(std::move(out));
}

std::string ColorWord::str() const {
  if (empty()) return "e";
  std::string s;
  s.reserve(size());
  for (Color c : letters_) s.push_back(color_char(c));
  return s;
}

std::size_t ColorWordHash::operator()(const ColorWord& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ w.size();
  for (Color c : w.letters()) h = h * 1099511628211ull + static_cast<std::size_t>(c) + 1;
  return h;
}

int color_balance(const ColorWord& w) {
  int b = 0;
  for (Color c : w.letters()) b += c == Color::White ? 1 : -1;
  return b;
}

std::vector<int> prefix_balances(const ColorWord& w) {
  std::vector<int> out;
  out.reserve(w.size());
  int b = 0;
  for (Color c : w.letters()) {
    b += c == Color::White ? 1 : -1;
    out.push_back(b);
  }
  return out;
}

std::set<ColorWord> cancellations(const ColorWord& w) {
  std::set<ColorWord> out;
  const auto& v = w.letters();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] == v[i + 1]) continue;
    std::vector<Color> r;
    r.reserve(v.size() - 2);
    r.insert(r.end(), v.begin(), v.begin() + i);
    r.insert(r.end(), v.begin() + i + 2, v.end());
    out.insert(ColorWord(std::move(r)));
  }
  return out;
}

bool is_elementary_cancellation(const ColorWord& a, const ColorWord& b) {
  if (a.size() != b.size() + 2) return false;
  return cancellations(a).count(b) != 0;
}

std::vector<ColorWord> all_words(std::size_t max_len) {
  std::vector<ColorWord> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      std::vector<Color> v(len);
      // most significant bit first so that the output is lexicographic
      for (std::size_t i = 0; i < len; ++i)
        v[i] = (bits >> (len - 1 - i)) & 1 ? Color::Black : Color::White;
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog specs

AdmissibleSetSpec AdmissibleSetSpec::empty() { return {Kind::Empty, 0, 0}; }

AdmissibleSetSpec AdmissibleSetSpec::mod(std::uint32_t k) {
  if (k == 0 || k == kInfinite) throw PreconditionViolated("ModK needs a finite k >= 1");
  return {Kind::ModK, k, 0};
}

AdmissibleSetSpec AdmissibleSetSpec::white(std::uint32_t k) { return {Kind::White, k, 0}; }

AdmissibleSetSpec AdmissibleSetSpec::black(std::uint32_t k) {
  if (k == 0) return white(0);
  return {Kind::Black, k, 0};
}

AdmissibleSetSpec AdmissibleSetSpec::pair(std::uint32_t k, std::uint32_t k2) {
  if (k2 == 0) return white(k);
  if (k == 0) return black(k2);
  return {Kind::Pair, k, k2};
}

namespace {

std::string param_str(std::uint32_t k) { return k == kInfinite ? "inf" : std::to_string(k); }

std::uint32_t parse_param(std::string_view s) {
  if (s == "inf") return kInfinite;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("bad parameter \"" + std::string(s) + "\"");
  return static_cast<std::uint32_t>(std::stoul(std::string(s)));
}

}  // namespace

AdmissibleSetSpec AdmissibleSetSpec::parse(std::string_view text) {
  if (text == "Empty") return empty();
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("bad spec \"" + std::string(text) + "\"");
  std::string_view head = text.substr(0, open);
  std::string_view args = text.substr(open + 1, text.size() - open - 2);
  if (head == "Pair") {
    auto comma = args.find(',');
    if (comma == std::string_view::npos) throw ParseError("Pair needs two parameters");
    return pair(parse_param(args.substr(0, comma)), parse_param(args.substr(comma + 1)));
  }
  std::uint32_t k = parse_param(args);
  if (head == "ModK") return mod(k);
  if (head == "White") return white(k);
  if (head == "Black") return black(k);
  throw ParseError("unknown spec kind \"" + std::string(head) + "\"");
}

bool AdmissibleSetSpec::finite_params() const noexcept { return k != kInfinite && k2 != kInfinite; }

std::string AdmissibleSetSpec::str() const {
  switch (kind) {
    case Kind::Empty: return "Empty";
    case Kind::ModK: return "ModK(" + param_str(k) + ")";
    case Kind::White: return "White(" + param_str(k) + ")";
    case Kind::Black: return "Black(" + param_str(k) + ")";
    case Kind::Pair: return "Pair(" + param_str(k) + "," + param_str(k2) + ")";
  }
  return "?";
}

namespace {

ColorWord hill(Color up, std::uint32_t k) {
  return ColorWord::repeat(up, k) + ColorWord::repeat(flip(up), k);
}

}  // namespace

std::vector<ColorWord> AdmissibleSetSpec::generators() const {
  if (!finite_params()) throw PreconditionViolated(str() + " is not finitely generated");
  switch (kind) {
    case Kind::Empty: return {};
    case Kind::ModK: return {ColorWord::repeat(Color::White, k)};
    case Kind::White: return {hill(Color::White, k)};
    case Kind::Black: return {hill(Color::Black, k)};
    case Kind::Pair: return {hill(Color::White, k), hill(Color::Black, k2)};
  }
  return {};
}

bool member(const AdmissibleSetSpec& spec, const ColorWord& w) {
  using Kind = AdmissibleSetSpec::Kind;
  if (spec.kind == Kind::Empty) return false;
  if (spec.kind == Kind::ModK) return color_balance(w) % static_cast<long>(spec.k) == 0;
  long hi = 0, lo = 0;
  switch (spec.kind) {
    case Kind::White: hi = spec.k == kInfinite ? -1 : spec.k; lo = 0; break;
    case Kind::Black: hi = 0; lo = spec.k == kInfinite ? -1 : spec.k; break;
    default: hi = spec.k == kInfinite ? -1 : spec.k; lo = spec.k2 == kInfinite ? -1 : spec.k2; break;
  }
  // Scan the word as a sequence of maximal balanced factors. A factor that
  // rises must stay within the white bound, one that falls within the black bound.
  long b = 0;
  for (Color c : w.letters()) {
    b += c == Color::White ? 1 : -1;
    if (b > 0 && hi >= 0 && b > hi) return false;
    if (b < 0 && lo >= 0 && -b > lo) return false;
  }
  return b == 0;
}

std::vector<ColorWord> slice(const AdmissibleSetSpec& spec, std::size_t max_len) {
  std::vector<ColorWord> out;
  for (auto& w : all_words(max_len))
    if (member(spec, w)) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Closure of a word set. Words are packed as bit strings with a sentinel bit
// at position len; bit i set means letter i is black.

namespace {

using Code = std::uint64_t;
constexpr std::size_t kMaxPackedBound = 24;

int code_len(Code c) { return 63 - __builtin_clzll(c); }

Code encode(const ColorWord& w) {
  Code c = Code{1} << w.size();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == Color::Black) c |= Code{1} << i;
  return c;
}

ColorWord decode(Code c) {
  int n = code_len(c);
  std::vector<Color> v(n);
  for (int i = 0; i < n; ++i) v[i] = (c >> i) & 1 ? Color::Black : Color::White;
  return ColorWord(std::move(v));
}

Code concat(Code a, Code b) {
  int la = code_len(a);
  Code bits_a = a ^ (Code{1} << la);
  return bits_a | (b << la);
}

Code conj(Code c) {
  int n = code_len(c);
  Code out = Code{1} << n;
  for (int i = 0; i < n; ++i)
    if (!((c >> i) & 1)) out |= Code{1} << (n - 1 - i);
  return out;
}

class Closure {
 public:
  explicit Closure(std::size_t bound)
      : bound_(bound), seen_(std::size_t{1} << (bound + 1), false), by_len_(bound + 1) {}

  void push(Code c) {
    if (static_cast<std::size_t>(code_len(c)) > bound_) return;
    if (seen_[c]) return;
    seen_[c] = true;
    queue_.push_back(c);
  }

  void run() {
    while (!queue_.empty()) {
      Code x = queue_.front();
      queue_.pop_front();
      int n = code_len(x);
      push(conj(x));
      for (int i = 0; i + 1 < n; ++i) {
        if (((x >> i) & 1) == ((x >> (i + 1)) & 1)) continue;
        Code low = x & ((Code{1} << i) - 1);
        Code high = x >> (i + 2);
        push(low | (high << i));
      }
      by_len_[n].push_back(x);
      for (std::size_t m = 0; m + n <= bound_; ++m) {
        for (Code y : by_len_[m]) {
          push(concat(x, y));
          push(concat(y, x));
        }
      }
    }
  }

  std::set<ColorWord> members() const {
    std::set<ColorWord> out;
    for (const auto& bucket : by_len_)
      for (Code c : bucket) out.insert(decode(c));
    return out;
  }

 private:
  std::size_t bound_;
  std::vector<bool> seen_;
  std::vector<std::vector<Code>> by_len_;
  std::deque<Code> queue_;
};

}  // namespace

GeneratedWordSet generate(const std::vector<ColorWord>& gens, std::size_t bound) {
  if (bound > kMaxPackedBound)
    throw TooLarge("generation bound " + std::to_string(bound) + " exceeds " +
                   std::to_string(kMaxPackedBound));
  Closure cl(bound);
  for (const auto& g : gens) cl.push(encode(g));
  cl.run();
  return {gens, bound, cl.members()};
}

// ---------------------------------------------------------------------------
// Classification

namespace {

std::set<ColorWord> slice_set(const AdmissibleSetSpec& spec, const std::vector<ColorWord>& universe) {
  std::set<ColorWord> out;
  for (const auto& w : universe)
    if (member(spec, w)) out.insert(w);
  return out;
}

std::vector<AdmissibleSetSpec> candidates(std::size_t L) {
  std::vector<AdmissibleSetSpec> out;
  auto top = static_cast<std::uint32_t>(L / 2 + 1);
  out.push_back(AdmissibleSetSpec::empty());
  for (std::uint32_t k = 0; k <= top; ++k) out.push_back(AdmissibleSetSpec::white(k));
  for (std::uint32_t k = 1; k <= top; ++k) out.push_back(AdmissibleSetSpec::black(k));
  for (std::uint32_t s = 2; s <= 2 * top; ++s)
    for (std::uint32_t k = 1; k < s; ++k)
      if (k <= top && s - k <= top) out.push_back(AdmissibleSetSpec::pair(k, s - k));
  for (std::uint32_t k = 1; k <= L + 1; ++k) out.push_back(AdmissibleSetSpec::mod(k));
  return out;
}

}  // namespace

WordClassification classify(const std::vector<ColorWord>& gens, std::size_t L) {
  std::size_t longest = 0;
  for (const auto& g : gens) longest = std::max(longest, g.size());
  const std::size_t base = std::max(L, 2 * longest);
  const std::size_t cap = std::min(kMaxPackedBound, base + 2 * longest + 4);
  const auto universe = all_words(L);
  const auto cands = candidates(L);

  std::set<ColorWord> last;
  for (std::size_t lw = base; lw <= cap; lw += 2) {
    auto gen = generate(gens, lw);
    std::set<ColorWord> got;
    for (const auto& w : gen.members)
      if (w.size() <= L) got.insert(w);
    last = got;
    for (const auto& c : cands) {
      if (slice_set(c, universe) != got) continue;
      WordClassification out;
      out.spec = c;
      out.bound = L;
      out.work_bound = lw;
      using Kind = AdmissibleSetSpec::Kind;
      if (c.kind == Kind::White || c.kind == Kind::Black) {
        auto bigger = c.kind == Kind::White ? AdmissibleSetSpec::white(c.k + 1)
                                            : AdmissibleSetSpec::black(c.k + 1);
        out.may_be_larger = slice_set(bigger, universe) == got;
      } else if (c.kind == Kind::Pair) {
        out.may_be_larger = slice_set(AdmissibleSetSpec::pair(c.k + 1, c.k2), universe) == got ||
                            slice_set(AdmissibleSetSpec::pair(c.k, c.k2 + 1), universe) == got;
      }
      return out;
    }
  }
  std::string gs;
  for (const auto& g : gens) gs += (gs.empty() ? "" : ",") + g.str();
  throw NoCatalogMatch("generators {" + gs + "} at L=" + std::to_string(L) + " (" +
                       std::to_string(last.size()) + " words generated)");
}

// ---------------------------------------------------------------------------
// Reduction to o^k x^k

namespace {

struct Run {
  Color color;
  std::size_t len;
};

std::vector<Run> runs_of(const ColorWord& w) {
  std::vector<Run> out;
  for (Color c : w.letters()) {
    if (!out.empty() && out.back().color == c)
      ++out.back().len;
    else
      out.push_back({c, 1});
  }
  return out;
}

ColorWord erase_pair(const ColorWord& w, std::size_t i) {
  std::vector<Color> v = w.letters();
  v.erase(v.begin() + i, v.begin() + i + 2);
  return ColorWord(std::move(v));
}

}  // namespace

std::vector<ColorWord> reduce(const ColorWord& w, std::uint32_t k) {
  if (k == kInfinite || !member(AdmissibleSetSpec::white(k), w))
    throw NotInSet(w.str() + " is not in White(" + param_str(k) + ")");
  auto pb = prefix_balances(w);
  int top = pb.empty() ? 0 : *std::max_element(pb.begin(), pb.end());
  if (top != static_cast<int>(k))
    throw PreconditionViolated("maximal prefix balance of " + w.str() + " is " + std::to_string(top));

  const ColorWord target = ColorWord::repeat(Color::White, k) + ColorWord::repeat(Color::Black, k);
  std::vector<ColorWord> trace{w};
  ColorWord cur = w;
  while (cur != target) {
    // runs alternate o, x, o, x, ...; blocks are (o-run, x-run) pairs
    auto runs = runs_of(cur);
    const std::size_t blocks = runs.size() / 2;
    // block containing the first prefix reaching k
    std::size_t t = 0, pos = 0;
    int bal = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      bal += static_cast<int>(runs[2 * b].len);
      if (bal == static_cast<int>(k)) {
        t = b;
        break;
      }
      bal -= static_cast<int>(runs[2 * b + 1].len);
    }
    if (t + 1 < blocks) {
      // shrink the last block o^i x^j to x^(j-i)
      for (std::size_t b = 0; b + 1 < blocks; ++b) pos += runs[2 * b].len + runs[2 * b + 1].len;
      std::size_t i = runs[2 * (blocks - 1)].len;
      for (std::size_t s = 0; s < i; ++s) {
        cur = erase_pair(cur, pos + i - 1 - s);
        trace.push_back(cur);
      }
    } else {
      // shrink the first block o^i x^j to o^(i-j)
      std::size_t i = runs[0].len, j = runs[1].len;
      for (std::size_t s = 0; s < j; ++s) {
        cur = erase_pair(cur, i - 1 - s);
        trace.push_back(cur);
      }
    }
  }
  return trace;
}

}  // namespace qsub
