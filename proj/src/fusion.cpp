#include "qsub/fusion.hpp"

#include "qsub/errors.hpp"

namespace qsub {

std::string to_string(const FusionVector& v) {
  std::string s;
  for (const auto& [w, m] : v) {
    if (!s.empty()) s += ' ';
    s += w.str() + ":" + std::to_string(m);
  }
  return s;
}

void add_into(FusionVector& acc, const FusionVector& v, std::uint64_t scale) {
  for (const auto& [w, m] : v) acc[w] += m * scale;
}

FusionVector product_u(const ColorWord& w, const ColorWord& w2) {
  FusionVector out;
  const std::size_t top = std::min(w.size(), w2.size());
  for (std::size_t j = 0; j <= top; ++j) {
    const ColorWord z = w.subword(w.size() - j, j);
    if (z.conjugate() != w2.subword(0, j)) continue;
    out[w.subword(0, w.size() - j) + w2.subword(j, w2.size() - j)] += 1;
  }
  return out;
}

FusionVector product_u(const FusionVector& x, const FusionVector& y) {
  FusionVector out;
  for (const auto& [a, ma] : x)
    for (const auto& [b, mb] : y) add_into(out, product_u(a, b), ma * mb);
  return out;
}

FusionVector restricted_product(const AdmissibleSetSpec& spec, const ColorWord& a, const ColorWord& b) {
  if (!member(spec, a)) throw NotInSet(a.str() + " is not in " + spec.str());
  if (!member(spec, b)) throw NotInSet(b.str() + " is not in " + spec.str());
  auto out = product_u(a, b);
  for (const auto& [w, m] : out)
    if (!member(spec, w))
      throw ClosureViolation(a.str() + " (x) " + b.str() + " contains " + w.str() + " outside " + spec.str());
  return out;
}

std::uint64_t trivial_multiplicity(const ColorWord& w) {
  FusionVector acc{{ColorWord(), 1}};
  for (std::size_t i = 0; i < w.size(); ++i) acc = product_u(acc, FusionVector{{w.subword(i, 1), 1}});
  auto it = acc.find(ColorWord());
  return it == acc.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------

std::string to_string(const WreathWord& x) {
  if (x.empty()) return "()";
  std::string s;
  for (const auto& a : x) s += "[" + a.str() + "]";
  return s;
}

std::string to_string(const WreathVector& v) {
  std::string s;
  for (const auto& [x, m] : v) {
    if (!s.empty()) s += ' ';
    s += to_string(x) + ":" + std::to_string(m);
  }
  return s;
}

WreathWord parse_wreath(std::string_view text) {
  WreathWord out;
  if (text == "()" || text.empty()) return out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '[') throw ParseError("expected '[' in \"" + std::string(text) + "\"");
    auto close = text.find(']', i);
    if (close == std::string_view::npos) throw ParseError("unclosed letter in \"" + std::string(text) + "\"");
    out.push_back(ColorWord::parse(text.substr(i + 1, close - i - 1)));
    i = close + 1;
  }
  return out;
}

void add_into(WreathVector& acc, const WreathVector& v, std::uint64_t scale) {
  for (const auto& [x, m] : v) acc[x] += m * scale;
}

WreathVector WreathRing::product(const WreathWord& x, const WreathWord& y) {
  if (x.empty()) return {{y, 1}};
  if (y.empty()) return {{x, 1}};
  const auto key = std::make_pair(x, y);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const ColorWord& a = x.back();
  const ColorWord& b = y.front();
  const WreathWord head(x.begin(), x.end() - 1);
  const WreathWord tail(y.begin() + 1, y.end());

  WreathVector out;
  WreathWord joined = x;
  joined.insert(joined.end(), y.begin(), y.end());
  out[joined] += 1;
  for (const auto& [g, m] : base_(a, b)) {
    WreathWord mid = head;
    mid.push_back(g);
    mid.insert(mid.end(), tail.begin(), tail.end());
    out[mid] += m;
  }
  if (a == b.conjugate()) add_into(out, product(head, tail));

  std::lock_guard lock(mutex_);
  memo_.emplace(key, out);
  return out;
}

WreathVector WreathRing::product(const WreathVector& x, const WreathVector& y) {
  WreathVector out;
  for (const auto& [a, ma] : x)
    for (const auto& [b, mb] : y) add_into(out, product(a, b), ma * mb);
  return out;
}

ColorWord psi(const WreathWord& x) {
  std::vector<Color> out;
  for (const auto& a : x) {
    out.push_back(Color::White);
    out.insert(out.end(), a.letters().begin(), a.letters().end());
    out.push_back(Color::Black);
  }
  return ColorWord(std::move(out));
}

WreathWord psi_inverse(const ColorWord& v) {
  WreathWord out;
  int bal = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bal += v[i] == Color::White ? 1 : -1;
    if (bal < 0) throw NotInSet(v.str() + " has a negative prefix balance");
    if (bal == 0) {
      out.push_back(v.subword(start + 1, i - start - 1));
      start = i + 1;
    }
  }
  if (bal != 0) throw NotInSet(v.str() + " is not balanced");
  return out;
}

FusionVector psi(const WreathVector& v) {
  FusionVector out;
  for (const auto& [x, m] : v) out[psi(x)] += m;
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(const FreeWord& x) {
  if (x.empty()) return "()";
  std::string s;
  for (const auto& a : x) s += (a.factor == 0 ? "A[" : "B[") + a.label.str() + "]";
  return s;
}

FreeVector FreeProductRing::product(const FreeWord& x, const FreeWord& y) {
  if (x.empty()) return {{y, 1}};
  if (y.empty()) return {{x, 1}};
  const FreeLetter& a = x.back();
  const FreeLetter& b = y.front();
  FreeWord joined = x;
  if (a.factor != b.factor) {
    joined.insert(joined.end(), y.begin(), y.end());
    return {{joined, 1}};
  }
  const FreeWord head(x.begin(), x.end() - 1);
  const FreeWord tail(y.begin() + 1, y.end());
  FreeVector out;
  for (const auto& [g, m] : base_[a.factor](a.label, b.label)) {
    if (g.empty()) {
      for (const auto& [z, mz] : product(head, tail)) out[z] += m * mz;
      continue;
    }
    FreeWord mid = head;
    mid.push_back({a.factor, g});
    mid.insert(mid.end(), tail.begin(), tail.end());
    out[mid] += m;
  }
  return out;
}

FreeWord split_alternating(const ColorWord& w) {
  FreeWord out;
  int bal = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    bal += w[i] == Color::White ? 1 : -1;
    if (bal != 0) continue;
    const std::uint8_t factor = w[start] == Color::White ? 0 : 1;
    const ColorWord piece = w.subword(start, i + 1 - start);
    if (!out.empty() && out.back().factor == factor)
      out.back().label = out.back().label + piece;
    else
      out.push_back({factor, piece});
    start = i + 1;
  }
  if (bal != 0) throw NotInSet(w.str() + " is not balanced");
  return out;
}

ColorWord concatenate(const FreeWord& x) {
  ColorWord out;
  for (const auto& a : x) out = out + a.label;
  return out;
}

}  // namespace qsub
