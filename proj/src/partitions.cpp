#include "qsub/partitions.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "qsub/errors.hpp"
#include "qsub/union_find.hpp"

namespace qsub {

namespace {

constexpr std::uint8_t kUnset = 0xff;

// Relabels block ids to first-appearance order; returns the number of blocks.
std::size_t canonicalize(std::vector<std::uint8_t>& blocks) {
  std::array<std::uint8_t, 256> map;
  map.fill(kUnset);
  std::uint8_t next = 0;
  for (auto& b : blocks) {
    if (map[b] == kUnset) map[b] = next++;
    b = map[b];
  }
  return next;
}

}  // namespace

ColoredPartition::ColoredPartition(ColorWord upper, ColorWord lower, std::vector<std::uint8_t> blocks)
    : upper_(std::move(upper)), lower_(std::move(lower)), blocks_(std::move(blocks)) {
  if (blocks_.size() != upper_.size() + lower_.size())
    throw PreconditionViolated("block list has " + std::to_string(blocks_.size()) + " entries for " +
                               std::to_string(upper_.size() + lower_.size()) + " points");
  if (blocks_.size() > 250) throw TooLarge("partition with more than 250 points");
  block_count_ = canonicalize(blocks_);
}

ColoredPartition ColoredPartition::parse(std::string_view text) {
  auto s1 = text.find(';');
  auto s2 = s1 == std::string_view::npos ? s1 : text.find(';', s1 + 1);
  if (s2 == std::string_view::npos) throw ParseError("partition needs upper;lower;blocks: \"" + std::string(text) + "\"");
  ColorWord up = ColorWord::parse(text.substr(0, s1));
  ColorWord lo = ColorWord::parse(text.substr(s1 + 1, s2 - s1 - 1));
  std::string_view rest = text.substr(s2 + 1);
  std::vector<std::uint8_t> blocks;
  while (!rest.empty()) {
    auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0 || v > 250)
      throw ParseError("bad block label \"" + std::string(tok) + "\"");
    blocks.push_back(static_cast<std::uint8_t>(v - 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (blocks.size() != up.size() + lo.size())
    throw ParseError(std::to_string(blocks.size()) + " block labels for " + std::to_string(up.size() + lo.size()) +
                     " points: \"" + std::string(text) + "\"");
  return ColoredPartition(std::move(up), std::move(lo), std::move(blocks));
}

std::string ColoredPartition::str() const {
  std::string s = upper_.str() + ";" + lower_.str() + ";";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(blocks_[i] + 1);
  }
  return s;
}

std::size_t ColoredPartitionHash::operator()(const ColoredPartition& p) const noexcept {
  ColorWordHash wh;
  std::size_t h = wh(p.upper()) * 31 + wh(p.lower());
  for (auto b : p.blocks()) h = h * 1099511628211ull + b + 1;
  return h;
}

ColoredPartition identity(Color c) {
  return ColoredPartition(ColorWord({c}), ColorWord({c}), {0, 0});
}

ColoredPartition duality(Color left, Color right) {
  if (left == right) throw ColorMismatch("duality pairing needs two different colors");
  return ColoredPartition(ColorWord({left, right}), ColorWord(), {0, 0});
}

ColoredPartition word_partition(const ColorWord& w) { return identity_on(w); }

ColoredPartition identity_on(const ColorWord& w) {
  std::vector<std::uint8_t> b(2 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i) b[i] = b[w.size() + i] = static_cast<std::uint8_t>(i);
  return ColoredPartition(w, w, std::move(b));
}

ColoredPartition one_block(const ColorWord& upper, const ColorWord& lower) {
  return ColoredPartition(upper, lower, std::vector<std::uint8_t>(upper.size() + lower.size(), 0));
}

ColoredPartition all_singletons(const ColorWord& upper, const ColorWord& lower) {
  std::vector<std::uint8_t> b(upper.size() + lower.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<std::uint8_t>(i);
  return ColoredPartition(upper, lower, std::move(b));
}

ColoredPartition tensor(const ColoredPartition& p, const ColoredPartition& q) {
  const auto shift = static_cast<std::uint8_t>(p.block_count());
  const std::size_t kp = p.upper_size(), kq = q.upper_size();
  std::vector<std::uint8_t> b;
  b.reserve(p.size() + q.size());
  for (std::size_t i = 0; i < kp; ++i) b.push_back(p.block_of(i));
  for (std::size_t i = 0; i < kq; ++i) b.push_back(q.block_of(i) + shift);
  for (std::size_t i = kp; i < p.size(); ++i) b.push_back(p.block_of(i));
  for (std::size_t i = kq; i < q.size(); ++i) b.push_back(q.block_of(i) + shift);
  return ColoredPartition(p.upper() + q.upper(), p.lower() + q.lower(), std::move(b));
}

Composition compose(const ColoredPartition& q, const ColoredPartition& p) {
  if (p.lower_size() != q.upper_size())
    throw ShapeMismatch("cannot stack " + q.str() + " below " + p.str());
  if (p.lower() != q.upper())
    throw ColorMismatch("cannot stack " + q.str() + " below " + p.str());
  const std::size_t k = p.upper_size(), m = p.lower_size(), l = q.lower_size();
  const std::size_t off = p.size();
  detail::UnionFind uf(p.size() + q.size());
  // join points of equal block inside each factor, then the middle row
  std::array<std::size_t, 256> first;
  first.fill(SIZE_MAX);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto b = p.block_of(i);
    if (first[b] == SIZE_MAX) first[b] = i; else uf.unite(first[b], i);
  }
  first.fill(SIZE_MAX);
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto b = q.block_of(i);
    if (first[b] == SIZE_MAX) first[b] = off + i; else uf.unite(first[b], off + i);
  }
  for (std::size_t i = 0; i < m; ++i) uf.unite(k + i, off + i);

  std::vector<std::size_t> outer;
  outer.reserve(k + l);
  for (std::size_t i = 0; i < k; ++i) outer.push_back(uf.find(i));
  for (std::size_t i = 0; i < l; ++i) outer.push_back(uf.find(off + m + i));

  std::vector<std::size_t> middle_roots;
  for (std::size_t i = 0; i < m; ++i) {
    auto r = uf.find(k + i);
    if (std::find(outer.begin(), outer.end(), r) == outer.end() &&
        std::find(middle_roots.begin(), middle_roots.end(), r) == middle_roots.end())
      middle_roots.push_back(r);
  }

  std::vector<std::size_t> roots;
  std::vector<std::uint8_t> b(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    auto it = std::find(roots.begin(), roots.end(), outer[i]);
    if (it == roots.end()) {
      b[i] = static_cast<std::uint8_t>(roots.size());
      roots.push_back(outer[i]);
    } else {
      b[i] = static_cast<std::uint8_t>(it - roots.begin());
    }
  }
  return {ColoredPartition(p.upper(), q.lower(), std::move(b)), middle_roots.size()};
}

ColoredPartition operator*(const ColoredPartition& q, const ColoredPartition& p) {
  return compose(q, p).result;
}

ColoredPartition adjoint(const ColoredPartition& p) {
  const std::size_t k = p.upper_size();
  std::vector<std::uint8_t> b;
  b.reserve(p.size());
  for (std::size_t i = k; i < p.size(); ++i) b.push_back(p.block_of(i));
  for (std::size_t i = 0; i < k; ++i) b.push_back(p.block_of(i));
  return ColoredPartition(p.lower(), p.upper(), std::move(b));
}

ColoredPartition reverse(const ColoredPartition& p) {
  const std::size_t k = p.upper_size(), l = p.lower_size();
  std::vector<std::uint8_t> b;
  b.reserve(p.size());
  for (std::size_t i = 0; i < k; ++i) b.push_back(p.block_of(k - 1 - i));
  for (std::size_t i = 0; i < l; ++i) b.push_back(p.block_of(k + l - 1 - i));
  return ColoredPartition(p.upper().conjugate(), p.lower().conjugate(), std::move(b));
}

ColoredPartition rotate(const ColoredPartition& p, Corner corner) {
  const std::size_t k = p.upper_size(), l = p.lower_size();
  const auto& bl = p.blocks();
  std::vector<std::uint8_t> b;
  b.reserve(p.size());
  switch (corner) {
    case Corner::UpperLeftDown: {
      if (k == 0) throw EmptyRow("no upper point to rotate");
      b.insert(b.end(), bl.begin() + 1, bl.begin() + k);
      b.push_back(bl[0]);
      b.insert(b.end(), bl.begin() + k, bl.end());
      return ColoredPartition(p.upper().subword(1, k - 1),
                              ColorWord({flip(p.upper()[0])}) + p.lower(), std::move(b));
    }
    case Corner::LowerLeftUp: {
      if (l == 0) throw EmptyRow("no lower point to rotate");
      b.push_back(bl[k]);
      b.insert(b.end(), bl.begin(), bl.begin() + k);
      b.insert(b.end(), bl.begin() + k + 1, bl.end());
      return ColoredPartition(ColorWord({flip(p.lower()[0])}) + p.upper(),
                              p.lower().subword(1, l - 1), std::move(b));
    }
    case Corner::UpperRightDown: {
      if (k == 0) throw EmptyRow("no upper point to rotate");
      b.insert(b.end(), bl.begin(), bl.begin() + k - 1);
      b.insert(b.end(), bl.begin() + k, bl.end());
      b.push_back(bl[k - 1]);
      return ColoredPartition(p.upper().subword(0, k - 1),
                              p.lower() + ColorWord({flip(p.upper()[k - 1])}), std::move(b));
    }
    case Corner::LowerRightUp: {
      if (l == 0) throw EmptyRow("no lower point to rotate");
      b.insert(b.end(), bl.begin(), bl.begin() + k);
      b.push_back(bl.back());
      b.insert(b.end(), bl.begin() + k, bl.end() - 1);
      return ColoredPartition(p.upper() + ColorWord({flip(p.lower()[l - 1])}),
                              p.lower().subword(0, l - 1), std::move(b));
    }
  }
  throw PreconditionViolated("unknown corner");
}

ColoredPartition forget_colors(const ColoredPartition& p) {
  return ColoredPartition(ColorWord::repeat(Color::White, p.upper_size()),
                          ColorWord::repeat(Color::White, p.lower_size()), p.blocks());
}

std::vector<std::size_t> circular_order(const ColoredPartition& p) {
  std::vector<std::size_t> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.upper_size(); ++i) out.push_back(i);
  for (std::size_t i = p.size(); i-- > p.upper_size();) out.push_back(i);
  return out;
}

bool is_noncrossing(const ColoredPartition& p) {
  const auto order = circular_order(p);
  std::array<std::size_t, 256> last;
  for (std::size_t i = 0; i < order.size(); ++i) last[p.block_of(order[i])] = i;
  std::array<bool, 256> opened{};
  std::vector<std::uint8_t> stack;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto b = p.block_of(order[i]);
    if (opened[b]) {
      if (stack.empty() || stack.back() != b) return false;
      if (last[b] == i) stack.pop_back();
    } else {
      opened[b] = true;
      if (last[b] != i) stack.push_back(b);
    }
  }
  return true;
}

std::vector<std::size_t> block_sizes(const ColoredPartition& p) {
  std::vector<std::size_t> out(p.block_count(), 0);
  for (auto b : p.blocks()) ++out[b];
  return out;
}

std::size_t through_block_count(const ColoredPartition& p) {
  std::vector<unsigned char> seen(p.block_count(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) seen[p.block_of(i)] |= p.is_upper(i) ? 1 : 2;
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 3));
}

bool is_projective(const ColoredPartition& p) {
  if (p.upper() != p.lower()) return false;
  if (adjoint(p) != p) return false;
  return p * p == p;
}

PartitionStats stats(const ColoredPartition& p) {
  PartitionStats s;
  s.blocks = p.block_count();
  s.through = through_block_count(p);
  s.non_through = s.blocks - s.through;
  s.noncrossing = is_noncrossing(p);
  s.projective = is_projective(p);
  return s;
}

bool is_cu_partition(const ColoredPartition& p) {
  if (!is_noncrossing(p)) return false;
  std::vector<std::size_t> first(p.block_count(), SIZE_MAX);
  std::vector<std::size_t> count(p.block_count(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto b = p.block_of(i);
    if (++count[b] > 2) return false;
    if (first[b] == SIZE_MAX) {
      first[b] = i;
      continue;
    }
    const std::size_t j = first[b];
    const bool same_row = p.is_upper(i) == p.is_upper(j);
    const bool same_color = p.color_of(i) == p.color_of(j);
    if (same_row == same_color) return false;
  }
  return std::all_of(count.begin(), count.end(), [](std::size_t c) { return c == 2; });
}

std::vector<ColoredPartition> through_factorize(const ColoredPartition& p) {
  if (!is_noncrossing(p) || !is_projective(p))
    throw NotFactorizable(p.str() + " is not a noncrossing projective partition");
  const std::size_t k = p.upper_size();
  std::vector<unsigned char> kind(p.block_count(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) kind[p.block_of(i)] |= p.is_upper(i) ? 1 : 2;
  std::vector<std::size_t> max_upper(p.block_count(), 0);
  for (std::size_t i = 0; i < k; ++i) max_upper[p.block_of(i)] = i;

  std::vector<std::size_t> cuts;  // column after which a new factor starts
  std::vector<std::uint8_t> seen_through;
  for (std::size_t i = 0; i < k; ++i) {
    auto b = p.block_of(i);
    if (kind[b] != 3) continue;
    if (std::find(seen_through.begin(), seen_through.end(), b) != seen_through.end()) continue;
    seen_through.push_back(b);
  }
  if (seen_through.empty()) throw NotFactorizable(p.str() + " has no through-block");
  for (std::size_t j = 0; j + 1 < seen_through.size(); ++j) cuts.push_back(max_upper[seen_through[j]] + 1);
  cuts.push_back(k);

  std::vector<ColoredPartition> out;
  std::size_t start = 0;
  for (auto end : cuts) {
    std::vector<std::uint8_t> b;
    for (std::size_t i = start; i < end; ++i) b.push_back(p.block_of(i));
    for (std::size_t i = start; i < end; ++i) b.push_back(p.block_of(k + i));
    // no block may leave the column range
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::size_t col = i < k ? i : i - k;
      if (col >= start && col < end) continue;
      if (std::find(b.begin(), b.end(), p.block_of(i)) != b.end())
        throw NotFactorizable("block crosses a cut in " + p.str());
    }
    out.emplace_back(p.upper().subword(start, end - start), p.lower().subword(start, end - start), std::move(b));
    start = end;
  }
  return out;
}

ColorWord through_word(const ColoredPartition& p) {
  if (!is_cu_partition(p)) throw NotInCU(p.str());
  if (!is_projective(p)) throw PreconditionViolated(p.str() + " is not projective");
  std::vector<unsigned char> kind(p.block_count(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) kind[p.block_of(i)] |= p.is_upper(i) ? 1 : 2;
  std::vector<Color> out;
  for (std::size_t i = 0; i < p.upper_size(); ++i)
    if (kind[p.block_of(i)] == 3) out.push_back(p.upper()[i]);
  return ColorWord(std::move(out));
}

}  // namespace qsub
