#include "qsub/linreal.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>

#include "qsub/categories.hpp"
#include "qsub/errors.hpp"
#include "qsub/union_find.hpp"

namespace qsub {

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

PartitionMap realize(const ColoredPartition& p, unsigned n) {
  if (n == 0) throw PreconditionViolated("N must be positive");
  const std::size_t k = p.upper_size(), l = p.lower_size();
  long double total = 1;
  for (std::size_t i = 0; i < k + l; ++i) total *= n;
  if (total > static_cast<long double>(kMaxRealizedEntries))
    throw TooLarge(std::to_string(n) + "^" + std::to_string(k + l) + " entries");

  PartitionMap m;
  m.p_ = p;
  m.k_ = k;
  m.l_ = l;
  m.n_ = n;
  m.rows_ = ipow(n, l);
  m.cols_ = ipow(n, k);

  // one nonzero per assignment of a value to each block
  const std::size_t b = p.block_count();
  std::vector<std::pair<std::uint64_t, std::uint32_t>> entries;
  entries.reserve(ipow(n, b));
  std::vector<unsigned> val(b, 0);
  for (;;) {
    std::uint64_t src = 0, dst = 0;
    for (std::size_t i = 0; i < k; ++i) src = src * n + val[p.block_of(i)];
    for (std::size_t i = 0; i < l; ++i) dst = dst * n + val[p.block_of(k + i)];
    entries.emplace_back(dst, static_cast<std::uint32_t>(src));
    std::size_t d = 0;
    while (d < b && ++val[d] == n) val[d++] = 0;
    if (d == b) break;
  }
  std::sort(entries.begin(), entries.end());
  m.row_ptr_.assign(m.rows_ + 1, 0);
  m.cols_idx_.reserve(entries.size());
  for (const auto& [r, c] : entries) {
    ++m.row_ptr_[r + 1];
    m.cols_idx_.push_back(c);
  }
  for (std::uint64_t r = 0; r < m.rows_; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

bool PartitionMap::entry(std::uint64_t r, std::uint64_t c) const {
  auto rw = row(r);
  return std::binary_search(rw.begin(), rw.end(), static_cast<std::uint32_t>(c));
}

IntMatrix to_dense(const PartitionMap& m) {
  IntMatrix out{m.rows(), m.cols(), std::vector<std::int64_t>(m.rows() * m.cols(), 0)};
  for (std::uint64_t r = 0; r < m.rows(); ++r)
    for (auto c : m.row(r)) out.at(r, c) = 1;
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw ShapeMismatch("multiply " + std::to_string(a.cols) + " vs " + std::to_string(b.rows));
  IntMatrix out{a.rows, b.cols, std::vector<std::int64_t>(a.rows * b.cols, 0)};
  for (std::uint64_t i = 0; i < a.rows; ++i)
    for (std::uint64_t t = 0; t < a.cols; ++t) {
      const auto v = a.at(i, t);
      if (v == 0) continue;
      for (std::uint64_t j = 0; j < b.cols; ++j) out.at(i, j) += v * b.at(t, j);
    }
  return out;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix out{a.cols, a.rows, std::vector<std::int64_t>(a.data.size())};
  for (std::uint64_t i = 0; i < a.rows; ++i)
    for (std::uint64_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out{a.rows * b.rows, a.cols * b.cols, std::vector<std::int64_t>(a.rows * b.rows * a.cols * b.cols)};
  for (std::uint64_t i = 0; i < a.rows; ++i)
    for (std::uint64_t j = 0; j < a.cols; ++j)
      for (std::uint64_t r = 0; r < b.rows; ++r)
        for (std::uint64_t c = 0; c < b.cols; ++c) out.at(i * b.rows + r, j * b.cols + c) = a.at(i, j) * b.at(r, c);
  return out;
}

IntMatrix scaled(const IntMatrix& a, std::int64_t s) {
  IntMatrix out = a;
  for (auto& v : out.data) v *= s;
  return out;
}

IntMatrix compose_maps(const PartitionMap& second, const PartitionMap& first) {
  if (first.rows() != second.cols()) throw ShapeMismatch("maps do not compose");
  IntMatrix out{second.rows(), first.cols(), std::vector<std::int64_t>(second.rows() * first.cols(), 0)};
  for (std::uint64_t r = 0; r < second.rows(); ++r)
    for (auto mid : second.row(r))
      for (auto c : first.row(mid)) ++out.at(r, c);
  return out;
}

std::vector<ColoredPartition> all_partitions(std::size_t k, std::size_t l) {
  const std::size_t n = k + l;
  const ColorWord up = ColorWord::repeat(Color::White, k), lo = ColorWord::repeat(Color::White, l);
  std::vector<ColoredPartition> out;
  std::vector<std::uint8_t> rgs(n, 0);
  std::function<void(std::size_t, std::uint8_t)> rec = [&](std::size_t i, std::uint8_t used) {
    if (i == n) {
      out.emplace_back(up, lo, rgs);
      return;
    }
    for (std::uint8_t b = 0; b <= used && b < 255; ++b) {
      rgs[i] = b;
      rec(i + 1, b == used ? static_cast<std::uint8_t>(used + 1) : used);
    }
  };
  rec(0, 0);
  return out;
}

std::string to_string(LoopOrientation o) {
  switch (o) {
    case LoopOrientation::ComposedIsScaled: return "T_q o T_p = N^loops T_qp";
    case LoopOrientation::ResultIsScaled: return "T_qp = N^loops T_q o T_p";
    case LoopOrientation::Inconsistent: return "inconsistent";
  }
  return "?";
}

LawReport check_laws(unsigned n, std::size_t max_points) {
  LawReport rep;
  rep.n = n;
  rep.max_points = max_points;

  // partitions grouped by frame (k, l)
  std::vector<std::vector<std::vector<ColoredPartition>>> by_frame(max_points + 1);
  std::vector<std::vector<std::vector<IntMatrix>>> dense(max_points + 1);
  for (std::size_t k = 0; k <= max_points; ++k) {
    by_frame[k].resize(max_points + 1);
    dense[k].resize(max_points + 1);
    for (std::size_t l = 0; k + l <= max_points; ++l) {
      by_frame[k][l] = all_partitions(k, l);
      for (const auto& p : by_frame[k][l]) dense[k][l].push_back(to_dense(realize(p, n)));
    }
  }
  auto dense_of = [&](const ColoredPartition& p) { return to_dense(realize(p, n)); };

  for (std::size_t k = 0; k <= max_points; ++k)
    for (std::size_t l = 0; k + l <= max_points; ++l)
      for (std::size_t i = 0; i < by_frame[k][l].size(); ++i) {
        ++rep.adjoint_checked;
        const auto& p = by_frame[k][l][i];
        if (dense_of(adjoint(p)) != transpose(dense[k][l][i])) rep.failures.push_back("adjoint " + p.str());
      }

  for (std::size_t k1 = 0; k1 <= max_points; ++k1)
    for (std::size_t l1 = 0; k1 + l1 <= max_points; ++l1)
      for (std::size_t k2 = 0; k1 + l1 + k2 <= max_points; ++k2)
        for (std::size_t l2 = 0; k1 + l1 + k2 + l2 <= max_points; ++l2)
          for (std::size_t i = 0; i < by_frame[k1][l1].size(); ++i)
            for (std::size_t j = 0; j < by_frame[k2][l2].size(); ++j) {
              ++rep.tensor_checked;
              const auto& p = by_frame[k1][l1][i];
              const auto& q = by_frame[k2][l2][j];
              if (dense_of(tensor(p, q)) != kron(dense[k1][l1][i], dense[k2][l2][j]))
                rep.failures.push_back("tensor " + p.str() + " (x) " + q.str());
            }

  bool composed_scaled = true, result_scaled = true;
  for (std::size_t k = 0; k <= max_points; ++k)
    for (std::size_t m = 0; k + m <= max_points; ++m)
      for (std::size_t l = 0; k + m + l <= max_points; ++l)
        for (std::size_t i = 0; i < by_frame[k][m].size(); ++i)
          for (std::size_t j = 0; j < by_frame[m][l].size(); ++j) {
            const auto& p = by_frame[k][m][i];
            const auto& q = by_frame[m][l][j];
            ++rep.loop_checked;
            auto [qp, loops] = compose(q, p);
            if (loops > 0) ++rep.loop_with_loops;
            const auto factor = static_cast<std::int64_t>(ipow(n, loops));
            const IntMatrix lhs = multiply(dense[m][l][j], dense[k][m][i]);
            const IntMatrix rhs = dense_of(qp);
            if (lhs != scaled(rhs, factor)) composed_scaled = false;
            if (rhs != scaled(lhs, factor)) result_scaled = false;
            if (lhs != scaled(rhs, factor) && rhs != scaled(lhs, factor))
              rep.failures.push_back("loop " + q.str() + " . " + p.str());
          }
  if (composed_scaled && !result_scaled)
    rep.orientation = LoopOrientation::ComposedIsScaled;
  else if (result_scaled && !composed_scaled)
    rep.orientation = LoopOrientation::ResultIsScaled;
  else
    rep.orientation = LoopOrientation::Inconsistent;
  return rep;
}

// ---------------------------------------------------------------------------
// Exact rank

namespace {

using Big = boost::multiprecision::cpp_int;
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::size_t rank_mod_prime(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t m = rows.size(), n = rows[0].size();
  std::vector<std::vector<std::uint64_t>> a(m, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto v = rows[i][j] % static_cast<std::int64_t>(kPrime);
      a[i][j] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(kPrime) : v);
    }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = powmod(a[rank][col], kPrime - 2);
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = mulmod(a[i][col], inv);
      for (std::size_t j = col; j < n; ++j)
        a[i][j] = (a[i][j] + kPrime - mulmod(f, a[rank][j])) % kPrime;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_bareiss(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t m = rows.size(), n = rows[0].size();
  std::vector<std::vector<Big>> a(m, std::vector<Big>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
  Big prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::size_t join_blocks(const ColoredPartition& p, const ColoredPartition& q) {
  detail::UnionFind uf(p.size());
  std::vector<std::size_t> fp(p.block_count(), SIZE_MAX), fq(q.block_count(), SIZE_MAX);
  std::size_t blocks = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto b = p.block_of(i);
    if (fp[b] == SIZE_MAX) fp[b] = i; else if (uf.unite(fp[b], i)) --blocks;
    auto c = q.block_of(i);
    if (fq[c] == SIZE_MAX) fq[c] = i; else if (uf.unite(fq[c], i)) --blocks;
  }
  return blocks;
}

}  // namespace

std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t full = std::min(rows.size(), rows[0].size());
  // a nonzero minor mod p is a nonzero minor over the integers
  if (rank_mod_prime(rows) == full) return full;
  return rank_bareiss(rows);
}

std::size_t rank(std::span<const PartitionMap> maps) {
  const std::size_t m = maps.size();
  std::vector<std::vector<std::int64_t>> gram(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const auto& a = maps[i];
      const auto& b = maps[j];
      if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("rank over maps of different shapes");
      std::int64_t dot = 0;
      for (std::uint64_t r = 0; r < a.rows(); ++r) {
        auto x = a.row(r), y = b.row(r);
        std::size_t s = 0, t = 0;
        while (s < x.size() && t < y.size()) {
          if (x[s] < y[t]) ++s;
          else if (y[t] < x[s]) ++t;
          else { ++dot; ++s; ++t; }
        }
      }
      gram[i][j] = gram[j][i] = dot;
    }
  }
  return exact_rank(gram);
}

std::size_t rank_of_partitions(std::span<const ColoredPartition> parts, unsigned n) {
  const std::size_t m = parts.size();
  if (m == 0) return 0;
  std::vector<std::int64_t> powers(parts[0].size() + 1, 1);
  for (std::size_t i = 1; i < powers.size(); ++i) powers[i] = powers[i - 1] * n;
  std::vector<std::vector<std::int64_t>> gram(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      if (parts[i].upper_size() != parts[j].upper_size() || parts[i].lower_size() != parts[j].lower_size())
        throw ShapeMismatch("rank over partitions of different frames");
      gram[i][j] = gram[j][i] = powers[join_blocks(parts[i], parts[j])];
    }
  return exact_rank(gram);
}

std::size_t rank_explicit(std::span<const PartitionMap> maps) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& m : maps) {
    std::vector<std::int64_t> v(m.rows() * m.cols(), 0);
    for (std::uint64_t r = 0; r < m.rows(); ++r)
      for (auto c : m.row(r)) v[r * m.cols() + c] = 1;
    rows.push_back(std::move(v));
  }
  return rank_bareiss(rows);
}

std::size_t fixed_points_dim(const ColorWord& w, unsigned n) {
  const auto parts = enumerate(CategorySpec(CategoryName::CU), ColorWord(), w);
  return rank_of_partitions(parts, n);
}

}  // namespace qsub
