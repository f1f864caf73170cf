#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "oracles.hpp"
#include "qsub/categories.hpp"
#include "qsub/errors.hpp"
#include "qsub/linreal.hpp"

using namespace qsub;
using boost::multiprecision::cpp_rational;

static ColoredPartition P(const char* s) { return ColoredPartition::parse(s); }
static ColorWord W(const char* s) { return ColorWord::parse(s); }

namespace {

// delta_p(i, j) from the definition: equal indices on every block.
bool delta(const ColoredPartition& p, std::uint64_t row, std::uint64_t col, unsigned n) {
  const std::size_t k = p.upper_size(), l = p.lower_size();
  std::vector<std::uint64_t> idx(k + l);
  for (std::size_t i = k; i-- > 0; col /= n) idx[i] = col % n;
  for (std::size_t i = l; i-- > 0; row /= n) idx[k + i] = row % n;
  for (std::size_t a = 0; a < k + l; ++a)
    for (std::size_t b = a + 1; b < k + l; ++b)
      if (p.block_of(a) == p.block_of(b) && idx[a] != idx[b]) return false;
  return true;
}

std::size_t rational_rank(std::vector<std::vector<cpp_rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c] != 0) {
        cpp_rational f = m[r][c] / m[rank][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
      }
    ++rank;
  }
  return rank;
}

std::size_t brute_rank(const std::vector<ColoredPartition>& ps, unsigned n) {
  std::vector<std::vector<cpp_rational>> rows;
  for (const auto& p : ps) {
    std::uint64_t R = 1, C = 1;
    for (std::size_t i = 0; i < p.lower_size(); ++i) R *= n;
    for (std::size_t i = 0; i < p.upper_size(); ++i) C *= n;
    std::vector<cpp_rational> row;
    for (std::uint64_t r = 0; r < R; ++r)
      for (std::uint64_t c = 0; c < C; ++c) row.push_back(delta(p, r, c, n) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rational_rank(rows);
}

std::uint64_t bell(int n) { return oracle::set_partitions(n).size(); }

}  // namespace

TEST_CASE("realization examples") {
  for (unsigned n = 1; n <= 4; ++n) {
    auto id = to_dense(realize(identity(Color::White), n));
    CHECK(id.rows == n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) CHECK(id.at(i, j) == (i == j));
    auto cup = to_dense(realize(adjoint(duality(Color::White, Color::Black)), n));
    CHECK(cup.rows == n * n);
    CHECK(cup.cols == 1);
    for (unsigned r = 0; r < n * n; ++r) CHECK(cup.at(r, 0) == (r / n == r % n));
  }
  CHECK(realize(P("oo;oo;1,1,1,1"), 3).nnz() == 3);
}

TEST_CASE("realization agrees with the index definition") {
  for (unsigned n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k <= 2; ++k)
      for (std::size_t l = 0; l + k <= 4; ++l)
        for (const auto& p : all_partitions(k, l)) {
          auto m = realize(p, n);
          std::uint64_t nnz = 0;
          for (std::uint64_t r = 0; r < m.rows(); ++r)
            for (std::uint64_t c = 0; c < m.cols(); ++c) {
              bool d = delta(p, r, c, n);
              nnz += d;
              CHECK(m.entry(r, c) == d);
            }
          CHECK(m.nnz() == nnz);
          std::uint64_t expect = 1;
          for (std::size_t b = 0; b < p.block_count(); ++b) expect *= n;
          CHECK(m.nnz() == expect);
        }
}

TEST_CASE("realize rejects oversized frames") {
  CHECK_THROWS_AS(realize(identity_on(ColorWord::repeat(Color::White, 14)), 4), TooLarge);
}

TEST_CASE("composition examples") {
  const auto D = duality(Color::White, Color::Black);
  for (unsigned n = 1; n <= 4; ++n) {
    auto m = compose_maps(realize(D, n), realize(adjoint(D), n));
    REQUIRE(m.rows == 1);
    REQUIRE(m.cols == 1);
    CHECK(m.at(0, 0) == n);
  }
  auto pw = realize(word_partition(W("ox")), 3);
  CHECK(compose_maps(pw, pw) == to_dense(pw));
}

TEST_CASE("dense helpers") {
  IntMatrix a{2, 2, {1, 2, 3, 4}}, b{2, 1, {1, 1}};
  CHECK(multiply(a, b) == IntMatrix{2, 1, {3, 7}});
  CHECK(transpose(a) == IntMatrix{2, 2, {1, 3, 2, 4}});
  CHECK(kron(b, b) == IntMatrix{4, 1, {1, 1, 1, 1}});
  CHECK(scaled(a, 2) == IntMatrix{2, 2, {2, 4, 6, 8}});
  CHECK_THROWS_AS(multiply(a, transpose(b)), ShapeMismatch);
}

TEST_CASE("all partitions") {
  for (std::size_t k = 0; k <= 3; ++k)
    for (std::size_t l = 0; l <= 3; ++l) CHECK(all_partitions(k, l).size() == bell(static_cast<int>(k + l)));
}

TEST_CASE("laws hold at small size") {
  for (unsigned n : {2u, 3u}) {
    auto rep = check_laws(n, 5);
    CHECK(rep.passed());
    CHECK(rep.failures.empty());
    CHECK(rep.orientation == LoopOrientation::ComposedIsScaled);
    CHECK(rep.loop_with_loops > 0);
  }
}

TEST_CASE("rank examples") {
  std::vector<ColoredPartition> nc4 = enumerate(CategoryName::NC, ColorWord{}, W("oooo"));
  CHECK(rank_of_partitions(nc4, 4) == 14);
  auto r2 = rank_of_partitions(nc4, 2);
  CHECK(r2 <= 14);
  CHECK(r2 == brute_rank(nc4, 2));
  std::vector<PartitionMap> one = {realize(P("o;o;1,2"), 3)};
  CHECK(rank(one) == 1);
}

TEST_CASE("rank routes agree with rational elimination") {
  for (unsigned n : {1u, 2u, 3u})
    for (std::size_t k = 0; k <= 2; ++k)
      for (std::size_t l = 0; l + k <= 4; ++l) {
        auto ps = all_partitions(k, l);
        std::vector<PartitionMap> maps;
        for (const auto& p : ps) maps.push_back(realize(p, n));
        auto ref = brute_rank(ps, n);
        CHECK(rank(maps) == ref);
        CHECK(rank_explicit(maps) == ref);
        CHECK(rank_of_partitions(ps, n) == ref);
      }
}

TEST_CASE("exact rank of integer matrices") {
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(exact_rank({}) == 0);
  // entries past double precision
  const std::int64_t big = (std::int64_t{1} << 40) + 1;
  CHECK(exact_rank({{big, big - 1}, {big + 1, big}}) == 2);
  CHECK(exact_rank({{big, 2 * big}, {3 * big, 6 * big}}) == 1);
}

TEST_CASE("fixed vectors") {
  CHECK(fixed_points_dim(W("ox"), 4) == 1);
  // only (1,4)(2,3) pairs opposite colors without crossing
  CHECK(fixed_points_dim(W("ooxx"), 4) == 1);
  CHECK(fixed_points_dim(W("oxox"), 4) == 2);
  CHECK(fixed_points_dim(W("oo"), 4) == 0);
  for (const auto& w : all_words(6)) CHECK(fixed_points_dim(w, 4) == oracle::cu_vectors(w));
}
