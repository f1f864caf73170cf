#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsub/errors.hpp"
#include "qsub/qgraph.hpp"

using namespace qsub;
using Eigen::MatrixXd;

namespace {

QuadraticNumber R(long a) { return QuadraticNumber(Rational(a)); }
QuadraticNumber Q(long a, long b, std::uint32_t d) { return QuadraticNumber(Rational(a), Rational(b), d); }

// The whole tree as dense real matrices in a basis of matrix units.
struct DenseTree {
  std::vector<std::size_t> offset, side;  // side: N^i (matrix units are side x side or diagonal)
  std::size_t dim = 0;
  bool classical;
  MatrixXd gram, mult, lift;  // mult: dim x dim^2
  std::vector<std::pair<std::size_t, std::size_t>> unit;  // (row, col) of each basis element
  std::vector<std::size_t> level_of;
};

DenseTree build(bool classical, unsigned n, std::size_t depth, bool weighted) {
  DenseTree t;
  t.classical = classical;
  const double delta = classical ? std::sqrt(double(n)) : double(n);
  double dk = 0;
  for (std::size_t i = 0; i <= depth; ++i) dk += std::pow(delta, double(i));
  std::size_t side = 1;
  for (std::size_t i = 0; i <= depth; ++i, side *= n) {
    t.offset.push_back(t.dim);
    t.side.push_back(side);
    for (std::size_t a = 0; a < side; ++a)
      for (std::size_t b = 0; b < side; ++b)
        if (!classical || a == b) {
          t.unit.emplace_back(a, b);
          t.level_of.push_back(i);
        }
    t.dim = t.unit.size();
  }
  t.gram = MatrixXd::Zero(t.dim, t.dim);
  t.mult = MatrixXd::Zero(t.dim, t.dim * t.dim);
  t.lift = MatrixXd::Zero(t.dim, t.dim);
  auto index = [&](std::size_t level, std::size_t a, std::size_t b) {
    for (std::size_t x = t.offset[level]; x < t.dim && t.level_of[x] == level; ++x)
      if (t.unit[x] == std::make_pair(a, b)) return x;
    FAIL("missing unit");
    return std::size_t{0};
  };
  for (std::size_t x = 0; x < t.dim; ++x)
    for (std::size_t y = 0; y < t.dim; ++y) {
      if (t.level_of[x] != t.level_of[y]) continue;
      const std::size_t i = t.level_of[x];
      auto [a, b] = t.unit[x];
      auto [c, d] = t.unit[y];
      // x y = delta_bc e_ad; psi^{(x)i}(e_ad) = delta_ad / side
      if (b == c) t.mult(index(i, a, d), x * t.dim + y) = 1;
      // <x, y> = psi(x* y), x* = e_ba
      const double w = weighted ? std::pow(delta, double(i)) / dk : 1.0;
      if (a == c && b == d) t.gram(x, y) = w / double(t.side[i]);
    }
  for (std::size_t x = 0; x < t.dim; ++x) {
    const std::size_t i = t.level_of[x];
    if (i == depth) continue;
    auto [a, b] = t.unit[x];
    // x (x) 1 in the next level: row a*n + c, col b*n + c
    for (std::size_t c = 0; c < n; ++c) t.lift(index(i + 1, a * n + c, b * n + c), x) = 1;
  }
  return t;
}

struct DenseConstants {
  std::vector<double> identity, lift;
  double residual;
};

DenseConstants dense_constants(const DenseTree& t, std::size_t depth) {
  const std::size_t D = t.dim;
  Eigen::MatrixXd g2(D * D, D * D);
  g2 = Eigen::kroneckerProduct(t.gram, t.gram);
  MatrixXd mstar = g2.inverse() * t.mult.transpose() * t.gram;
  MatrixXd A = MatrixXd::Identity(D, D) + t.lift;
  MatrixXd AA(D * D, D * D);
  AA = Eigen::kroneckerProduct(A, A);
  MatrixXd L = t.mult * AA * mstar;
  // basis of candidate operators: Id_i and A_i
  std::vector<MatrixXd> ops;
  for (std::size_t i = 0; i <= depth; ++i) {
    MatrixXd id = MatrixXd::Zero(D, D);
    for (std::size_t x = 0; x < D; ++x)
      if (t.level_of[x] == i) id(x, x) = 1;
    ops.push_back(id);
  }
  for (std::size_t i = 0; i < depth; ++i) {
    MatrixXd li = MatrixXd::Zero(D, D);
    for (std::size_t x = 0; x < D; ++x)
      if (t.level_of[x] == i) li.col(x) = t.lift.col(x);
    ops.push_back(li);
  }
  MatrixXd basis(D * D, ops.size());
  for (std::size_t j = 0; j < ops.size(); ++j) basis.col(j) = Eigen::Map<const Eigen::VectorXd>(ops[j].data(), D * D);
  Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(L.data(), D * D);
  Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(target);
  DenseConstants out;
  out.residual = (basis * coef - target).norm();
  for (std::size_t i = 0; i <= depth; ++i) out.identity.push_back(coef[i]);
  for (std::size_t i = 0; i < depth; ++i) out.lift.push_back(coef[depth + 1 + i]);
  return out;
}

}  // namespace

TEST_CASE("quadratic numbers") {
  auto s2 = QuadraticNumber::sqrt_of(2);
  CHECK((R(1) + s2) * (R(1) + s2) == Q(3, 2, 2));
  CHECK(QuadraticNumber::sqrt_of(12) == Q(0, 2, 3));
  CHECK(QuadraticNumber::sqrt_of(4) == R(2));
  CHECK((Q(3, 2, 2) / (R(1) + s2)) == R(1) + s2);
  CHECK((R(1) + s2).pow(3) == (R(1) + s2) * (R(1) + s2) * (R(1) + s2));
  CHECK(std::abs((R(1) + s2).to_double() - (1 + std::sqrt(2.0))) < 1e-15);
  CHECK((R(1) - s2).is_positive() == false);
  CHECK((R(2) - s2).is_positive());
  CHECK(Q(1, 1, 2).str() == "1+1*sqrt(2)");
  CHECK(R(3).str() == "3");
}

TEST_CASE("tree shapes and delta_k") {
  QuantumTree c2(QuantumSpace::classical(2), 1);
  CHECK(c2.level_dim(0) == 1);
  CHECK(c2.level_dim(1) == 2);
  CHECK(c2.delta_k() == R(1) + QuadraticNumber::sqrt_of(2));
  QuantumTree m2(QuantumSpace::matrix(2), 2);
  CHECK(m2.level_dim(1) == 4);
  CHECK(m2.level_dim(2) == 16);
  CHECK(m2.delta_k() == R(7));
  QuantumTree c3(QuantumSpace::classical(3), 0);
  CHECK(c3.dim() == 1);
}

TEST_CASE("depth zero is the one-point space") {
  for (auto conv : {AdjointConvention::Weighted, AdjointConvention::PerLevel}) {
    auto s = schur_constants(QuantumSpace::classical(3), 0, conv);
    REQUIRE(s.levels.size() == 1);
    CHECK(s.decomposes);
    CHECK(s.levels[0].mm_star == R(1));
    CHECK(s.matches_claim);
  }
}

TEST_CASE("exact constants agree with a dense numerical model") {
  struct Case {
    bool classical;
    unsigned n;
    std::size_t depth;
  };
  for (auto cs : {Case{true, 2, 1}, Case{true, 2, 2}, Case{true, 3, 2}, Case{false, 2, 1}, Case{false, 2, 2}})
    for (auto conv : {AdjointConvention::Weighted, AdjointConvention::PerLevel}) {
      auto base = cs.classical ? QuantumSpace::classical(cs.n) : QuantumSpace::matrix(cs.n);
      auto s = schur_constants(base, cs.depth, conv);
      auto t = build(cs.classical, cs.n, cs.depth, conv == AdjointConvention::Weighted);
      auto d = dense_constants(t, cs.depth);
      CAPTURE(base.str());
      CAPTURE(cs.depth);
      CHECK(s.decomposes);
      CHECK(d.residual < 1e-8);
      REQUIRE(s.levels.size() == cs.depth + 1);
      for (std::size_t i = 0; i <= cs.depth; ++i) {
        CHECK(std::abs(s.levels[i].identity.to_double() - d.identity[i]) < 1e-8);
        if (i < cs.depth) CHECK(std::abs(s.levels[i].lift.to_double() - d.lift[i]) < 1e-8);
      }
    }
}

TEST_CASE("verdict reflects level dependence") {
  auto s = schur_constants(QuantumSpace::classical(2), 1, AdjointConvention::Weighted);
  CHECK(s.claimed == s.delta_k * s.delta_k);
  bool all_equal = true;
  for (const auto& l : s.levels) all_equal = all_equal && l.identity == s.claimed;
  CHECK(s.matches_claim == all_equal);
  CHECK(s.level_dependent == !(s.levels.front().identity == s.levels.back().identity));
  CHECK_FALSE(s.verdict.empty());
}

TEST_CASE("rescaling the state divides the constants") {
  const auto lambda = R(3);
  for (auto conv : {AdjointConvention::Weighted, AdjointConvention::PerLevel}) {
    auto a = schur_constants(QuantumSpace::matrix(2), 1, conv);
    auto b = schur_constants(QuantumSpace::matrix(2), 1, conv, lambda);
    for (std::size_t i = 0; i < a.levels.size(); ++i) {
      CHECK(b.levels[i].identity == a.levels[i].identity / lambda);
      CHECK(b.levels[i].mm_star == a.levels[i].mm_star / lambda);
    }
  }
}

TEST_CASE("tree checks") {
  for (auto base : {QuantumSpace::classical(2), QuantumSpace::classical(3), QuantumSpace::matrix(2)}) {
    auto c = tree_checks(base, 2);
    CHECK(c.delta_form);
    CHECK(c.state_unital);
    CHECK(c.state_positive);
    CHECK(c.adjacency_self_adjoint_preserving);
  }
}

TEST_CASE("classical trees") {
  auto g = classical_graph(2, 1);
  CHECK(g.vertices.size() == 3);
  CHECK(g.edges.size() == 2);
  for (auto [p, c] : g.edges) CHECK(g.vertices[p].empty());
  auto g2 = classical_graph(2, 2);
  CHECK(g2.vertices.size() == 7);
  std::map<std::size_t, std::size_t> children;
  for (auto [p, c] : g2.edges) ++children[p];
  for (std::size_t v = 0; v < g2.vertices.size(); ++v)
    if (g2.vertices[v].size() == 1) CHECK(children[v] == 2);
  auto star = classical_graph(3, 1);
  CHECK(star.vertices.size() == 4);
  CHECK(star.edges.size() == 3);
  for (unsigned n = 2; n <= 3; ++n)
    for (std::size_t k = 0; k <= 3; ++k) {
      auto t = classical_graph(n, k);
      std::size_t expect = (static_cast<std::size_t>(std::pow(n, k + 1)) - 1) / (n - 1);
      CHECK(t.vertices.size() == expect);
      CHECK(t.binary);
      for (auto [p, c] : t.edges) {
        const auto& pv = t.vertices[p];
        const auto& cv = t.vertices[c];
        REQUIRE(cv.size() == pv.size() + 1);
        CHECK(std::equal(pv.begin(), pv.end(), cv.begin()));
      }
    }
}

TEST_CASE("unitary actions") {
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  auto r = action_commutes(2, 2, id, 1e-12);
  CHECK(r.commutes);
  CHECK(r.max_error < 1e-15);
  ComplexMatrix phases = ComplexMatrix::Zero(2, 2);
  phases(0, 0) = std::polar(1.0, 0.3);
  phases(1, 1) = std::polar(1.0, -1.1);
  CHECK(action_commutes(2, 2, phases, 1e-12).commutes);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto v = haar_unitary(2, seed);
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);
    CHECK(action_commutes(2, 2, v, 1e-9).commutes);
  }
  CHECK(haar_unitary(3, 5) == haar_unitary(3, 5));
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(action_commutes(2, 1, bad, 1e-9), NotUnitary);
}
