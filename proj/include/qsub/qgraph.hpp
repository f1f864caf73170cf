#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

namespace qsub {

using Rational = boost::multiprecision::cpp_rational;

// a + b sqrt(d) with rational a, b and a squarefree radicand d >= 2
// (d == 1 means the value is rational and b is zero).
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a) : a_(std::move(a)) {}  // NOLINT
  QuadraticNumber(Rational a, Rational b, std::uint32_t d);

  // sqrt(n), simplified: sqrt(12) = 2 sqrt(3), sqrt(4) = 2.
  static QuadraticNumber sqrt_of(std::uint32_t n);

  const Rational& rational_part() const noexcept { return a_; }
  const Rational& surd_part() const noexcept { return b_; }
  std::uint32_t radicand() const noexcept { return d_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_positive() const;
  double to_double() const;

  QuadraticNumber operator+(const QuadraticNumber& o) const;
  QuadraticNumber operator-(const QuadraticNumber& o) const;
  QuadraticNumber operator*(const QuadraticNumber& o) const;
  QuadraticNumber operator/(const QuadraticNumber& o) const;
  QuadraticNumber& operator+=(const QuadraticNumber& o) { return *this = *this + o; }
  QuadraticNumber& operator*=(const QuadraticNumber& o) { return *this = *this * o; }
  QuadraticNumber pow(unsigned e) const;

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }

  // "p/q" for rationals, "a+b*sqrt(d)" otherwise.
  std::string str() const;

 private:
  std::uint32_t common_radicand(const QuadraticNumber& o) const;
  Rational a_ = 0;
  Rational b_ = 0;
  std::uint32_t d_ = 1;
};

// Finite quantum space (B, psi) with an orthogonal basis of matrix units.
struct QuantumSpace {
  enum class Kind : std::uint8_t { Classical, MatrixTrace };
  Kind kind = Kind::Classical;
  std::uint32_t n = 2;

  static QuantumSpace classical(std::uint32_t n) { return {Kind::Classical, n}; }
  static QuantumSpace matrix(std::uint32_t n) { return {Kind::MatrixTrace, n}; }

  std::string str() const;
  std::size_t dim() const { return kind == Kind::Classical ? n : std::size_t{n} * n; }
  // delta with m m* = delta^2 id for the normalized state
  QuadraticNumber delta() const;
};

// Sparse vector of the tree algebra: (level, basis index within the level) -> coefficient.
using TreeVector = std::map<std::pair<std::size_t, std::size_t>, QuadraticNumber>;

enum class AdjointConvention : std::uint8_t {
  Weighted,  // GNS adjoint of the weighted state psi_k
  PerLevel,  // each level with its own psi^{(x)i}
};
std::string to_string(AdjointConvention c);

// The rooted (B, psi)-regular quantum tree of depth k:
// B_k = sum_i B^{(x)i}, psi_k = (1/delta_k) sum_i delta^i psi^{(x)i},
// adjacency Id + sum_i A_i with A_i(x) = x (x) 1.
class QuantumTree {
 public:
  QuantumTree(QuantumSpace base, std::size_t depth, AdjointConvention conv = AdjointConvention::Weighted,
              QuadraticNumber scale = Rational(1));

  const QuantumSpace& base() const noexcept { return base_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t level_dim(std::size_t i) const { return level_dim_[i]; }
  std::size_t dim() const;
  QuadraticNumber delta_k() const;
  QuadraticNumber level_weight(std::size_t i) const { return weight_[i]; }
  // psi_k on the basis element (i, x) before any rescaling of the convention
  QuadraticNumber state(std::size_t level, std::size_t x) const;
  QuadraticNumber norm2(std::size_t level, std::size_t x) const;

  TreeVector multiply(std::size_t level, std::size_t x, std::size_t y) const;
  std::size_t star(std::size_t level, std::size_t x) const;
  TreeVector unit(std::size_t level) const;
  TreeVector adjacency(const TreeVector& v) const;   // Id + sum A_i
  TreeVector lift(const TreeVector& v) const;        // sum A_i
  // m* on a basis element, as a list of ((level, x), (level, y), coefficient)
  struct PairTerm {
    std::size_t level, x, y;
    QuadraticNumber c;
  };
  std::vector<PairTerm> comultiply(std::size_t level, std::size_t x) const;

 private:
  QuantumSpace base_;
  std::size_t depth_;
  AdjointConvention conv_;
  std::vector<std::size_t> level_dim_;
  std::vector<QuadraticNumber> weight_;  // weight of psi^{(x)i} in the inner product
};

struct LevelConstants {
  std::size_t level = 0;
  QuadraticNumber identity;  // coefficient of Id on the level
  QuadraticNumber lift;      // coefficient of A_level (top level: unused)
  QuadraticNumber mm_star;   // m m* on the level
  QuadraticNumber lift_norm_ratio;  // |A_i x|^2 / |x|^2
};

struct SchurReport {
  std::string base;
  std::size_t depth = 0;
  AdjointConvention convention = AdjointConvention::Weighted;
  QuadraticNumber delta;
  QuadraticNumber delta_k;
  QuadraticNumber claimed;  // delta_k^2
  std::vector<LevelConstants> levels;
  bool decomposes = false;        // m (A (x) A) m* lies in span{Id_i, A_i}
  bool identity_equals_lift = false;
  bool matches_claim = false;     // every constant equals delta_k^2
  bool level_dependent = false;
  std::string verdict;
};

// Exact decomposition of m o (A (x) A) o m* on the tree.
SchurReport schur_constants(const QuantumSpace& base, std::size_t depth, AdjointConvention conv,
                            const QuadraticNumber& scale = Rational(1));

struct TreeChecks {
  bool delta_form = false;        // m m* = delta^2 on the base
  bool state_unital = false;
  bool state_positive = false;
  bool adjacency_self_adjoint_preserving = false;
};
TreeChecks tree_checks(const QuantumSpace& base, std::size_t depth);

struct ClassicalGraph {
  std::vector<std::vector<std::uint32_t>> vertices;  // root is the empty tuple
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // parent -> child, indices into vertices
  bool binary = true;
};
// Reads off A_k - Id in the delta basis of C^N-valued levels.
ClassicalGraph classical_graph(std::uint32_t n, std::size_t depth);

struct ActionReport {
  bool commutes = true;
  bool state_preserved = true;
  double max_error = 0;
  std::size_t checked = 0;
};
using ComplexMatrix = Eigen::MatrixXcd;
// alpha_i(T) = V^{(x)i} T V*^{(x)i}; checks alpha_{i+1}(T (x) 1) = alpha_i(T) (x) 1 on matrix units.
ActionReport action_commutes(std::uint32_t n, std::size_t depth, const ComplexMatrix& v, double tol);
ComplexMatrix haar_unitary(std::uint32_t n, std::uint64_t seed);

}  // namespace qsub
