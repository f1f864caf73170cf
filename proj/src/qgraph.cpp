#include "qsub/qgraph.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsub/errors.hpp"

namespace qsub {

// ---------------------------------------------------------------------------
// QuadraticNumber

QuadraticNumber::QuadraticNumber(Rational a, Rational b, std::uint32_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ == 0) throw PreconditionViolated("radicand must be positive");
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) d_ = 1;
}

QuadraticNumber QuadraticNumber::sqrt_of(std::uint32_t n) {
  if (n == 0) return Rational(0);
  std::uint32_t s = 1, d = n;
  for (std::uint32_t f = 2; f * f <= d; ++f)
    while (d % (f * f) == 0) {
      d /= f * f;
      s *= f;
    }
  if (d == 1) return Rational(s);
  return QuadraticNumber(Rational(0), Rational(s), d);
}

std::uint32_t QuadraticNumber::common_radicand(const QuadraticNumber& o) const {
  if (b_ == 0) return o.d_;
  if (o.b_ == 0) return d_;
  if (d_ != o.d_) throw PreconditionViolated("mixing square roots of " + std::to_string(d_) + " and " + std::to_string(o.d_));
  return d_;
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
  return QuadraticNumber(a_ + o.a_, b_ + o.b_, common_radicand(o));
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
  return QuadraticNumber(a_ - o.a_, b_ - o.b_, common_radicand(o));
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
  const auto d = common_radicand(o);
  return QuadraticNumber(a_ * o.a_ + b_ * o.b_ * d, a_ * o.b_ + b_ * o.a_, d);
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
  const auto d = common_radicand(o);
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d;
  if (norm == 0) throw PreconditionViolated("division by zero");
  const QuadraticNumber conj(o.a_ / norm, -o.b_ / norm, d);
  return *this * conj;
}

QuadraticNumber QuadraticNumber::pow(unsigned e) const {
  QuadraticNumber r = Rational(1);
  for (unsigned i = 0; i < e; ++i) r *= *this;
  return r;
}

bool QuadraticNumber::is_positive() const {
  if (b_ == 0) return a_ > 0;
  if (a_ >= 0 && b_ >= 0) return true;
  if (a_ <= 0 && b_ <= 0) return false;
  const Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
  return a_ > 0 ? lhs > rhs : rhs > lhs;
}

double QuadraticNumber::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
}

std::string QuadraticNumber::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
    return os.str();
  }
  if (a_ != 0) os << a_ << (b_ > 0 ? "+" : "-");
  else if (b_ < 0) os << "-";
  os << boost::multiprecision::abs(b_) << "*sqrt(" << d_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

std::string QuantumSpace::str() const {
  return (kind == Kind::Classical ? "C" : "M") + std::to_string(n);
}

QuadraticNumber QuantumSpace::delta() const {
  return kind == Kind::Classical ? QuadraticNumber::sqrt_of(n) : QuadraticNumber(Rational(n));
}

std::string to_string(AdjointConvention c) {
  return c == AdjointConvention::Weighted ? "weighted" : "per-level";
}

namespace {

// Base algebra structure on basis indices.
struct Base {
  QuantumSpace s;
  std::size_t dim() const { return s.dim(); }
  std::optional<std::size_t> mult(std::size_t u, std::size_t v) const {
    if (s.kind == QuantumSpace::Kind::Classical) return u == v ? std::optional<std::size_t>(u) : std::nullopt;
    const std::size_t n = s.n;
    if (u % n != v / n) return std::nullopt;
    return (u / n) * n + v % n;
  }
  std::size_t star(std::size_t u) const {
    if (s.kind == QuantumSpace::Kind::Classical) return u;
    return (u % s.n) * s.n + u / s.n;
  }
  std::vector<std::size_t> unit() const {
    std::vector<std::size_t> out;
    if (s.kind == QuantumSpace::Kind::Classical)
      for (std::size_t i = 0; i < s.n; ++i) out.push_back(i);
    else
      for (std::size_t a = 0; a < s.n; ++a) out.push_back(a * s.n + a);
    return out;
  }
  Rational psi(std::size_t u) const {
    if (s.kind == QuantumSpace::Kind::Classical) return Rational(1, s.n);
    return u / s.n == u % s.n ? Rational(1, s.n) : Rational(0);
  }
  // pairs (u, v) with u v = x
  std::vector<std::pair<std::size_t, std::size_t>> factorizations(std::size_t x) const {
    if (s.kind == QuantumSpace::Kind::Classical) return {{x, x}};
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t a = x / s.n, b = x % s.n;
    for (std::size_t c = 0; c < s.n; ++c) out.emplace_back(a * s.n + c, c * s.n + b);
    return out;
  }
};

std::vector<std::size_t> digits(std::size_t x, std::size_t level, std::size_t d) {
  std::vector<std::size_t> out(level);
  for (std::size_t t = level; t-- > 0;) {
    out[t] = x % d;
    x /= d;
  }
  return out;
}

void add_term(TreeVector& v, std::size_t level, std::size_t x, const QuadraticNumber& c) {
  auto [it, fresh] = v.emplace(std::make_pair(level, x), c);
  if (!fresh) it->second += c;
  if (it->second.is_zero()) v.erase(it);
}

}  // namespace

QuantumTree::QuantumTree(QuantumSpace base, std::size_t depth, AdjointConvention conv, QuadraticNumber scale)
    : base_(base), depth_(depth), conv_(conv) {
  if (base_.n == 0) throw PreconditionViolated("empty base");
  std::size_t d = 1;
  for (std::size_t i = 0; i <= depth_; ++i) {
    level_dim_.push_back(d);
    d *= base_.dim();
  }
  const auto delta = base_.delta();
  const auto dk = delta_k();
  for (std::size_t i = 0; i <= depth_; ++i)
    weight_.push_back(scale * (conv_ == AdjointConvention::Weighted ? delta.pow(static_cast<unsigned>(i)) / dk
                                                                     : QuadraticNumber(Rational(1))));
}

std::size_t QuantumTree::dim() const {
  std::size_t s = 0;
  for (auto d : level_dim_) s += d;
  return s;
}

QuadraticNumber QuantumTree::delta_k() const {
  QuadraticNumber s = Rational(0);
  const auto delta = base_.delta();
  for (std::size_t i = 0; i <= depth_; ++i) s += delta.pow(static_cast<unsigned>(i));
  return s;
}

QuadraticNumber QuantumTree::state(std::size_t level, std::size_t x) const {
  Base b{base_};
  Rational p = 1;
  for (auto t : digits(x, level, b.dim())) p *= b.psi(t);
  return base_.delta().pow(static_cast<unsigned>(level)) / delta_k() * QuadraticNumber(p);
}

QuadraticNumber QuantumTree::norm2(std::size_t level, std::size_t) const {
  // every basis element u has psi(u* u) = 1/N
  Rational p = 1;
  for (std::size_t i = 0; i < level; ++i) p /= base_.n;
  return weight_[level] * QuadraticNumber(p);
}

TreeVector QuantumTree::multiply(std::size_t level, std::size_t x, std::size_t y) const {
  Base b{base_};
  auto dx = digits(x, level, b.dim()), dy = digits(y, level, b.dim());
  std::size_t out = 0;
  for (std::size_t t = 0; t < level; ++t) {
    auto r = b.mult(dx[t], dy[t]);
    if (!r) return {};
    out = out * b.dim() + *r;
  }
  return {{{level, out}, QuadraticNumber(Rational(1))}};
}

std::size_t QuantumTree::star(std::size_t level, std::size_t x) const {
  Base b{base_};
  std::size_t out = 0;
  for (auto t : digits(x, level, b.dim())) out = out * b.dim() + b.star(t);
  return out;
}

TreeVector QuantumTree::unit(std::size_t level) const {
  Base b{base_};
  TreeVector v{{{level, 0}, QuadraticNumber(Rational(1))}};
  for (std::size_t t = 0; t < level; ++t) {
    TreeVector next;
    for (const auto& [key, c] : v)
      for (auto u : b.unit()) add_term(next, level, key.second * b.dim() + u, c);
    v = std::move(next);
  }
  return v;
}

TreeVector QuantumTree::lift(const TreeVector& v) const {
  Base b{base_};
  TreeVector out;
  for (const auto& [key, c] : v) {
    if (key.first >= depth_) continue;
    for (auto u : b.unit()) add_term(out, key.first + 1, key.second * b.dim() + u, c);
  }
  return out;
}

TreeVector QuantumTree::adjacency(const TreeVector& v) const {
  TreeVector out = v;
  for (const auto& [key, c] : lift(v)) add_term(out, key.first, key.second, c);
  return out;
}

std::vector<QuantumTree::PairTerm> QuantumTree::comultiply(std::size_t level, std::size_t x) const {
  Base b{base_};
  std::vector<std::pair<std::size_t, std::size_t>> pairs{{0, 0}};
  for (auto t : digits(x, level, b.dim())) {
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [u, v] : pairs)
      for (const auto& [fu, fv] : b.factorizations(t)) next.emplace_back(u * b.dim() + fu, v * b.dim() + fv);
    pairs = std::move(next);
  }
  const QuadraticNumber n2 = norm2(level, x);
  const QuadraticNumber coeff = n2 / (n2 * n2);
  std::vector<PairTerm> out;
  for (const auto& [u, v] : pairs) out.push_back({level, u, v, coeff});
  return out;
}

// ---------------------------------------------------------------------------

SchurReport schur_constants(const QuantumSpace& base, std::size_t depth, AdjointConvention conv,
                            const QuadraticNumber& scale) {
  QuantumTree tree(base, depth, conv, scale);
  SchurReport rep;
  rep.base = base.str();
  rep.depth = depth;
  rep.convention = conv;
  rep.delta = base.delta();
  rep.delta_k = tree.delta_k();
  rep.claimed = rep.delta_k * rep.delta_k;
  rep.decomposes = true;
  rep.identity_equals_lift = true;

  for (std::size_t level = 0; level <= depth; ++level) {
    LevelConstants lc;
    lc.level = level;
    bool first = true;
    for (std::size_t x = 0; x < tree.level_dim(level); ++x) {
      TreeVector image, mm;
      for (const auto& t : tree.comultiply(level, x)) {
        for (const auto& [ku, cu] : tree.adjacency({{{t.level, t.x}, t.c}}))
          for (const auto& [kv, cv] : tree.adjacency({{{t.level, t.y}, QuadraticNumber(Rational(1))}})) {
            if (ku.first != kv.first) continue;
            for (const auto& [kp, cp] : tree.multiply(ku.first, ku.second, kv.second))
              add_term(image, kp.first, kp.second, cu * cv * cp);
          }
        for (const auto& [kp, cp] : tree.multiply(t.level, t.x, t.y)) add_term(mm, kp.first, kp.second, t.c * cp);
      }
      // split the image into the level part and the lifted part
      QuadraticNumber id_coeff = Rational(0), lift_coeff = Rational(0), mm_coeff = Rational(0);
      if (auto it = image.find({level, x}); it != image.end()) id_coeff = it->second;
      if (auto it = mm.find({level, x}); it != mm.end()) mm_coeff = it->second;
      TreeVector expected;
      add_term(expected, level, x, id_coeff);
      if (level < depth) {
        const auto lifted = tree.lift({{{level, x}, QuadraticNumber(Rational(1))}});
        const auto& [k0, c0] = *lifted.begin();
        if (auto it = image.find(k0); it != image.end()) lift_coeff = it->second / c0;
        for (const auto& [k, c] : lifted) add_term(expected, k.first, k.second, lift_coeff * c);
      }
      if (expected != image) rep.decomposes = false;
      if (mm.size() != 1 || mm_coeff.is_zero()) rep.decomposes = false;

      QuadraticNumber ratio = Rational(0);
      if (level < depth) {
        QuadraticNumber s = Rational(0);
        for (const auto& [k, c] : tree.lift({{{level, x}, QuadraticNumber(Rational(1))}}))
          s += c * c * tree.norm2(k.first, k.second);
        ratio = s / tree.norm2(level, x);
      }
      if (first) {
        lc.identity = id_coeff;
        lc.lift = lift_coeff;
        lc.mm_star = mm_coeff;
        lc.lift_norm_ratio = ratio;
        first = false;
      } else if (!(lc.identity == id_coeff) || !(lc.lift == lift_coeff) || !(lc.mm_star == mm_coeff) ||
                 !(lc.lift_norm_ratio == ratio)) {
        rep.decomposes = false;
      }
    }
    if (level < depth && !(lc.identity == lc.lift)) rep.identity_equals_lift = false;
    rep.levels.push_back(lc);
  }

  rep.matches_claim = rep.decomposes;
  for (const auto& lc : rep.levels) {
    if (!(lc.identity == rep.claimed)) rep.matches_claim = false;
    if (lc.level < depth && !(lc.lift == rep.claimed)) rep.matches_claim = false;
  }
  rep.level_dependent = false;
  for (const auto& lc : rep.levels)
    if (!(lc.identity == rep.levels.front().identity)) rep.level_dependent = true;

  std::ostringstream os;
  if (!rep.decomposes)
    os << "does not decompose into Id_i and A_i";
  else if (rep.matches_claim)
    os << "matches delta_k^2 = " << rep.claimed.str() << " on every level";
  else {
    os << (rep.level_dependent ? "level-dependent constants" : "constant differs from delta_k^2") << ":";
    for (const auto& lc : rep.levels) os << " [" << lc.level << "] " << lc.identity.str();
    os << " vs delta_k^2 = " << rep.claimed.str();
  }
  rep.verdict = os.str();
  return rep;
}

TreeChecks tree_checks(const QuantumSpace& base, std::size_t depth) {
  TreeChecks out;
  {
    QuantumTree one(base, 1, AdjointConvention::PerLevel);
    const auto d2 = base.delta() * base.delta();
    out.delta_form = true;
    for (std::size_t x = 0; x < one.level_dim(1); ++x) {
      TreeVector mm;
      for (const auto& t : one.comultiply(1, x))
        for (const auto& [k, c] : one.multiply(t.level, t.x, t.y)) add_term(mm, k.first, k.second, t.c * c);
      TreeVector want{{{1, x}, d2}};
      if (mm != want) out.delta_form = false;
    }
  }
  QuantumTree tree(base, depth);
  QuadraticNumber total = Rational(0);
  out.state_positive = true;
  for (std::size_t level = 0; level <= depth; ++level) {
    for (const auto& [k, c] : tree.unit(level)) {
      const auto s = tree.state(k.first, k.second);
      total += c * s;
      if (!s.is_positive()) out.state_positive = false;  // units are sums of minimal projections
    }
  }
  out.state_unital = total == QuadraticNumber(Rational(1));
  out.adjacency_self_adjoint_preserving = true;
  for (std::size_t level = 0; level <= depth; ++level)
    for (std::size_t x = 0; x < tree.level_dim(level); ++x) {
      auto a = tree.adjacency({{{level, tree.star(level, x)}, QuadraticNumber(Rational(1))}});
      TreeVector b;
      for (const auto& [k, c] : tree.adjacency({{{level, x}, QuadraticNumber(Rational(1))}}))
        add_term(b, k.first, tree.star(k.first, k.second), c);
      if (a != b) out.adjacency_self_adjoint_preserving = false;
    }
  return out;
}

ClassicalGraph classical_graph(std::uint32_t n, std::size_t depth) {
  QuantumTree tree(QuantumSpace::classical(n), depth);
  ClassicalGraph g;
  std::vector<std::size_t> offset;
  for (std::size_t level = 0; level <= depth; ++level) {
    offset.push_back(g.vertices.size());
    for (std::size_t x = 0; x < tree.level_dim(level); ++x) {
      std::vector<std::uint32_t> label;
      for (auto t : digits(x, level, n)) label.push_back(static_cast<std::uint32_t>(t + 1));
      g.vertices.push_back(std::move(label));
    }
  }
  for (std::size_t level = 0; level < depth; ++level)
    for (std::size_t x = 0; x < tree.level_dim(level); ++x)
      for (const auto& [k, c] : tree.lift({{{level, x}, QuadraticNumber(Rational(1))}})) {
        if (!(c == QuadraticNumber(Rational(1)))) g.binary = false;
        g.edges.emplace_back(offset[level] + x, offset[k.first] + k.second);
      }
  return g;
}

ComplexMatrix haar_unitary(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) z(i, j) = std::complex<double>(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::uint32_t j = 0; j < n; ++j) {
    const auto d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

ActionReport action_commutes(std::uint32_t n, std::size_t depth, const ComplexMatrix& v, double tol) {
  if (v.rows() != n || v.cols() != n) throw ShapeMismatch("unitary has the wrong size");
  const double err = (v * v.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > tol) throw NotUnitary("|V V* - 1| = " + std::to_string(err));
  ActionReport rep;
  ComplexMatrix vi = ComplexMatrix::Identity(1, 1);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < depth; ++i) {
    const ComplexMatrix vnext = Eigen::kroneckerProduct(vi, v).eval();
    const Eigen::Index d = vi.rows();
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        ComplexMatrix t = ComplexMatrix::Zero(d, d);
        t(a, b) = 1.0;
        const ComplexMatrix alpha = vi * t * vi.adjoint();
        const ComplexMatrix lhs = vnext * Eigen::kroneckerProduct(t, id).eval() * vnext.adjoint();
        const ComplexMatrix rhs = Eigen::kroneckerProduct(alpha, id).eval();
        const double e = (lhs - rhs).cwiseAbs().maxCoeff();
        rep.max_error = std::max(rep.max_error, e);
        if (e > tol) rep.commutes = false;
        if (std::abs(alpha.trace() - t.trace()) > tol) rep.state_preserved = false;
        ++rep.checked;
      }
    vi = vnext;
  }
  return rep;
}

}  // namespace qsub
