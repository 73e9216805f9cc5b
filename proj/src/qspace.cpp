#include "qrank/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrank {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << p;
    throw DomainError(msg.str());
  }
}

}  // namespace

Complex inner(const Vec2& x, const Vec2& y) {
  return std::conj(x.c0) * y.c0 + std::conj(x.c1) * y.c1;
}

Ket::Ket(Complex c0, Complex c1) : v_{c0, c1} {
  const double n = v_.norm_squared();
  if (!(std::abs(n - 1.0) <= kStructuralTol)) {
    std::ostringstream msg;
    msg << "ket is not unit norm: |v|^2 = " << n;
    throw DomainError(msg.str());
  }
}

Ket Ket::normalized(const Vec2& v) {
  const double n = std::sqrt(v.norm_squared());
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalise a zero vector");
  return Ket(v.c0 / n, v.c1 / n);
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
           m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

Matrix2 Matrix2::operator-(const Matrix2& o) const {
  return {{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]}};
}

double Matrix2::norm() const {
  double s = 0.0;
  for (const auto& z : m) s += std::norm(z);
  return std::sqrt(s);
}

Complex Hermitian2::operator()(int r, int c) const {
  if (r == 0) return c == 0 ? Complex(a_) : b_;
  return c == 0 ? std::conj(b_) : Complex(d_);
}

Matrix2 Hermitian2::full() const { return {{Complex(a_), b_, std::conj(b_), Complex(d_)}}; }

Vec2 Hermitian2::apply(const Vec2& x) const {
  return {a_ * x.c0 + b_ * x.c1, std::conj(b_) * x.c0 + d_ * x.c1};
}

double Hermitian2::trace_product(const Hermitian2& o) const {
  return a_ * o.a_ + d_ * o.d_ + 2.0 * std::real(b_ * std::conj(o.b_));
}

double Hermitian2::max_abs_diff(const Hermitian2& o) const {
  return std::max({std::abs(a_ - o.a_), std::abs(d_ - o.d_), std::abs(b_ - o.b_)});
}

double commutator_norm(const Hermitian2& x, const Hermitian2& y) {
  const Matrix2 fx = x.full();
  const Matrix2 fy = y.full();
  return (fx * fy - fy * fx).norm();
}

Projector::Projector(const Hermitian2& m) : m_(m) {
  const Matrix2 f = m.full();
  const double err = (f * f - f).norm();
  if (!(err <= kStructuralTol)) {
    std::ostringstream msg;
    msg << "matrix is not idempotent: |P^2 - P| = " << err;
    throw DomainError(msg.str());
  }
  const double t = m.trace();
  rank_ = static_cast<int>(std::lround(t));
  if (std::abs(t - rank_) > kStructuralTol) throw DomainError("projector trace is not an integer");
}

Projector Projector::complement() const { return Projector(Hermitian2::identity() - m_); }

Ket Projector::range_vector() const {
  if (rank_ != 1) throw DomainError("range_vector needs a rank-one projector");
  if (m_.a() >= m_.d()) {
    const double s = std::sqrt(m_.a());
    return Ket::normalized({s, std::conj(m_.b()) / s});
  }
  const double s = std::sqrt(m_.d());
  return Ket::normalized({m_.b() / s, s});
}

Density::Density(const Hermitian2& m) : m_(m) {
  if (!(std::abs(m.trace() - 1.0) <= kStructuralTol)) {
    std::ostringstream msg;
    msg << "density trace must be 1, got " << m.trace();
    throw DomainError(msg.str());
  }
  const double half_gap = std::hypot(0.5 * (m.a() - m.d()), std::abs(m.b()));
  const double lowest = 0.5 * m.trace() - half_gap;
  if (!(lowest >= -kStructuralTol)) {
    std::ostringstream msg;
    msg << "density is not positive semidefinite: eigenvalue " << lowest;
    throw DomainError(msg.str());
  }
}

bool Density::is_pure() const { return std::abs(m_.det()) <= kStructuralTol; }

Hermitian2 Spectrum::reconstruct() const {
  Hermitian2 sum;
  for (const auto& [eigenvalue, projector] : pairs_) sum = sum + projector.matrix() * eigenvalue;
  return sum;
}

Ket ket_from_probability(double p) {
  require_probability(p, "probability");
  return Ket(std::sqrt(p), std::sqrt(1.0 - p));
}

Projector projector_of(const Ket& k) {
  const Complex c0 = k.amp(0);
  const Complex c1 = k.amp(1);
  return Projector(Hermitian2(std::norm(c0), std::norm(c1), c0 * std::conj(c1)));
}

double born(const Density& rho, const Projector& e) {
  return std::clamp(rho.matrix().trace_product(e.matrix()), 0.0, 1.0);
}

Density mixture(double p) {
  require_probability(p, "mixture weight");
  return Density(Hermitian2::diag(p, 1.0 - p));
}

Density pure_density(double p) {
  require_probability(p, "probability");
  return Density(Hermitian2(p, 1.0 - p, std::sqrt(p * (1.0 - p))));
}

Spectrum spectral_decompose(const Hermitian2& m) {
  const double mean = 0.5 * m.trace();
  const double h = 0.5 * (m.a() - m.d());
  const double r = std::hypot(h, std::abs(m.b()));
  if (2.0 * r <= kStructuralTol) return Spectrum({{mean, Projector::identity()}});

  // E+ = (I + (M - mean I)/r) / 2, E- = I - E+.
  const double c = h / r;
  const Complex s = m.b() / r;
  const Hermitian2 upper(0.5 * (1.0 + c), 0.5 * (1.0 - c), 0.5 * s);
  const Hermitian2 lower(0.5 * (1.0 - c), 0.5 * (1.0 + c), -0.5 * s);
  return Spectrum({{mean - r, Projector(lower)}, {mean + r, Projector(upper)}});
}

Fidelity fidelity(double p0, double p1) {
  require_probability(p0, "p0");
  require_probability(p1, "p1");
  // Expanded square: every term is non-negative, and rational inputs such as
  // (1, 0.7) come out exact.
  const double a = p0 * p1;
  const double b = (1.0 - p0) * (1.0 - p1);
  const double x2 = a + b + 2.0 * std::sqrt(a * b);
  // 1 - X^2 = (sqrt(p0 (1-p1)) - sqrt(p1 (1-p0)))^2, the squared sine of the
  // angle between the two density vectors.
  const double y = std::sqrt(p0 * (1.0 - p1)) - std::sqrt(p1 * (1.0 - p0));
  return {std::min(1.0, x2), y * y};
}

double overlap(double p0, double p1) { return fidelity(p0, p1).value; }

double amplitude_overlap(double p0, double p1) {
  require_probability(p0, "p0");
  require_probability(p1, "p1");
  return std::sqrt(p0 * p1) + std::sqrt((1.0 - p0) * (1.0 - p1));
}

InterferenceTerms interference(const Ket& state, const Ket& observed) {
  const Complex a0 = state.amp(0);
  const Complex a1 = state.amp(1);
  const Complex b0 = observed.amp(0);
  const Complex b1 = observed.amp(1);
  const double classical = std::norm(a0) * std::norm(b0) + std::norm(a1) * std::norm(b1);
  // 2 Re(a0 conj(b0) conj(a1) b1) = 2 |a0||b0||a1||b1| cos(theta).
  const double cross = 2.0 * std::real(a0 * std::conj(b0) * std::conj(a1) * b1);
  return {classical + cross, classical, cross};
}

Vec2 project_onto(const Projector& a, const Vec2& x) { return a.matrix().apply(x); }

}  // namespace qrank
