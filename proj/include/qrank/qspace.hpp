// Algebra of the binary (two-dimensional) quantum probability space.
//
// Coordinate convention used throughout the library: coordinate 0 of a
// vector (and entry (0,0) of a matrix) is the |1> axis, i.e. "feature
// present"; coordinate 1 is the |0> axis. So |1> = (1,0)', |0> = (0,1)',
// P1 = diag(1,0) and P0 = diag(0,1).
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrank {

using Complex = std::complex<double>;

/// Absolute tolerance for structural invariants (norm, trace, idempotency, PSD).
inline constexpr double kStructuralTol = 1e-12;
/// Tolerance for comparisons against independent oracles.
inline constexpr double kOracleTol = 1e-10;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A complex 2-vector with no normalisation constraint.
struct Vec2 {
  Complex c0{};
  Complex c1{};

  double norm_squared() const { return std::norm(c0) + std::norm(c1); }
  Vec2 operator-(const Vec2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Vec2 operator+(const Vec2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Vec2 operator*(Complex s) const { return {c0 * s, c1 * s}; }
};

/// <x|y>, conjugate-linear in the first argument.
Complex inner(const Vec2& x, const Vec2& y);

/// Unit-norm complex 2-vector.
class Ket {
 public:
  /// Throws DomainError unless |c0|^2 + |c1|^2 = 1 within kStructuralTol.
  Ket(Complex c0, Complex c1);
  explicit Ket(const Vec2& v) : Ket(v.c0, v.c1) {}

  /// Normalises a non-zero vector.
  static Ket normalized(const Vec2& v);

  Complex amp(int i) const { return i == 0 ? v_.c0 : v_.c1; }
  const Vec2& vec() const { return v_; }

  /// |1> = (1,0)', feature present.
  static Ket one() { return {1.0, 0.0}; }
  /// |0> = (0,1)', feature absent.
  static Ket zero() { return {0.0, 1.0}; }

 private:
  Vec2 v_;
};

/// General complex 2x2 matrix, row-major. Products of Hermitian matrices
/// land here.
struct Matrix2 {
  std::array<Complex, 4> m{};

  Complex operator()(int r, int c) const { return m[2 * r + c]; }
  Matrix2 operator*(const Matrix2& o) const;
  Matrix2 operator-(const Matrix2& o) const;
  Complex trace() const { return m[0] + m[3]; }
  /// Frobenius norm.
  double norm() const;
};

/// 2x2 Hermitian matrix [[a, b], [conj(b), d]].
class Hermitian2 {
 public:
  constexpr Hermitian2() = default;
  constexpr Hermitian2(double a, double d, Complex b) : a_(a), d_(d), b_(b) {}

  static constexpr Hermitian2 diag(double a, double d) { return {a, d, 0.0}; }
  static constexpr Hermitian2 identity() { return {1.0, 1.0, 0.0}; }
  static constexpr Hermitian2 zero() { return {0.0, 0.0, 0.0}; }

  double a() const { return a_; }
  double d() const { return d_; }
  Complex b() const { return b_; }
  Complex operator()(int r, int c) const;

  double trace() const { return a_ + d_; }
  double det() const { return a_ * d_ - std::norm(b_); }

  Hermitian2 operator+(const Hermitian2& o) const { return {a_ + o.a_, d_ + o.d_, b_ + o.b_}; }
  Hermitian2 operator-(const Hermitian2& o) const { return {a_ - o.a_, d_ - o.d_, b_ - o.b_}; }
  Hermitian2 operator*(double s) const { return {a_ * s, d_ * s, b_ * s}; }

  Matrix2 full() const;
  Vec2 apply(const Vec2& x) const;
  /// Re tr(this * o); the trace of a product of Hermitian matrices is real.
  double trace_product(const Hermitian2& o) const;
  /// max |entry| of this - o.
  double max_abs_diff(const Hermitian2& o) const;

 private:
  double a_ = 0.0;
  double d_ = 0.0;
  Complex b_{};
};

inline Hermitian2 operator*(double s, const Hermitian2& h) { return h * s; }

/// Frobenius norm of the commutator xy - yx.
double commutator_norm(const Hermitian2& x, const Hermitian2& y);

/// Idempotent Hermitian matrix; rank = trace in {0, 1, 2}.
class Projector {
 public:
  /// Validates idempotency within kStructuralTol; throws DomainError.
  explicit Projector(const Hermitian2& m);

  static Projector zero() { return Projector(Hermitian2::zero()); }
  static Projector identity() { return Projector(Hermitian2::identity()); }
  /// P1 = |1><1| (feature present).
  static Projector present() { return Projector(Hermitian2::diag(1.0, 0.0)); }
  /// P0 = |0><0| (feature absent).
  static Projector absent() { return Projector(Hermitian2::diag(0.0, 1.0)); }

  const Hermitian2& matrix() const { return m_; }
  int rank() const { return rank_; }
  /// I - this.
  Projector complement() const;
  /// A unit vector spanning the range of a rank-one projector. The phase is
  /// fixed so that the largest-magnitude coordinate is real and positive.
  Ket range_vector() const;

 private:
  Hermitian2 m_;
  int rank_ = 0;
};

/// Trace-one positive semidefinite Hermitian matrix.
class Density {
 public:
  /// Validates trace and PSD within kStructuralTol; throws DomainError.
  explicit Density(const Hermitian2& m);

  const Hermitian2& matrix() const { return m_; }
  /// True when the density is a rank-one projector.
  bool is_pure() const;

 private:
  Hermitian2 m_;
};

struct SpectralPair {
  double eigenvalue;
  Projector projector;
};

/// Spectral decomposition, eigenvalues ascending and pairwise distinct.
class Spectrum {
 public:
  explicit Spectrum(std::vector<SpectralPair> pairs) : pairs_(std::move(pairs)) {}

  const std::vector<SpectralPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  /// Sum of eigenvalue * projector.
  Hermitian2 reconstruct() const;

 private:
  std::vector<SpectralPair> pairs_;
};

/// (sqrt(p), sqrt(1-p)): amplitude sqrt(p) on the |1> axis.
Ket ket_from_probability(double p);

/// |k><k|.
Projector projector_of(const Ket& k);

/// Born's rule, tr(rho e), clamped to [0, 1].
double born(const Density& rho, const Projector& e);

/// Classical mixture p P1 + (1-p) P0 = diag(p, 1-p).
Density mixture(double p);

/// |phi><phi| with phi = ket_from_probability(p).
Density pure_density(double p);

/// Closed-form eigen decomposition. Coincident eigenvalues (within
/// kStructuralTol) give one pair carrying the identity projector.
Spectrum spectral_decompose(const Hermitian2& m);

/// Squared inner product (fidelity) of the pure states for p0, p1, kept
/// together with its complement, which is computed without cancellation.
struct Fidelity {
  double value;       // X^2
  double complement;  // 1 - X^2
};

Fidelity fidelity(double p0, double p1);

/// X^2 = (sqrt(p0 p1) + sqrt((1-p0)(1-p1)))^2.
double overlap(double p0, double p1);

/// The unsquared inner product <phi0|phi1>.
double amplitude_overlap(double p0, double p1);

struct InterferenceTerms {
  double total;         // |<observed|state>|^2
  double classical;     // sum_i |a_i|^2 |b_i|^2
  double interference;  // 2 |a0||b0||a1||b1| cos(theta)
};

/// Splits the superposition probability into its total-probability part and
/// the interference term. total is assembled as classical + interference.
InterferenceTerms interference(const Ket& state, const Ket& observed);

/// a x: the element of L(a) closest to x.
Vec2 project_onto(const Projector& a, const Vec2& x);
inline Vec2 project_onto(const Projector& a, const Ket& x) { return project_onto(a, x.vec()); }

}  // namespace qrank
