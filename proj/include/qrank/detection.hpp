// Binary detectors over a single binary feature.
//
// The classical detector works with the mixtures mu_i = diag(p_i, 1-p_i) and
// regions drawn from {0, P0, P1, I}. The quantum detector replaces them with
// the pure densities rho_i = |phi_i><phi_i| and takes as region of
// acceptance the positive eigenspace of rho1 - lambda rho0.
#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qrank/qspace.hpp"

namespace qrank {

/// rho1 - lambda rho0 is the zero matrix (p0 = p1, lambda = 1).
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct DetectorParams {
  double p0;      // feature probability under H0
  double p1;      // feature probability under H1
  double lambda;  // threshold, > 0

  /// Validates the ranges; throws DomainError.
  static DetectorParams make(double p0, double p1, double lambda = 1.0);
};

enum class Region { Never, AcceptOnAbsent, AcceptOnPresent, Always };

std::string_view to_string(Region r);
std::optional<Region> region_from_string(std::string_view s);

/// A region choice together with the projector it denotes in a given basis.
struct RegionOfAcceptance {
  Region choice;
  Projector projector;

  /// Builds the region from the "absent" and "present" projectors of a basis.
  static RegionOfAcceptance in_basis(Region choice, const Projector& absent,
                                     const Projector& present);
  /// Computational basis: absent = P0, present = P1.
  static RegionOfAcceptance computational(Region choice);

  bool accepts_present() const;
  bool accepts_absent() const;
};

/// Sign-table decision shared by the mixed and pure tables.
/// `present` is the diagonal entry of the discriminant matrix on the
/// feature-present axis and `absent` on the feature-absent axis. Strictly
/// positive entries are accepted; if both entries are ties the region is
/// Always.
Region region_from_signs(double present, double absent);

struct OperatingPoint {
  double size;   // false-alarm probability
  double power;  // detection probability
};

struct HelstromSolution {
  double eta0 = 0.0;
  double eta1 = 0.0;
  double big_r = 0.0;
  Fidelity overlap{1.0, 0.0};
  Projector q0 = Projector::absent();
  Projector q1 = Projector::present();
  RegionOfAcceptance region = RegionOfAcceptance::computational(Region::Never);
  bool degenerate = false;
};

/// Coordinates of |phi0>, |phi1> in the basis |eta0>, |eta1>:
/// |phi0> = x00 |eta0> + x01 |eta1>, |phi1> = x10 |eta0> + x11 |eta1>.
struct CoordinateMatrix {
  double x00;
  double x01;
  double x10;
  double x11;
};

/// Piecewise-linear ROC with strictly increasing sizes.
class RocCurve {
 public:
  explicit RocCurve(std::vector<OperatingPoint> points);

  const std::vector<OperatingPoint>& points() const { return points_; }
  /// Linear interpolation; size is clamped to [0, 1].
  double power_at(double size) const;

 private:
  std::vector<OperatingPoint> points_;
};

/// tr((rho1 - lambda rho0) e).
double discriminant(const Density& rho1, const Density& rho0, double lambda, const Projector& e);

/// (p0, p1) pure states, optimal projectors and eigenvalues of rho1 - lambda rho0.
/// A degenerate input yields region Never and `degenerate = true`.
HelstromSolution helstrom_spectrum(const DetectorParams& params);

/// Sign table over p1 - lambda p0 and (1-p1) - lambda (1-p0).
RegionOfAcceptance mixed_region(const DetectorParams& params);

/// Size and power of the mixed detector for a region; the default region P1
/// gives (p0, p1).
OperatingPoint mixed_operating_point(const DetectorParams& params,
                                     Region region = Region::AcceptOnPresent);

/// Helstrom size Q0 and power Qd. Throws DegenerateError when R = 0.
OperatingPoint quantum_operating_point(const DetectorParams& params);

/// Quantum power curve at size q0 for overlap X^2.
double quantum_roc(double q0, const Fidelity& overlap);
double quantum_roc(double q0, double overlap);

/// The four deterministic classical operating points for 0, P1, P0, I.
std::array<OperatingPoint, 4> classical_operating_points(const DetectorParams& params);

/// Upper concave envelope of the deterministic points (randomised
/// Neyman-Pearson boundary).
RocCurve classical_roc(const DetectorParams& params);

/// Closed-form squared coordinates
///   x00^2 = X^2 / ((1-eta1)^2 + X^2),  x01^2 = (1-eta1)^2 / ((1-eta1)^2 + X^2),
///   x10^2 = X^2 / ((1+eta1)^2 + X^2),  x11^2 = (1+eta1)^2 / ((1+eta1)^2 + X^2),
/// returned as non-negative square roots. These coincide with
/// eigenbasis_coordinates() at lambda = 1 only.
/// Throws DegenerateError.
CoordinateMatrix coordinates(const DetectorParams& params);

/// Coordinates obtained by projecting |phi_i> on the Helstrom eigenvectors:
/// x_ij = |<eta_j|phi_i>|. Then x11^2 = Qd and x01^2 = Q0 for every lambda.
/// In the degenerate case the computational basis is used.
CoordinateMatrix eigenbasis_coordinates(const DetectorParams& params);

struct ReweightedDensities {
  Density sigma0;
  Density sigma1;
};

/// sigma_i = pure density with (0,0) entry x_i1^2, built from
/// eigenbasis_coordinates(). Throws DegenerateError.
ReweightedDensities reweighted_densities(const DetectorParams& params);

/// Pure-case sign table on x11^2 - lambda x01^2 and
/// (1-x11^2) - lambda (1-x01^2), in the computational basis of sigma_i.
RegionOfAcceptance pure_region_in_computational_basis(const DetectorParams& params);

struct DominanceReport {
  int grid = 0;
  int violations = 0;           // grid points where classical - quantum > tol
  double max_violation = 0.0;   // max over the grid of classical - quantum (may be negative)
  double worst_size = 0.0;      // where max_violation occurs
  std::optional<OperatingPoint> touch;  // interior envelope vertex, if any
  double touch_gap = 0.0;       // quantum - classical at the touch point
  bool passed = true;
};

/// Compares quantum_roc with the classical envelope on a uniform grid of
/// `grid` sizes in [0, 1]. Neither curve depends on lambda.
DominanceReport dominance_check(const DetectorParams& params, int grid, double tol = 1e-9);

struct BasisRelationReport {
  double qd_inserted = 0.0;  // |<eta1|0><0|phi1> + <eta1|1><1|phi1>|^2
  double q0_inserted = 0.0;
  double qd_direct = 0.0;    // |<eta1|phi1>|^2
  double q0_direct = 0.0;
  double qd_closed = 0.0;    // from quantum_operating_point
  double q0_closed = 0.0;
  double max_error = 0.0;
  bool passed = false;
};

/// Checks |<eta1|phi1>|^2 = Qd and |<eta1|phi0>|^2 = Q0, evaluating the inner
/// products through the resolution of identity sum_i |i><i|.
/// Throws DegenerateError.
BasisRelationReport basis_relation_check(const DetectorParams& params, double tol = kOracleTol);

}  // namespace qrank
