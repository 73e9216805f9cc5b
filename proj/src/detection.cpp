#include "qrank/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qrank {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

bool is_tie(double x) { return std::abs(x) <= kStructuralTol; }

Hermitian2 helstrom_matrix(const DetectorParams& params) {
  return pure_density(params.p1).matrix() - params.lambda * pure_density(params.p0).matrix();
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    std::ostringstream msg;
    msg << "lambda must be positive, got " << lambda;
    throw DomainError(msg.str());
  }
}

}  // namespace

DetectorParams DetectorParams::make(double p0, double p1, double lambda) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1]");
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw DomainError("p1 must lie in [0,1]");
  require_lambda(lambda);
  return {p0, p1, lambda};
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Never: return "Never";
    case Region::AcceptOnAbsent: return "AcceptOnAbsent";
    case Region::AcceptOnPresent: return "AcceptOnPresent";
    case Region::Always: return "Always";
  }
  return "Never";
}

std::optional<Region> region_from_string(std::string_view s) {
  for (Region r : {Region::Never, Region::AcceptOnAbsent, Region::AcceptOnPresent, Region::Always}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

RegionOfAcceptance RegionOfAcceptance::in_basis(Region choice, const Projector& absent,
                                                const Projector& present) {
  switch (choice) {
    case Region::Never: return {choice, Projector::zero()};
    case Region::AcceptOnAbsent: return {choice, absent};
    case Region::AcceptOnPresent: return {choice, present};
    case Region::Always: return {choice, Projector::identity()};
  }
  return {Region::Never, Projector::zero()};
}

RegionOfAcceptance RegionOfAcceptance::computational(Region choice) {
  return in_basis(choice, Projector::absent(), Projector::present());
}

bool RegionOfAcceptance::accepts_present() const {
  return choice == Region::AcceptOnPresent || choice == Region::Always;
}

bool RegionOfAcceptance::accepts_absent() const {
  return choice == Region::AcceptOnAbsent || choice == Region::Always;
}

Region region_from_signs(double present, double absent) {
  if (is_tie(present) && is_tie(absent)) return Region::Always;
  const bool take_present = present > kStructuralTol;
  const bool take_absent = absent > kStructuralTol;
  if (take_present && take_absent) return Region::Always;
  if (take_present) return Region::AcceptOnPresent;
  if (take_absent) return Region::AcceptOnAbsent;
  return Region::Never;
}

RocCurve::RocCurve(std::vector<OperatingPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("ROC curve needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.size >= 0.0 && p.size <= 1.0 && p.power >= 0.0 && p.power <= 1.0)) {
      throw DomainError("ROC point outside the unit square");
    }
    if (i > 0 && !(p.size > points_[i - 1].size)) {
      throw DomainError("ROC sizes must be strictly increasing");
    }
  }
}

double RocCurve::power_at(double size) const {
  size = clamp01(size);
  if (size <= points_.front().size) return points_.front().power;
  if (size >= points_.back().size) return points_.back().power;
  auto hi = std::upper_bound(points_.begin(), points_.end(), size,
                             [](double s, const OperatingPoint& p) { return s < p.size; });
  auto lo = std::prev(hi);
  const double t = (size - lo->size) / (hi->size - lo->size);
  return lo->power + t * (hi->power - lo->power);
}

double discriminant(const Density& rho1, const Density& rho0, double lambda, const Projector& e) {
  require_lambda(lambda);
  return (rho1.matrix() - lambda * rho0.matrix()).trace_product(e.matrix());
}

HelstromSolution helstrom_spectrum(const DetectorParams& params) {
  HelstromSolution s;
  s.overlap = fidelity(params.p0, params.p1);
  const double half_trace = 0.5 * (1.0 - params.lambda);
  s.big_r = std::sqrt(half_trace * half_trace + params.lambda * s.overlap.complement);
  s.eta0 = half_trace - s.big_r;
  s.eta1 = half_trace + s.big_r;

  const Spectrum spectrum = spectral_decompose(helstrom_matrix(params));
  if (spectrum.size() == 1) {
    s.degenerate = true;
    return s;
  }
  s.q0 = spectrum.pairs()[0].projector;
  s.q1 = spectrum.pairs()[1].projector;

  const bool take1 = s.eta1 > kStructuralTol;
  const bool take0 = s.eta0 > kStructuralTol;
  Region choice = Region::Never;
  if (take1 && take0) {
    choice = Region::Always;
  } else if (take1) {
    choice = Region::AcceptOnPresent;
  } else if (take0) {
    choice = Region::AcceptOnAbsent;
  }
  s.region = RegionOfAcceptance::in_basis(choice, s.q0, s.q1);
  return s;
}

RegionOfAcceptance mixed_region(const DetectorParams& params) {
  const Density mu1 = mixture(params.p1);
  const Density mu0 = mixture(params.p0);
  const double present = discriminant(mu1, mu0, params.lambda, Projector::present());
  const double absent = discriminant(mu1, mu0, params.lambda, Projector::absent());
  return RegionOfAcceptance::computational(region_from_signs(present, absent));
}

OperatingPoint mixed_operating_point(const DetectorParams& params, Region region) {
  const auto e = RegionOfAcceptance::computational(region).projector;
  return {born(mixture(params.p0), e), born(mixture(params.p1), e)};
}

OperatingPoint quantum_operating_point(const DetectorParams& params) {
  const HelstromSolution h = helstrom_spectrum(params);
  if (h.degenerate || !(h.big_r > 0.0)) {
    throw DegenerateError("Helstrom spectrum is degenerate (p0 = p1, lambda = 1)");
  }
  const double c = h.overlap.complement;
  return {clamp01((h.eta1 - c) / (2.0 * h.big_r)),
          clamp01((h.eta1 + params.lambda * c) / (2.0 * h.big_r))};
}

double quantum_roc(double q0, const Fidelity& overlap) {
  if (!(q0 >= 0.0 && q0 <= 1.0)) throw DomainError("size must lie in [0,1]");
  if (q0 > overlap.value) return 1.0;
  const double root = std::sqrt(q0 * overlap.value) + std::sqrt((1.0 - q0) * overlap.complement);
  return clamp01(root * root);
}

double quantum_roc(double q0, double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw DomainError("overlap must lie in [0,1]");
  return quantum_roc(q0, Fidelity{overlap, 1.0 - overlap});
}

std::array<OperatingPoint, 4> classical_operating_points(const DetectorParams& params) {
  return {{{0.0, 0.0},
           {params.p0, params.p1},
           {1.0 - params.p0, 1.0 - params.p1},
           {1.0, 1.0}}};
}

RocCurve classical_roc(const DetectorParams& params) {
  auto raw = classical_operating_points(params);
  std::vector<OperatingPoint> pts(raw.begin(), raw.end());
  std::sort(pts.begin(), pts.end(), [](const OperatingPoint& a, const OperatingPoint& b) {
    return a.size < b.size || (a.size == b.size && a.power > b.power);
  });
  // Keep the highest power at each size.
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const OperatingPoint& a, const OperatingPoint& b) { return a.size == b.size; }),
            pts.end());

  std::vector<OperatingPoint> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& a = hull.back();
      const double cross = (a.size - o.size) * (p.power - o.power) - (a.power - o.power) * (p.size - o.size);
      if (cross < 0.0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return RocCurve(std::move(hull));
}

CoordinateMatrix coordinates(const DetectorParams& params) {
  const HelstromSolution h = helstrom_spectrum(params);
  if (h.degenerate) throw DegenerateError("coordinates undefined for a degenerate spectrum");
  const double x2 = h.overlap.value;
  const double below = (1.0 - h.eta1) * (1.0 - h.eta1);
  const double above = (1.0 + h.eta1) * (1.0 + h.eta1);

  // Orthogonal states: eta1 = 1 and X^2 = 0, the 0/0 limit puts phi0 on eta0.
  double x00sq = 1.0;
  double x01sq = 0.0;
  if (below + x2 > 0.0) {
    x00sq = x2 / (below + x2);
    x01sq = below / (below + x2);
  }
  const double x10sq = x2 / (above + x2);
  const double x11sq = above / (above + x2);
  return {std::sqrt(x00sq), std::sqrt(x01sq), std::sqrt(x10sq), std::sqrt(x11sq)};
}

CoordinateMatrix eigenbasis_coordinates(const DetectorParams& params) {
  const HelstromSolution h = helstrom_spectrum(params);
  const Density rho0 = pure_density(params.p0);
  const Density rho1 = pure_density(params.p1);
  // Degenerate solutions carry the computational projectors.
  const double x01sq = born(rho0, h.q1);
  const double x11sq = born(rho1, h.q1);
  return {std::sqrt(1.0 - x01sq), std::sqrt(x01sq), std::sqrt(1.0 - x11sq), std::sqrt(x11sq)};
}

ReweightedDensities reweighted_densities(const DetectorParams& params) {
  if (helstrom_spectrum(params).degenerate) {
    throw DegenerateError("re-weighted densities undefined for a degenerate spectrum");
  }
  const CoordinateMatrix x = eigenbasis_coordinates(params);
  return {pure_density(x.x01 * x.x01), pure_density(x.x11 * x.x11)};
}

RegionOfAcceptance pure_region_in_computational_basis(const DetectorParams& params) {
  const CoordinateMatrix x = eigenbasis_coordinates(params);
  const double x11sq = x.x11 * x.x11;
  const double x01sq = x.x01 * x.x01;
  const double present = x11sq - params.lambda * x01sq;
  const double absent = (1.0 - x11sq) - params.lambda * (1.0 - x01sq);
  return RegionOfAcceptance::computational(region_from_signs(present, absent));
}

DominanceReport dominance_check(const DetectorParams& params, int grid, double tol) {
  if (grid < 2) throw DomainError("grid must have at least two points");
  const Fidelity fid = fidelity(params.p0, params.p1);
  const RocCurve envelope = classical_roc(params);

  DominanceReport report;
  report.grid = grid;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double x = k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1);
    const double gap = envelope.power_at(x) - quantum_roc(x, fid);
    if (gap > report.max_violation) {
      report.max_violation = gap;
      report.worst_size = x;
    }
    if (gap > tol) ++report.violations;
  }
  for (const auto& v : envelope.points()) {
    if (v.size > 0.0 && v.size < 1.0) {
      report.touch = v;
      report.touch_gap = quantum_roc(v.size, fid) - v.power;
      break;
    }
  }
  report.passed = report.violations == 0;
  return report;
}

BasisRelationReport basis_relation_check(const DetectorParams& params, double tol) {
  const HelstromSolution h = helstrom_spectrum(params);
  if (h.degenerate) throw DegenerateError("basis relations undefined for a degenerate spectrum");
  const Ket eta1 = h.q1.range_vector();
  const Ket phi0 = ket_from_probability(params.p0);
  const Ket phi1 = ket_from_probability(params.p1);

  // <eta1|phi> = sum over the computational basis |i><i|.
  auto inserted = [&](const Ket& phi) {
    Complex amp{};
    for (const Ket& basis : {Ket::one(), Ket::zero()}) {
      amp += inner(eta1.vec(), basis.vec()) * inner(basis.vec(), phi.vec());
    }
    return std::norm(amp);
  };

  BasisRelationReport r;
  r.qd_inserted = inserted(phi1);
  r.q0_inserted = inserted(phi0);
  r.qd_direct = born(pure_density(params.p1), h.q1);
  r.q0_direct = born(pure_density(params.p0), h.q1);
  const OperatingPoint q = quantum_operating_point(params);
  r.qd_closed = q.power;
  r.q0_closed = q.size;
  r.max_error = std::max({std::abs(r.qd_inserted - r.qd_closed), std::abs(r.q0_inserted - r.q0_closed),
                          std::abs(r.qd_direct - r.qd_closed), std::abs(r.q0_direct - r.q0_closed)});
  r.passed = r.max_error <= tol;
  return r;
}

}  // namespace qrank
