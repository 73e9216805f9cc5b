#include "qrank/cli/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "qrank/detection.hpp"

namespace qrank::cli {

namespace {

std::string describe(double p0, double p1, double lambda) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "p0=%.17g p1=%.17g lambda=%.17g", p0, p1, lambda);
  return buf;
}

class Check {
 public:
  Check(std::string name, double tol) {
    result_.name = std::move(name);
    result_.tolerance = tol;
  }

  void record(double error, const std::function<std::string()>& where) {
    if (!(error <= result_.tolerance)) ++result_.failures;
    if (error > result_.max_error || std::isnan(error)) {
      result_.max_error = error;
      result_.worst = where();
    }
  }

  CheckResult finish() {
    result_.passed = result_.failures == 0;
    return result_;
  }

 private:
  CheckResult result_;
};

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double prob() { return unit(rng); }
  // lambda in (0, 4], or 1.
  DetectorParams params(bool random_lambda) {
    const double p0 = prob();
    const double p1 = prob();
    const double lambda = random_lambda ? 4.0 * (1.0 - prob()) : 1.0;
    return DetectorParams::make(p0, p1, lambda);
  }
  Ket ket() {
    for (;;) {
      const Vec2 v{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
      if (v.norm_squared() > 1e-6) return Ket::normalized(v);
    }
  }
  Density density() {
    const double w = prob();
    const Ket u = ket();
    const Ket v = ket();
    return Density(projector_of(u).matrix() * w + projector_of(v).matrix() * (1.0 - w));
  }
  Projector projector() {
    switch (rng() % 4) {
      case 0: return Projector::zero();
      case 1: return Projector::identity();
      default: return projector_of(ket());
    }
  }
};

double tol_or(const SelftestOptions& o, double fallback) { return o.tolerance.value_or(fallback); }

}  // namespace

bool SelftestReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string SelftestReport::summary() const {
  std::ostringstream s;
  for (const auto& c : checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %s  max_error=%.3e  tol=%.1e  failures=%d", c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", c.max_error, c.tolerance, c.failures);
    s << buf;
    if (!c.passed) s << "  worst: " << c.worst;
    s << '\n';
  }
  s << (passed() ? "selftest: PASS" : "selftest: FAIL") << '\n';
  return s.str();
}

SelftestReport run_selftest(const SelftestOptions& o) {
  SelftestReport report;
  const int n = o.draws;

  {
    // Closed-form eigenvalues against the roots of eta^2 - tr eta + det = 0.
    Sampler s(o.seed);
    Check eig("spectral_oracle", tol_or(o, kOracleTol));
    Check rec("spectral_reconstruction", tol_or(o, kStructuralTol));
    for (int i = 0; i < n; ++i) {
      const auto params = s.params(true);
      const Hermitian2 m = pure_density(params.p1).matrix() - params.lambda * pure_density(params.p0).matrix();
      const double tr = m.trace();
      const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * m.det()));
      const double lo = 0.5 * (tr - disc);
      const double hi = 0.5 * (tr + disc);
      const HelstromSolution h = helstrom_spectrum(params);
      auto where = [&] { return describe(params.p0, params.p1, params.lambda); };
      eig.record(std::max(std::abs(h.eta0 - lo), std::abs(h.eta1 - hi)), where);
      rec.record(spectral_decompose(m).reconstruct().max_abs_diff(m), where);
    }
    report.checks.push_back(eig.finish());
    report.checks.push_back(rec.finish());
  }

  {
    Sampler s(o.seed + 1);
    Check dom("dominance", tol_or(o, 1e-9));
    Check touch("exact_touch", tol_or(o, kStructuralTol));
    for (int i = 0; i < n; ++i) {
      const auto params = s.params(false);
      auto where = [&] { return describe(params.p0, params.p1, params.lambda); };
      const DominanceReport d = dominance_check(params, o.grid, tol_or(o, 1e-9));
      dom.record(std::max(0.0, d.max_violation), where);
      if (params.p1 >= params.p0) {
        touch.record(std::abs(quantum_roc(params.p0, fidelity(params.p0, params.p1)) - params.p1), where);
      }
    }
    report.checks.push_back(dom.finish());
    report.checks.push_back(touch.finish());
  }

  {
    Sampler s(o.seed + 2);
    Check q("reweighted_identities", tol_or(o, kStructuralTol));
    for (int i = 0; i < n; ++i) {
      const auto params = s.params(true);
      const auto [sigma0, sigma1] = reweighted_densities(params);
      const OperatingPoint pt = quantum_operating_point(params);
      q.record(std::max(std::abs(born(sigma0, Projector::present()) - pt.size),
                        std::abs(born(sigma1, Projector::present()) - pt.power)),
               [&] { return describe(params.p0, params.p1, params.lambda); });
    }
    report.checks.push_back(q.finish());
  }

  {
    Sampler s(o.seed + 3);
    Check c("roc_consistency", tol_or(o, kOracleTol));
    for (int i = 0; i < n; ++i) {
      const auto params = s.params(false);
      const OperatingPoint pt = quantum_operating_point(params);
      c.record(std::abs(quantum_roc(pt.size, fidelity(params.p0, params.p1)) - pt.power),
               [&] { return describe(params.p0, params.p1, params.lambda); });
    }
    report.checks.push_back(c.finish());
  }

  {
    Sampler s(o.seed + 4);
    Check born_check("born_normalization", tol_or(o, kStructuralTol));
    Check inter("interference", tol_or(o, kStructuralTol));
    for (int i = 0; i < n; ++i) {
      const Density rho = s.density();
      const Projector e = s.projector();
      const double p = born(rho, e);
      const double q = born(rho, e.complement());
      const double range_err = std::max({0.0, -p, p - 1.0});
      auto where = [&] {
        std::ostringstream w;
        w << "rho=[" << rho.matrix().a() << ',' << rho.matrix().d() << ',' << rho.matrix().b() << "] rank="
          << e.rank();
        return w.str();
      };
      born_check.record(std::max(range_err, std::abs(p + q - 1.0)), where);

      const Ket state = s.ket();
      const Ket observed = s.ket();
      const InterferenceTerms t = interference(state, observed);
      const double direct = std::norm(inner(observed.vec(), state.vec()));
      const double split = t.total == t.classical + t.interference ? 0.0 : 1.0;
      inter.record(std::max(split, std::abs(t.total - direct)), [] { return std::string("random kets"); });
    }
    report.checks.push_back(born_check.finish());
    report.checks.push_back(inter.finish());
  }

  return report;
}

}  // namespace qrank::cli
