#include "qrank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qrank {

namespace {

double smoothed_ratio(int hits, int total, double smoothing, const char* what) {
  const double den = total + 2.0 * smoothing;
  if (!(den > 0.0)) {
    std::ostringstream msg;
    msg << "cannot estimate " << what << ": conditioning class is empty";
    throw EstimationError(msg.str());
  }
  return (hits + smoothing) / den;
}

RankedList rank_with(const std::vector<UnitRecord>& units, const Density& h1, const Density& h0,
                     double lambda) {
  const double present = discriminant(h1, h0, lambda, Projector::present());
  const double absent = discriminant(h1, h0, lambda, Projector::absent());
  RankedList list;
  list.entries.reserve(units.size());
  for (const auto& u : units) {
    const double score = u.feature ? present : absent;
    list.entries.push_back({u.unit_id, score, score > 0.0});
  }
  std::sort(list.entries.begin(), list.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.unit_id < b.unit_id;
  });
  return list;
}

}  // namespace

TrainingSet::TrainingSet(std::vector<UnitRecord> records) : records_(std::move(records)) {
  if (records_.empty()) throw EstimationError("empty training set");
  for (const auto& r : records_) {
    if (!r.label) throw EstimationError("training unit '" + r.unit_id + "' has no label");
  }
}

std::string_view to_string(Estimator e) {
  return e == Estimator::Likelihood ? "likelihood" : "example-compat";
}

std::optional<Estimator> estimator_from_string(std::string_view s) {
  if (s == "likelihood") return Estimator::Likelihood;
  if (s == "example-compat") return Estimator::ExampleCompat;
  return std::nullopt;
}

std::string_view to_string(ScoreMode m) { return m == ScoreMode::Classical ? "classical" : "quantum"; }

EstimationResult estimate(const TrainingSet& ts, Estimator estimator, double smoothing) {
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    throw EstimationError("smoothing must be a non-negative number");
  }
  EstimationResult r;
  r.estimator = estimator;
  r.smoothing = smoothing;
  for (const auto& u : ts.records()) ++r.table.counts[*u.label][u.feature];

  const auto& t = r.table;
  if (estimator == Estimator::Likelihood) {
    r.p0 = smoothed_ratio(t.at(false, true), t.with_label(false), smoothing, "p0 (no useless units)");
    r.p1 = smoothed_ratio(t.at(true, true), t.with_label(true), smoothing, "p1 (no useful units)");
  } else {
    r.p0 = smoothed_ratio(t.at(true, false), t.with_feature(false), smoothing,
                          "p0 (no feature-absent units)");
    r.p1 = smoothed_ratio(t.at(true, true), t.with_feature(true), smoothing,
                          "p1 (no feature-present units)");
  }
  return r;
}

std::vector<std::string> RankedList::accepted_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : entries) {
    if (e.accepted) ids.push_back(e.unit_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

RankedList score_units(const std::vector<UnitRecord>& units, const EstimationResult& est,
                       double lambda, ScoreMode mode) {
  const DetectorParams params = DetectorParams::make(est.p0, est.p1, lambda);
  if (mode == ScoreMode::Classical) {
    return rank_with(units, mixture(params.p1), mixture(params.p0), lambda);
  }
  const auto [sigma0, sigma1] = reweighted_densities(params);
  return rank_with(units, sigma1, sigma0, lambda);
}

ComparisonReport compare(const std::vector<UnitRecord>& units, const EstimationResult& est,
                         double lambda, int roc_grid) {
  if (roc_grid < 2) throw DomainError("grid must have at least two points");
  ComparisonReport report;
  report.params = DetectorParams::make(est.p0, est.p1, lambda);
  const DetectorParams& params = report.params;

  report.degenerate = helstrom_spectrum(params).degenerate;
  report.classical = score_units(units, est, lambda, ScoreMode::Classical);
  if (report.degenerate) {
    const Density rho = pure_density(params.p1);
    report.quantum = rank_with(units, rho, rho, lambda);
  } else {
    report.quantum = score_units(units, est, lambda, ScoreMode::Quantum);
    report.quantum_point = quantum_operating_point(params);
  }
  report.mixed_region = mixed_region(params);
  report.pure_region = pure_region_in_computational_basis(params);
  report.classical_point = mixed_operating_point(params);
  report.classical_roc = classical_roc(params);

  const Fidelity fid = fidelity(params.p0, params.p1);
  report.quantum_roc.reserve(roc_grid);
  for (int k = 0; k < roc_grid; ++k) {
    const double x = k == roc_grid - 1 ? 1.0 : static_cast<double>(k) / (roc_grid - 1);
    report.quantum_roc.push_back({x, quantum_roc(x, fid)});
  }

  const auto a = report.classical.accepted_ids();
  const auto b = report.quantum.accepted_ids();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(report.disagreement));
  report.rankings_differ = !report.disagreement.empty();
  return report;
}

}  // namespace qrank
