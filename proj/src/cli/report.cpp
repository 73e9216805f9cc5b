#include "qrank/cli/report.hpp"

#include <string>

namespace qrank::cli {

using nlohmann::ordered_json;

ordered_json to_json(const OperatingPoint& p) { return {{"size", p.size}, {"power", p.power}}; }

ordered_json to_json(const CoordinateMatrix& x) {
  return {{"x00", x.x00},        {"x01", x.x01},        {"x10", x.x10},        {"x11", x.x11},
          {"x00sq", x.x00 * x.x00}, {"x01sq", x.x01 * x.x01}, {"x10sq", x.x10 * x.x10},
          {"x11sq", x.x11 * x.x11}};
}

ordered_json to_json(const RankedList& list) {
  ordered_json out = ordered_json::array();
  for (const auto& e : list.entries) {
    out.push_back({{"unit_id", e.unit_id}, {"score", e.score}, {"accepted", e.accepted}});
  }
  return out;
}

ordered_json to_json(const EstimationResult& est) {
  const auto& t = est.table;
  ordered_json counts = {
      {"useless_absent", t.at(false, false)},
      {"useless_present", t.at(false, true)},
      {"useful_absent", t.at(true, false)},
      {"useful_present", t.at(true, true)},
  };
  return {{"p0", est.p0},
          {"p1", est.p1},
          {"estimator", std::string(to_string(est.estimator))},
          {"smoothing", est.smoothing},
          {"counts", counts}};
}

ordered_json to_json(const ComparisonReport& r) {
  ordered_json roc_c = ordered_json::array();
  for (const auto& p : r.classical_roc.points()) roc_c.push_back(to_json(p));
  ordered_json roc_q = ordered_json::array();
  for (const auto& p : r.quantum_roc) roc_q.push_back(to_json(p));

  return {{"p0", r.params.p0},
          {"p1", r.params.p1},
          {"lambda", r.params.lambda},
          {"degenerate", r.degenerate},
          {"rankings_differ", r.rankings_differ},
          {"disagreement", r.disagreement},
          {"mixed_region", std::string(to_string(r.mixed_region.choice))},
          {"pure_region", std::string(to_string(r.pure_region.choice))},
          {"classical_point", to_json(r.classical_point)},
          {"quantum_point", r.quantum_point ? to_json(*r.quantum_point) : ordered_json(nullptr)},
          {"classical", to_json(r.classical)},
          {"quantum", to_json(r.quantum)},
          {"classical_roc", roc_c},
          {"quantum_roc", roc_q}};
}

ordered_json detection_report(const DetectorParams& params) {
  const HelstromSolution h = helstrom_spectrum(params);
  ordered_json out = {
      {"p0", params.p0},
      {"p1", params.p1},
      {"lambda", params.lambda},
      {"degenerate", h.degenerate},
      {"eta0", h.eta0},
      {"eta1", h.eta1},
      {"R", h.big_r},
      {"R_squared", h.big_r * h.big_r},
      {"overlap", h.overlap.value},
      {"amplitude_overlap", amplitude_overlap(params.p0, params.p1)},
      {"helstrom_region", std::string(to_string(h.region.choice))},
      {"mixed_region", std::string(to_string(mixed_region(params).choice))},
      {"pure_region", std::string(to_string(pure_region_in_computational_basis(params).choice))},
      {"classical_point", to_json(mixed_operating_point(params))},
  };
  if (h.degenerate) {
    out["coordinates"] = nullptr;
    out["eigenbasis_coordinates"] = nullptr;
    out["quantum_point"] = nullptr;
  } else {
    out["coordinates"] = to_json(coordinates(params));
    out["eigenbasis_coordinates"] = to_json(eigenbasis_coordinates(params));
    out["quantum_point"] = to_json(quantum_operating_point(params));
  }
  return out;
}

}  // namespace qrank::cli
