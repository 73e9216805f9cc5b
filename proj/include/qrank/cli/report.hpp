// JSON views of estimation, detection and comparison results.
#pragma once

#include <json.hpp>

#include "qrank/detection.hpp"
#include "qrank/ranker.hpp"

namespace qrank::cli {

nlohmann::ordered_json to_json(const OperatingPoint& p);
nlohmann::ordered_json to_json(const CoordinateMatrix& x);
nlohmann::ordered_json to_json(const RankedList& list);
nlohmann::ordered_json to_json(const EstimationResult& est);
nlohmann::ordered_json to_json(const ComparisonReport& report);

/// Helstrom spectrum, coordinates, both regions and both operating points.
/// Degenerate inputs produce `"degenerate": true` with null quantum fields.
nlohmann::ordered_json detection_report(const DetectorParams& params);

}  // namespace qrank::cli
