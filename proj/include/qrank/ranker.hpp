// Probability estimation from labelled units and ranking under the classical
// (mixed) and quantum (re-weighted pure) discriminants.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrank/detection.hpp"

namespace qrank {

class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UnitRecord {
  std::string unit_id;
  bool feature = false;       // feature present
  std::optional<bool> label;  // useful (true) / useless (false)
};

/// Non-empty sequence of labelled records.
class TrainingSet {
 public:
  /// Throws EstimationError when empty or when a record has no label.
  explicit TrainingSet(std::vector<UnitRecord> records);

  const std::vector<UnitRecord>& records() const { return records_; }

 private:
  std::vector<UnitRecord> records_;
};

enum class Estimator {
  Likelihood,     // p_c = P(feature | label = c)
  ExampleCompat,  // p_f = P(useful | feature = f), as in the worked example
};

std::string_view to_string(Estimator e);
std::optional<Estimator> estimator_from_string(std::string_view s);

/// counts[label][feature].
struct ContingencyTable {
  int counts[2][2] = {{0, 0}, {0, 0}};

  int at(bool label, bool feature) const { return counts[label][feature]; }
  int with_label(bool label) const { return counts[label][0] + counts[label][1]; }
  int with_feature(bool feature) const { return counts[0][feature] + counts[1][feature]; }
};

struct EstimationResult {
  double p0 = 0.0;
  double p1 = 0.0;
  Estimator estimator = Estimator::Likelihood;
  double smoothing = 0.0;
  ContingencyTable table;
};

/// Relative-frequency estimates with add-`smoothing` correction.
EstimationResult estimate(const TrainingSet& ts, Estimator estimator = Estimator::Likelihood,
                          double smoothing = 0.0);

enum class ScoreMode { Classical, Quantum };

std::string_view to_string(ScoreMode m);

struct RankedEntry {
  std::string unit_id;
  double score = 0.0;
  bool accepted = false;
  bool operator==(const RankedEntry&) const = default;
};

/// Entries sorted by score descending, then unit_id ascending.
struct RankedList {
  std::vector<RankedEntry> entries;

  std::vector<std::string> accepted_ids() const;
  bool operator==(const RankedList&) const = default;
};

/// Classical: tr((mu1 - lambda mu0) P_feature). Quantum: the same with the
/// re-weighted densities sigma_i. accepted iff score > 0.
/// Quantum mode throws DegenerateError on a degenerate Helstrom spectrum.
RankedList score_units(const std::vector<UnitRecord>& units, const EstimationResult& est,
                       double lambda, ScoreMode mode);

struct ComparisonReport {
  DetectorParams params{};
  RankedList classical;
  RankedList quantum;
  RegionOfAcceptance mixed_region = RegionOfAcceptance::computational(Region::Never);
  RegionOfAcceptance pure_region = RegionOfAcceptance::computational(Region::Never);
  OperatingPoint classical_point{};  // (p0, p1), region P1
  std::optional<OperatingPoint> quantum_point;  // (Q0, Qd); absent when degenerate
  RocCurve classical_roc{{{0.0, 0.0}, {1.0, 1.0}}};
  std::vector<OperatingPoint> quantum_roc;  // sampled on a uniform grid
  std::vector<std::string> disagreement;    // ids accepted by exactly one mode
  bool rankings_differ = false;
  bool degenerate = false;
};

/// Scores `units` both ways. In the degenerate case the quantum side
/// uses sigma1 = sigma0, so every quantum score is 0.
ComparisonReport compare(const std::vector<UnitRecord>& units, const EstimationResult& est,
                         double lambda, int roc_grid = 101);

}  // namespace qrank
