// File formats: unit CSV (unit_id,feature,label), ranked CSV
// (unit_id,score,accepted), ROC CSV (size,power) and the ROC comparison
// table (size,power_classical,power_quantum).
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qrank/detection.hpp"
#include "qrank/ranker.hpp"

namespace qrank::cli {

/// Malformed or unreadable input. `line` is 1-based, 0 when not applicable.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// Fixed notation, shortest round-trip digits, padded to at least six
/// decimals: 0.2 -> "0.200000".
std::string format_number(double x);
/// Strict parse of a whole field; throws InputError.
double parse_number(std::string_view field, int line = 0);

/// Splits one CSV record; supports double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line, int line_no = 0);
/// Quotes a field when it contains a comma, quote, or surrounding space.
std::string quote_csv_field(std::string_view field);

/// Header `unit_id,feature,label` (label column optional, values may be
/// empty). Blank lines are skipped. Empty input yields no records.
std::vector<UnitRecord> parse_units(std::istream& in);
std::vector<UnitRecord> read_units_file(const std::filesystem::path& path);
std::string serialize_units(const std::vector<UnitRecord>& units);

std::string serialize_ranked(const RankedList& list);
RankedList parse_ranked(std::istream& in);

std::string serialize_roc(const RocCurve& curve);
RocCurve parse_roc(std::istream& in);

struct RocRow {
  double size;
  double power_classical;
  double power_quantum;
};

/// Uniform grid of `grid` sizes plus the deterministic touch sizes p0 and
/// 1 - p0, sorted and de-duplicated.
std::vector<RocRow> roc_table(const DetectorParams& params, int grid);
std::string serialize_roc_table(const std::vector<RocRow>& rows);

/// Writes to `path` through a temporary sibling and a rename.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace qrank::cli
