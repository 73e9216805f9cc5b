#include "qrank/cli/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

namespace qrank::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::string with_line(const std::string& what, int line) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

struct Line {
  int number;
  std::string text;
};

// Non-blank lines with CR and a leading UTF-8 BOM stripped.
std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (number == 1 && text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);
    if (trim(text).empty()) continue;
    lines.push_back({number, std::move(text)});
  }
  return lines;
}

bool parse_bit(std::string_view field, const char* what, int line) {
  if (field == "0") return false;
  if (field == "1") return true;
  throw InputError(std::string(what) + " must be 0 or 1, got '" + std::string(field) + "'", line);
}

std::vector<std::string> expect_header(const std::vector<Line>& lines,
                                       const std::vector<std::string>& expected) {
  if (lines.empty()) throw InputError("missing header");
  auto fields = split_csv_line(lines.front().text, lines.front().number);
  for (auto& f : fields) f = std::string(trim(f));
  if (fields != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i) want += (i ? "," : "") + expected[i];
    throw InputError("expected header " + want, lines.front().number);
  }
  return fields;
}

}  // namespace

InputError::InputError(const std::string& what, int line)
    : std::runtime_error(with_line(what, line)), line_(line) {}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  const auto dot = s.find('.');
  const std::size_t decimals = dot == std::string::npos ? 0 : s.size() - dot - 1;
  if (dot == std::string::npos) s += '.';
  if (decimals < 6) s.append(6 - decimals, '0');
  return s;
}

double parse_number(std::string_view field, int line) {
  field = trim(field);
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() ||
      !std::isfinite(value)) {
    throw InputError("not a number: '" + std::string(field) + "'", line);
  }
  return value;
}

std::vector<std::string> split_csv_line(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && trim(current).empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      current.clear();
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else if (was_quoted) {
      if (c != ' ' && c != '\t') throw InputError("text after closing quote", line_no);
    } else {
      current += c;
    }
  }
  if (quoted) throw InputError("unterminated quoted field", line_no);
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

std::string quote_csv_field(std::string_view field) {
  const bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<UnitRecord> parse_units(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) return {};
  auto header = split_csv_line(lines.front().text, lines.front().number);
  for (auto& f : header) f = std::string(trim(f));
  const bool has_label = header.size() == 3;
  if (header != std::vector<std::string>{"unit_id", "feature", "label"} &&
      header != std::vector<std::string>{"unit_id", "feature"}) {
    throw InputError("expected header unit_id,feature,label", lines.front().number);
  }

  std::vector<UnitRecord> units;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int n = lines[i].number;
    const auto fields = split_csv_line(lines[i].text, n);
    if (fields.size() != header.size()) {
      throw InputError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       n);
    }
    UnitRecord u;
    u.unit_id = fields[0];
    if (u.unit_id.empty()) throw InputError("empty unit_id", n);
    u.feature = parse_bit(fields[1], "feature", n);
    if (has_label && !fields[2].empty()) u.label = parse_bit(fields[2], "label", n);
    units.push_back(std::move(u));
  }
  return units;
}

std::vector<UnitRecord> read_units_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_units(in);
}

std::string serialize_units(const std::vector<UnitRecord>& units) {
  std::string out = "unit_id,feature,label\n";
  for (const auto& u : units) {
    out += quote_csv_field(u.unit_id);
    out += u.feature ? ",1," : ",0,";
    if (u.label) out += *u.label ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string serialize_ranked(const RankedList& list) {
  std::string out = "unit_id,score,accepted\n";
  for (const auto& e : list.entries) {
    out += quote_csv_field(e.unit_id) + ',' + format_number(e.score) + ',' + (e.accepted ? "1" : "0") + '\n';
  }
  return out;
}

RankedList parse_ranked(std::istream& in) {
  const auto lines = read_lines(in);
  expect_header(lines, {"unit_id", "score", "accepted"});
  RankedList list;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int n = lines[i].number;
    const auto f = split_csv_line(lines[i].text, n);
    if (f.size() != 3) throw InputError("expected 3 fields", n);
    list.entries.push_back({f[0], parse_number(f[1], n), parse_bit(f[2], "accepted", n)});
  }
  return list;
}

std::string serialize_roc(const RocCurve& curve) {
  std::string out = "size,power\n";
  for (const auto& p : curve.points()) out += format_number(p.size) + ',' + format_number(p.power) + '\n';
  return out;
}

RocCurve parse_roc(std::istream& in) {
  const auto lines = read_lines(in);
  expect_header(lines, {"size", "power"});
  std::vector<OperatingPoint> pts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int n = lines[i].number;
    const auto f = split_csv_line(lines[i].text, n);
    if (f.size() != 2) throw InputError("expected 2 fields", n);
    pts.push_back({parse_number(f[0], n), parse_number(f[1], n)});
  }
  try {
    return RocCurve(std::move(pts));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

std::vector<RocRow> roc_table(const DetectorParams& params, int grid) {
  if (grid < 2) throw DomainError("grid must have at least two points");
  std::vector<double> sizes;
  sizes.reserve(grid + 2);
  for (int k = 0; k < grid; ++k) sizes.push_back(k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1));
  sizes.push_back(params.p0);
  sizes.push_back(1.0 - params.p0);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  const RocCurve envelope = classical_roc(params);
  const Fidelity fid = fidelity(params.p0, params.p1);
  std::vector<RocRow> rows;
  rows.reserve(sizes.size());
  for (double s : sizes) rows.push_back({s, envelope.power_at(s), quantum_roc(s, fid)});
  return rows;
}

std::string serialize_roc_table(const std::vector<RocRow>& rows) {
  std::string out = "size,power_classical,power_quantum\n";
  for (const auto& r : rows) {
    out += format_number(r.size) + ',' + format_number(r.power_classical) + ',' +
           format_number(r.power_quantum) + '\n';
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InputError("cannot write " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot write " + path.string());
  }
}

}  // namespace qrank::cli
