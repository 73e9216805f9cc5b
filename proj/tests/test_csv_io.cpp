#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qrank/cli/csv_io.hpp"

using namespace qrank;
using namespace qrank::cli;

namespace {

std::vector<UnitRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_units(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(FormatNumber, PadsToSixDecimals) {
  EXPECT_EQ(format_number(0.2), "0.200000");
  EXPECT_EQ(format_number(1.0), "1.000000");
  EXPECT_EQ(format_number(-0.0), "0.000000");
  EXPECT_EQ(format_number(0.704988805276466), "0.704988805276466");
  EXPECT_EQ(format_number(1e-7), "0.0000001");
}

TEST(FormatNumber, RoundTrips) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(parse_number(format_number(x)), x);
  }
}

TEST(ParseNumber, Strict) {
  EXPECT_EQ(parse_number("0.5"), 0.5);
  EXPECT_EQ(parse_number(" 0.5 "), 0.5);
  EXPECT_THROW(parse_number("0.5x"), InputError);
  EXPECT_THROW(parse_number(""), InputError);
  EXPECT_THROW(parse_number("nan"), InputError);
}

TEST(SplitCsv, Quoting) {
  EXPECT_EQ(split_csv_line("a,b,c"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(split_csv_line("\"a,b\",\"say \"\"hi\"\"\",c"), (std::vector<std::string>{"a,b", "say \"hi\"", "c"}));
  EXPECT_EQ(split_csv_line("a,,"), (std::vector<std::string>{"a", "", ""}));
  EXPECT_THROW(split_csv_line("\"open"), InputError);
  EXPECT_EQ(quote_csv_field("plain"), "plain");
  EXPECT_EQ(quote_csv_field("a,b"), "\"a,b\"");
}

TEST(ParseUnits, Basic) {
  const auto units = parse("unit_id,feature,label\r\nu1,1,1\r\n\r\nu2,0,\n");
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].unit_id, "u1");
  EXPECT_TRUE(units[0].feature);
  EXPECT_EQ(units[0].label, true);
  EXPECT_FALSE(units[1].feature);
  EXPECT_FALSE(units[1].label.has_value());
}

TEST(ParseUnits, LabelColumnOptional) {
  const auto units = parse("\xEF\xBB\xBFunit_id,feature\nx,1\n");
  ASSERT_EQ(units.size(), 1u);
  EXPECT_FALSE(units[0].label.has_value());
}

TEST(ParseUnits, EmptyInputIsEmpty) {
  EXPECT_TRUE(parse("").empty());
  EXPECT_TRUE(parse("\n\n").empty());
}

TEST(ParseUnits, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("unit_id,feature,label\nu1,1,1\nu2,2,0\n"), 3);
  EXPECT_EQ(error_line("unit_id,feature,label\nu1,1,1\n\nu2,1,7\n"), 4);
  EXPECT_EQ(error_line("unit_id,feature,label\nu1,1\n"), 2);
  EXPECT_EQ(error_line("id,feature,label\nu1,1,1\n"), 1);
  EXPECT_EQ(error_line("unit_id,feature,label\n,1,1\n"), 2);
  try {
    parse("unit_id,feature,label\nu1,2,1\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "line 2: feature must be 0 or 1, got '2'");
  }
}

TEST(ParseUnits, MissingFile) {
  EXPECT_THROW(read_units_file("/nonexistent/qrank.csv"), InputError);
}

TEST(Units, RoundTrip) {
  const std::vector<UnitRecord> units = {{"a,1", true, true}, {"b", false, std::nullopt}, {"c", false, false}};
  const auto back = parse(serialize_units(units));
  ASSERT_EQ(back.size(), units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    EXPECT_EQ(back[i].unit_id, units[i].unit_id);
    EXPECT_EQ(back[i].feature, units[i].feature);
    EXPECT_EQ(back[i].label, units[i].label);
  }
}

TEST(Ranked, RoundTripProperty) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    RankedList list;
    const int n = static_cast<int>(rng() % 12);
    for (int k = 0; k < n; ++k) {
      const double s = u(rng);
      list.entries.push_back({"id " + std::to_string(rng() % 1000) + (k % 3 == 0 ? ",x" : ""), s, s > 0.0});
    }
    std::istringstream in(serialize_ranked(list));
    EXPECT_EQ(parse_ranked(in), list);
  }
}

TEST(Ranked, Format) {
  RankedList list;
  list.entries.push_back({"u1", 0.4, true});
  list.entries.push_back({"u2", -0.4, false});
  EXPECT_EQ(serialize_ranked(list), "unit_id,score,accepted\nu1,0.400000,1\nu2,-0.400000,0\n");
}

TEST(Roc, RoundTripProperty) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const RocCurve c = classical_roc(DetectorParams::make(u(rng), u(rng)));
    std::istringstream in(serialize_roc(c));
    const RocCurve back = parse_roc(in);
    ASSERT_EQ(back.points().size(), c.points().size());
    for (std::size_t k = 0; k < c.points().size(); ++k) {
      EXPECT_EQ(back.points()[k].size, c.points()[k].size);
      EXPECT_EQ(back.points()[k].power, c.points()[k].power);
    }
  }
}

TEST(Roc, ParseRejectsBadRows) {
  std::istringstream unsorted("size,power\n0,0\n0.5,0.5\n0.4,0.6\n1,1\n");
  EXPECT_THROW(parse_roc(unsorted), InputError);
  std::istringstream bad("size,power\n0,zero\n");
  try {
    parse_roc(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(RocTable, TouchRowsAndEndpoint) {
  const auto rows = roc_table(DetectorParams::make(0.2, 0.6), 5);
  // 0, 0.2, 0.25, 0.5, 0.75, 0.8, 1
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[1].size, 0.2);
  EXPECT_NEAR(rows[1].power_classical, 0.6, 1e-12);
  EXPECT_NEAR(rows[1].power_quantum, 0.6, 1e-9);
  EXPECT_GE(rows[1].power_quantum, rows[1].power_classical - 1e-12);
  EXPECT_EQ(rows.back().size, 1.0);
  EXPECT_EQ(rows.back().power_classical, 1.0);
  EXPECT_EQ(rows.back().power_quantum, 1.0);
  const double overlap_sq = fidelity(0.2, 0.6).value;
  for (const auto& r : rows) {
    if (r.size > overlap_sq) {
      EXPECT_EQ(r.power_quantum, 1.0);
    }
  }
  const std::string csv = serialize_roc_table(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "size,power_classical,power_quantum");
  EXPECT_NE(csv.find("\n1.000000,1.000000,1.000000\n"), std::string::npos);
}

TEST(AtomicWrite, ReplacesFile) {
  const auto dir = std::filesystem::temp_directory_path() / "qrank_atomic_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  atomic_write(path, "first\n");
  atomic_write(path, "second\n");
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  EXPECT_THROW(atomic_write(dir / "missing" / "x.csv", "x"), InputError);
  std::filesystem::remove_all(dir);
}
