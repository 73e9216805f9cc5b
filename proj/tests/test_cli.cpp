#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qrank/cli/cli.hpp"

namespace fs = std::filesystem;
using qrank::cli::kExitInput;
using qrank::cli::kExitOk;
using qrank::cli::kExitViolation;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "qrank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = qrank::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

const std::string kTable1 = QRANK_DATA_DIR "/table1.csv";
const std::string kCounter = QRANK_DATA_DIR "/counterexample.csv";

class TempDir {
 public:
  TempDir() {
    const char* test = ::testing::UnitTest::GetInstance()->current_test_info()->name();
    path_ = fs::temp_directory_path() / (std::string("qrank_cli_") + test);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  fs::path path(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

nlohmann::json parse_json(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST(CliEstimate, TableOne) {
  Outcome o = run({"estimate", "--input", kTable1, "--estimator", "example-compat"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  nlohmann::json j = parse_json(o.out);
  EXPECT_EQ(j["p0"].get<double>(), 0.2);
  EXPECT_EQ(j["p1"].get<double>(), 0.6);
  EXPECT_EQ(j["estimator"], "example-compat");
  EXPECT_EQ(j["counts"]["useful_present"], 3);

  o = run({"estimate", "--input", kTable1, "--estimator", "likelihood"});
  ASSERT_EQ(o.status, kExitOk);
  j = parse_json(o.out);
  EXPECT_NEAR(j["p0"].get<double>(), 0.3333, 1e-4);
  EXPECT_EQ(j["p1"].get<double>(), 0.75);
}

TEST(CliEstimate, EmptyFile) {
  TempDir dir;
  const Outcome o = run({"estimate", "--input", dir.file("empty.csv", "")});
  EXPECT_EQ(o.status, kExitInput);
  EXPECT_NE(o.err.find("empty training set"), std::string::npos) << o.err;
}

TEST(CliEstimate, InputErrors) {
  EXPECT_EQ(run({"estimate"}).status, kExitInput);
  EXPECT_EQ(run({"estimate", "--input", "/nonexistent.csv"}).status, kExitInput);
  EXPECT_EQ(run({"estimate", "--input", kTable1, "--estimator", "bayes"}).status, kExitInput);
  EXPECT_EQ(run({"estimate", "--input", kTable1, "--smoothing", "-1"}).status, kExitInput);
  EXPECT_EQ(run({"nosuchcommand"}).status, kExitInput);
  EXPECT_EQ(run({}).status, kExitInput);
  EXPECT_EQ(run({"detect", "--p0", "0.5", "--p1", "0.5", "--lambda", "0"}).status, kExitInput);
  EXPECT_EQ(run({"detect", "--p0", "1.5", "--p1", "0.5"}).status, kExitInput);
  EXPECT_EQ(run({"roc", "--p0", "0.2", "--p1", "0.6", "--grid", "1"}).status, kExitInput);
  EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST(CliDetect, CounterExample) {
  const Outcome o = run({"detect", "--p0", "1", "--p1", "0.7", "--lambda", "0.5"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const nlohmann::json j = parse_json(o.out);
  EXPECT_NEAR(j["coordinates"]["x11sq"].get<double>(), 0.8070, 5e-5);
  EXPECT_NEAR(j["coordinates"]["x01sq"].get<double>(), 0.1066, 5e-5);
  EXPECT_EQ(j["mixed_region"], "Always");
  EXPECT_EQ(j["pure_region"], "AcceptOnPresent");
  EXPECT_NEAR(j["R"].get<double>(), 0.460977, 1e-6);
  EXPECT_EQ(j["degenerate"], false);
}

TEST(CliDetect, ExampleOne) {
  const Outcome o = run({"detect", "--p0", "0.2", "--p1", "0.6"});
  ASSERT_EQ(o.status, kExitOk);
  const nlohmann::json j = parse_json(o.out);
  EXPECT_NEAR(j["quantum_point"]["size"].get<double>(), 0.2950, 5e-5);
  EXPECT_NEAR(j["quantum_point"]["power"].get<double>(), 0.7050, 5e-5);
}

TEST(CliDetect, FromTrainingData) {
  const Outcome o = run({"detect", "--input", kTable1, "--estimator", "example-compat"});
  ASSERT_EQ(o.status, kExitOk);
  EXPECT_EQ(parse_json(o.out)["p1"].get<double>(), 0.6);
}

TEST(CliDetect, Degenerate) {
  const Outcome o = run({"detect", "--p0", "0.5", "--p1", "0.5", "--lambda", "1"});
  ASSERT_EQ(o.status, kExitOk);
  const nlohmann::json j = parse_json(o.out);
  EXPECT_EQ(j["degenerate"], true);
  EXPECT_TRUE(j["quantum_point"].is_null());
}

TEST(CliRoc, GridFive) {
  const Outcome o = run({"roc", "--p0", "0.2", "--p1", "0.6", "--grid", "5"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "size,power_classical,power_quantum");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.back(), "1.000000,1.000000,1.000000");
  bool touch = false;
  for (const auto& r : rows) {
    if (r.rfind("0.200000,", 0) == 0) {
      touch = true;
      const auto first = r.find(',');
      const auto second = r.find(',', first + 1);
      const double classical = std::stod(r.substr(first + 1, second - first - 1));
      const double quantum = std::stod(r.substr(second + 1));
      EXPECT_NEAR(classical, 0.6, 1e-12);
      EXPECT_NEAR(quantum, 0.6, 1e-9);
    }
  }
  EXPECT_TRUE(touch);
}

TEST(CliRoc, SvgAndFileOutput) {
  TempDir dir;
  const auto svg = dir.path("roc.svg");
  const Outcome o = run({"roc", "--p0", "0.2", "--p1", "0.6", "--format", "svg", "--output", svg.string()});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(svg);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str().rfind("<svg", 0), 0u);
  EXPECT_NE(s.str().find("</svg>"), std::string::npos);
  EXPECT_NE(s.str().find("<polyline"), std::string::npos);
  EXPECT_EQ(run({"roc", "--p0", "0.2", "--p1", "0.6", "--format", "xml"}).status, kExitInput);
}

TEST(CliRank, TableOneBothModes) {
  for (const char* mode : {"classical", "quantum"}) {
    const Outcome o = run({"rank", "--input", kTable1, "--estimator", "example-compat", "--mode", mode});
    ASSERT_EQ(o.status, kExitOk) << o.err;
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "unit_id,score,accepted");
    std::vector<std::string> accepted;
    while (std::getline(in, line)) {
      if (line.back() == '1') accepted.push_back(line.substr(0, line.find(',')));
    }
    EXPECT_EQ(accepted, (std::vector<std::string>{"u1", "u2", "u3", "u4", "u5"})) << mode;
  }
}

TEST(CliRank, UnknownFeatureValue) {
  TempDir dir;
  const std::string test = dir.file("test.csv", "unit_id,feature\nt1,1\nt2,2\n");
  const Outcome o = run({"rank", "--input", kTable1, "--test", test});
  EXPECT_EQ(o.status, kExitInput);
  EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("'2'"), std::string::npos) << o.err;
}

TEST(CliRank, DegenerateQuantumIsAnInputError) {
  TempDir dir;
  const std::string train = dir.file("flat.csv", "unit_id,feature,label\na,1,1\nb,1,0\nc,0,1\nd,0,0\n");
  EXPECT_EQ(run({"rank", "--input", train, "--mode", "quantum"}).status, kExitInput);
  EXPECT_EQ(run({"rank", "--input", train, "--mode", "classical"}).status, kExitOk);
}

TEST(CliCompare, CounterExampleCorpus) {
  const Outcome o = run({"compare", "--input", kCounter, "--lambda", "0.5"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const nlohmann::json j = parse_json(o.out);
  EXPECT_EQ(j["rankings_differ"], true);
}

TEST(CliCompare, ExampleOne) {
  const Outcome o = run({"compare", "--input", kTable1, "--estimator", "example-compat"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  const nlohmann::json j = parse_json(o.out);
  EXPECT_EQ(j["rankings_differ"], false);
}

TEST(CliSelftest, PassesAndIsReproducible) {
  const Outcome a = run({"selftest", "--draws", "500", "--seed", "9"});
  const Outcome b = run({"selftest", "--draws", "500", "--seed", "9"});
  EXPECT_EQ(a.status, kExitOk) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("selftest: PASS"), std::string::npos);
  const Outcome j = run({"selftest", "--draws", "200", "--format", "json"});
  EXPECT_EQ(parse_json(j.out)["passed"], true);
}

TEST(CliSelftest, ZeroToleranceFails) {
  const Outcome a = run({"selftest", "--draws", "500", "--tolerance", "0"});
  const Outcome b = run({"selftest", "--draws", "500", "--tolerance", "0"});
  EXPECT_EQ(a.status, kExitViolation);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("worst: p0="), std::string::npos) << a.out;
}

TEST(CliOutput, ByteIdenticalAcrossRuns) {
  TempDir dir;
  const auto first = dir.path("a.csv");
  const auto second = dir.path("b.csv");
  run({"rank", "--input", kCounter, "--lambda", "0.5", "--output", first.string()});
  run({"rank", "--input", kCounter, "--lambda", "0.5", "--output", second.string()});
  std::ifstream fa(first);
  std::ifstream fb(second);
  std::stringstream sa;
  std::stringstream sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}
