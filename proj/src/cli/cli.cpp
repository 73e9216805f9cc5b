#include "qrank/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <string>

#include "qrank/cli/csv_io.hpp"
#include "qrank/cli/report.hpp"
#include "qrank/cli/selftest.hpp"
#include "qrank/cli/svg.hpp"

namespace qrank::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string test;
  std::string output;
  std::optional<double> p0;
  std::optional<double> p1;
  double lambda = 1.0;
  std::string estimator = "likelihood";
  double smoothing = 0.0;
  int grid = 1001;
  std::string format;
  std::uint64_t seed = 1;
  std::string mode = "quantum";
  int draws = 10000;
  std::optional<double> tolerance;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "training CSV (unit_id,feature,label)");
  cmd->add_option("--output", cfg.output, "output file; stdout when omitted");
  cmd->add_option("--p0", cfg.p0, "feature probability under H0");
  cmd->add_option("--p1", cfg.p1, "feature probability under H1");
  cmd->add_option("--lambda", cfg.lambda, "detection threshold (> 0)")->capture_default_str();
  cmd->add_option("--estimator", cfg.estimator, "likelihood | example-compat")->capture_default_str();
  cmd->add_option("--smoothing", cfg.smoothing, "additive smoothing (>= 0)")->capture_default_str();
  cmd->add_option("--grid", cfg.grid, "number of ROC grid points (>= 2)")->capture_default_str();
  cmd->add_option("--format", cfg.format, "csv | json | svg");
  cmd->add_option("--seed", cfg.seed, "random seed for sweeps")->capture_default_str();
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw InputError("unsupported --format '" + format + "' for this command");
}

void validate(const RunConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw InputError("--lambda must be positive");
  if (cfg.grid < 2) throw InputError("--grid must be at least 2");
  if (!(cfg.smoothing >= 0.0)) throw InputError("--smoothing must be non-negative");
  if (!estimator_from_string(cfg.estimator)) {
    throw InputError("--estimator must be likelihood or example-compat, got '" + cfg.estimator + "'");
  }
}

class Command {
 public:
  Command(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(const std::string& content) const {
    if (cfg_.output.empty() || cfg_.output == "-") {
      out_ << content;
    } else {
      atomic_write(cfg_.output, content);
    }
  }

  EstimationResult estimation() const {
    if (cfg_.input.empty()) throw InputError("--input is required");
    return estimate(TrainingSet(read_units_file(cfg_.input)), *estimator_from_string(cfg_.estimator),
                    cfg_.smoothing);
  }

  DetectorParams params() const {
    double p0 = 0.0;
    double p1 = 0.0;
    if (cfg_.p0 && cfg_.p1) {
      p0 = *cfg_.p0;
      p1 = *cfg_.p1;
    } else if (!cfg_.input.empty()) {
      const EstimationResult est = estimation();
      p0 = cfg_.p0.value_or(est.p0);
      p1 = cfg_.p1.value_or(est.p1);
    } else {
      throw InputError("need --p0 and --p1, or --input");
    }
    try {
      return DetectorParams::make(p0, p1, cfg_.lambda);
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  }

  std::vector<UnitRecord> test_units() const {
    return read_units_file(cfg_.test.empty() ? cfg_.input : cfg_.test);
  }

  int estimate_cmd() const {
    emit(to_json(estimation()).dump(2) + "\n");
    return kExitOk;
  }

  int detect_cmd() const {
    emit(detection_report(params()).dump(2) + "\n");
    return kExitOk;
  }

  int roc_cmd() const {
    const std::string format = cfg_.format.empty() ? "csv" : cfg_.format;
    require_format(format, {"csv", "svg", "json"});
    const DetectorParams p = params();
    const auto rows = roc_table(p, cfg_.grid);
    if (format == "svg") {
      emit(render_roc_svg(p, rows));
    } else if (format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        j.push_back({{"size", r.size}, {"power_classical", r.power_classical}, {"power_quantum", r.power_quantum}});
      }
      emit(j.dump(2) + "\n");
    } else {
      emit(serialize_roc_table(rows));
    }
    return kExitOk;
  }

  int rank_cmd() const {
    const std::string format = cfg_.format.empty() ? "csv" : cfg_.format;
    require_format(format, {"csv", "json"});
    ScoreMode mode = ScoreMode::Quantum;
    if (cfg_.mode == "classical") {
      mode = ScoreMode::Classical;
    } else if (cfg_.mode != "quantum") {
      throw InputError("--mode must be classical or quantum");
    }
    const EstimationResult est = estimation();
    const auto units = test_units();
    const RankedList list = score_units(units, est, cfg_.lambda, mode);
    emit(format == "json" ? to_json(list).dump(2) + "\n" : serialize_ranked(list));
    return kExitOk;
  }

  int compare_cmd() const {
    const std::string format = cfg_.format.empty() ? "json" : cfg_.format;
    require_format(format, {"json"});
    const EstimationResult est = estimation();
    const auto units = test_units();
    emit(to_json(compare(units, est, cfg_.lambda, cfg_.grid)).dump(2) + "\n");
    return kExitOk;
  }

  int selftest_cmd() const {
    const std::string format = cfg_.format.empty() ? "text" : cfg_.format;
    require_format(format, {"text", "json"});
    if (cfg_.draws < 1) throw InputError("--draws must be positive");
    if (cfg_.tolerance && !(*cfg_.tolerance >= 0.0)) throw InputError("--tolerance must be non-negative");
    const SelftestReport report = run_selftest({cfg_.seed, cfg_.draws, cfg_.grid, cfg_.tolerance});
    if (format == "json") {
      nlohmann::ordered_json j = {{"seed", cfg_.seed}, {"draws", cfg_.draws}, {"passed", report.passed()}};
      j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"max_error", c.max_error},
                               {"tolerance", c.tolerance},
                               {"failures", c.failures},
                               {"worst", c.worst}});
      }
      emit(j.dump(2) + "\n");
    } else {
      emit(report.summary());
    }
    return report.passed() ? kExitOk : kExitViolation;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Classical and quantum (Helstrom) binary detectors for ranking information units", "qrank"};
  app.require_subcommand(1, 1);

  auto* estimate_cmd = app.add_subcommand("estimate", "estimate p0, p1 from a training CSV");
  auto* detect_cmd = app.add_subcommand("detect", "Helstrom spectrum, regions and operating points");
  auto* roc_cmd = app.add_subcommand("roc", "classical and quantum ROC curves");
  auto* rank_cmd = app.add_subcommand("rank", "rank units under one discriminant");
  auto* compare_cmd = app.add_subcommand("compare", "rank under both discriminants and compare");
  auto* selftest_cmd = app.add_subcommand("selftest", "run the seeded invariant sweeps");
  for (auto* cmd : {estimate_cmd, detect_cmd, roc_cmd, rank_cmd, compare_cmd, selftest_cmd}) add_common(cmd, cfg);
  for (auto* cmd : {rank_cmd, compare_cmd}) {
    cmd->add_option("--test", cfg.test, "units to rank; defaults to --input");
  }
  rank_cmd->add_option("--mode", cfg.mode, "classical | quantum")->capture_default_str();
  selftest_cmd->add_option("--draws", cfg.draws, "random draws per check")->capture_default_str();
  selftest_cmd->add_option("--tolerance", cfg.tolerance, "override every check tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    validate(cfg);
    const Command cmd(cfg, out);
    if (*estimate_cmd) return cmd.estimate_cmd();
    if (*detect_cmd) return cmd.detect_cmd();
    if (*roc_cmd) return cmd.roc_cmd();
    if (*rank_cmd) return cmd.rank_cmd();
    if (*compare_cmd) return cmd.compare_cmd();
    if (*selftest_cmd) return cmd.selftest_cmd();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace qrank::cli
