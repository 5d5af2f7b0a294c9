// Command line front end: one-group and multi-group high-dimensional
// repeated-measure tests plus the simulation harness.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "hdrm/csv.hpp"
#include "hdrm/engine.hpp"
#include "hdrm/hypotheses.hpp"
#include "hdrm/report.hpp"
#include "hdrm/simulate.hpp"

namespace {

struct CommonArgs {
  std::string data_path;
  std::string format = "wide";
  std::string hypothesis = "flat";
  std::string subject_col = "subject";
  bool no_am = false;
  double alpha = 0.05;
  bool json = false;
};

hdrm::Dataset load_single(const CommonArgs& args) {
  if (args.format == "wide") {
    return hdrm::from_wide(hdrm::read_matrix_csv(args.data_path));
  }
  if (args.format == "long") {
    return hdrm::from_long(
        hdrm::read_long_csv(args.data_path, "value", args.subject_col));
  }
  throw std::invalid_argument("format must be 'wide' or 'long'");
}

hdrm::Dataset load_grouped(const CommonArgs& args, const std::string& group) {
  if (group.empty()) {
    throw std::invalid_argument(
        "grouped analysis needs --group (label file for wide data, column name "
        "for long data)");
  }
  if (args.format == "wide") {
    const hdrm::Matrix data = hdrm::read_matrix_csv(args.data_path);
    const auto labels = hdrm::read_labels_csv(group);
    return hdrm::from_wide(data, &labels);
  }
  if (args.format == "long") {
    return hdrm::from_long(
        hdrm::read_long_csv(args.data_path, "value", args.subject_col, group));
  }
  throw std::invalid_argument("format must be 'wide' or 'long'");
}

void emit(const hdrm::TestResult& result, const CommonArgs& args) {
  if (args.json) {
    auto j = nlohmann::json::parse(hdrm::render_json(result));
    j["alpha"] = args.alpha;
    j["reject_at_alpha"] = result.p_value < args.alpha;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << hdrm::render_text(result);
  }
}

int run_single_cmd(const CommonArgs& args) {
  const hdrm::Dataset ds = load_single(args);
  hdrm::ProjectionPair pair;
  if (std::filesystem::exists(args.hypothesis) &&
      !std::filesystem::is_directory(args.hypothesis)) {
    pair = hdrm::build_custom_single(hdrm::read_matrix_csv(args.hypothesis));
  } else {
    pair = hdrm::build_single(hdrm::hypothesis_from_name(args.hypothesis), ds.d);
  }
  emit(hdrm::run_single(ds, pair, !args.no_am), args);
  return 0;
}

int run_grouped_cmd(const CommonArgs& args, const std::string& group,
                    const std::string& tw_path, const std::string& ts_path,
                    const hdrm::GroupedOptions& opts) {
  const hdrm::Dataset ds = load_grouped(args, group);
  hdrm::ProjectionPair pair;
  if (!tw_path.empty() || !ts_path.empty()) {
    if (tw_path.empty() || ts_path.empty()) {
      throw std::invalid_argument("custom grouped hypotheses need both --tw and --ts");
    }
    pair = hdrm::build_custom_grouped(hdrm::read_matrix_csv(tw_path),
                                      hdrm::read_matrix_csv(ts_path));
  } else {
    pair = hdrm::build_grouped(hdrm::hypothesis_from_name(args.hypothesis), ds.groups(),
                               ds.d);
  }
  if (pair.groups() != ds.groups()) {
    throw std::invalid_argument("hypothesis T_W dimension does not match group count");
  }
  emit(hdrm::run_grouped(ds, pair, opts), args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional repeated measure tests"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string group;
  std::string tw_path, ts_path;
  std::string budget_expr = "1000*N";
  std::optional<std::uint64_t> seed;
  bool cov_equal = false;
  bool subsampling = false;
  std::string config_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--data", args.data_path, "CSV data file")->required();
    cmd->add_option("--format", args.format, "wide (default) or long");
    cmd->add_option("--hypothesis", args.hypothesis,
                    "hypothesis name or CSV path of a custom projector");
    cmd->add_option("--subject", args.subject_col, "subject column (long format)");
    cmd->add_flag("--no-am", args.no_am, "disable companion-matrix reduction");
    cmd->add_option("--alpha", args.alpha, "significance level")
        ->check(CLI::Range(1e-12, 1.0));
    cmd->add_flag("--json", args.json, "emit JSON instead of text");
  };

  CLI::App* single = app.add_subcommand("single", "one-group test");
  add_common(single);

  CLI::App* grouped = app.add_subcommand("grouped", "multi-group test");
  add_common(grouped);
  grouped->add_option("--group", group,
                      "group labels: file of labels (wide) or column name (long)");
  grouped->add_option("--tw", tw_path, "CSV of a custom whole-plot projector T_W");
  grouped->add_option("--ts", ts_path, "CSV of a custom subplot projector T_S");
  grouped->add_flag("--cov-equal", cov_equal, "assume equal group covariances");
  grouped->add_flag("--subsampling", subsampling,
                    "subsample the pair/quadruple estimators too");
  grouped->add_option("--budget", budget_expr, "subsample count: '<int>' or '<int>*N'");
  grouped->add_option("--seed", seed, "seed for the subsampling streams");

  CLI::App* simulate = app.add_subcommand("simulate", "run a simulation experiment");
  simulate->add_option("--config", config_path, "key = value experiment file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (single->parsed()) return run_single_cmd(args);
    if (grouped->parsed()) {
      if (group.empty() && args.format == "long") group = "group";
      hdrm::GroupedOptions opts;
      opts.cov_equal = cov_equal;
      opts.subsampling = subsampling;
      opts.budget = hdrm::SubsampleBudget::parse(budget_expr);
      opts.seed = seed;
      opts.am = !args.no_am;
      return run_grouped_cmd(args, group, tw_path, ts_path, opts);
    }
    if (simulate->parsed()) {
      const auto cfg = hdrm::ExperimentConfig::parse_file(config_path);
      const auto result = hdrm::run_experiment(cfg);
      std::cout << hdrm::ExperimentResult::csv_header() << "\n"
                << result.csv_row() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
