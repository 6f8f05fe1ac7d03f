// Copyright 2026 The shapreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "shapreg/diagnostics.h"
#include "shapreg/error.h"
#include "shapreg/games.h"
#include "shapreg/io.h"
#include "shapreg/report.h"

namespace shapreg::cli {
namespace {

struct Options {
  std::string game;
  std::string data;
  std::string labels;
  int instance = 0;
  std::string estimator = "original";
  bool paired = true;
  double threshold = 0.01;
  std::optional<std::int64_t> batch;
  std::uint64_t seed = 0;
  std::int64_t max_samples = 1'000'000;
  std::string out;
  std::string format = "json";
  std::string loss = "squared";
  bool covariance = false;
  bool verbose = false;
  int runs = 100;
  std::int64_t n = 2048;
};

void AddGameOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--game", o.game,
                  "Model JSON path or synthetic spec such as random:d=8,seed=1")
      ->required();
  cmd->add_option("--data", o.data, "CSV with a header row");
  cmd->add_option("--labels", o.labels, "Label column (name or 0-based index)");
}

void AddOutputOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void AddEstimatorOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--estimator", o.estimator, "Estimator variant")
      ->check(CLI::IsMember({"original", "unbiased"}));
  cmd->add_flag("--paired,!--no-paired", o.paired, "Paired sampling (default on)");
  cmd->add_option("--threshold", o.threshold, "Convergence threshold");
  cmd->add_option("--batch", o.batch, "Samples per batch");
  cmd->add_option("--max-samples", o.max_samples, "Sample cap");
  cmd->add_flag("--covariance", o.covariance, "Include the covariance matrix");
  cmd->add_flag("--verbose", o.verbose, "Log one line per batch");
}

Format ParseFormat(const std::string& f) {
  return f == "csv" ? Format::kCsv : Format::kJson;
}

bool IsModelPath(const std::string& game) {
  return std::filesystem::exists(game);
}

int ResolveLabelColumn(const CsvTable& table, const Options& o) {
  return o.labels.empty() ? -1 : ColumnIndex(table, o.labels);
}

// The explained instance comes from --data when given, else from the
// model's background rows.
std::unique_ptr<DeterministicGame> LoadDeterministicGame(const Options& o) {
  if (IsModelPath(o.game)) {
    TabularModel model = LoadModel(o.game);
    RowMatrix rows = model.background;
    if (!o.data.empty()) {
      const CsvTable table = ReadCsv(o.data);
      const int label = ResolveLabelColumn(table, o);
      rows = label >= 0 ? SplitLabels(table, label).features : table.data;
    }
    if (o.instance < 0 || o.instance >= rows.rows()) {
      throw Error(ErrorKind::kConfiguration,
                  "--instance " + std::to_string(o.instance) + " is out of range (" +
                      std::to_string(rows.rows()) + " rows)");
    }
    Eigen::VectorXd x = rows.row(o.instance).transpose();
    return std::make_unique<ShapGame>(std::move(model), std::move(x));
  }
  if (o.game.find(':') == std::string::npos) {
    throw Error(ErrorKind::kIo, "no such model file: " + o.game);
  }
  return MakeSyntheticGame(ParseSyntheticSpec(o.game));
}

EstimatorConfig MakeConfig(const Options& o, std::ostream& err) {
  EstimatorConfig config;
  config.variant = o.estimator == "unbiased" ? Variant::kUnbiased : Variant::kOriginal;
  config.paired = o.paired;
  config.threshold = o.threshold;
  config.batch = o.batch;
  config.seed = o.seed;
  config.max_samples = o.max_samples;
  if (o.verbose) {
    config.on_batch = [&err](const BatchProgress& p) {
      err << "n=" << p.n << " ratio=" << p.ratio;
      if (p.forecast) err << " forecast=" << *p.forecast;
      err << '\n';
    };
  }
  config.Validate();
  return config;
}

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    WriteFile(o.out, text);
  }
}

int EmitEstimate(const Options& o, const Estimate& e, std::ostream& out,
                 std::ostream& err) {
  Emit(o, FormatEstimate(e, ParseFormat(o.format), o.covariance), out);
  if (!e.converged) {
    err << "warning: reached " << e.n << " samples without convergence\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

struct StochasticData {
  TabularModel model;
  RowMatrix features;
  Eigen::VectorXd labels;
  bool has_labels = false;
};

StochasticData LoadStochasticData(const Options& o) {
  if (!IsModelPath(o.game)) {
    throw Error(ErrorKind::kIo, "--game must name a model JSON file: " + o.game);
  }
  StochasticData d;
  d.model = LoadModel(o.game);
  if (o.data.empty()) {
    d.features = d.model.background;
    return d;
  }
  const CsvTable table = ReadCsv(o.data);
  const int label = ResolveLabelColumn(table, o);
  if (label >= 0) {
    LabeledData split = SplitLabels(table, label);
    d.features = std::move(split.features);
    d.labels = std::move(split.labels);
    d.has_labels = true;
  } else {
    d.features = table.data;
  }
  return d;
}

int RunExact(const Options& o, std::ostream& out) {
  const auto game = LoadDeterministicGame(o);
  const Eigen::VectorXd phi = ShapleyExact(*game);
  const std::int64_t evals = std::int64_t{1} << game->players();
  Emit(o, FormatEstimate(ExactEstimate(phi, evals), ParseFormat(o.format), o.covariance),
       out);
  return kExitOk;
}

int RunExplain(const Options& o, std::ostream& out, std::ostream& err) {
  const auto game = LoadDeterministicGame(o);
  return EmitEstimate(o, RunEstimator(*game, MakeConfig(o, err)), out, err);
}

int RunSage(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.data.empty() || o.labels.empty()) {
    throw Error(ErrorKind::kConfiguration, "sage needs --data and --labels");
  }
  StochasticData d = LoadStochasticData(o);
  const Loss loss = o.loss == "cross_entropy" ? Loss::kCrossEntropy : Loss::kSquared;
  const SageGame game(std::move(d.model), std::move(d.features), std::move(d.labels),
                      loss);
  return EmitEstimate(o, RunEstimator(game, MakeConfig(o, err)), out, err);
}

int RunEffects(const Options& o, std::ostream& out, std::ostream& err) {
  StochasticData d = LoadStochasticData(o);
  // Effects compare probabilities, so cross entropy means the soft variant.
  const Loss loss = o.loss == "cross_entropy" ? Loss::kSoftCrossEntropy : Loss::kSquared;
  const ShapleyEffectsGame game(std::move(d.model), std::move(d.features), loss);
  return EmitEstimate(o, RunEstimator(game, MakeConfig(o, err)), out, err);
}

int RunBench(const Options& o, std::ostream& out) {
  if (o.runs < 2) throw Error(ErrorKind::kConfiguration, "--runs must be >= 2");
  if (!(o.threshold > 0.0 && o.threshold < 1.0)) {
    throw Error(ErrorKind::kConfiguration, "--threshold must lie in (0, 1)");
  }
  const auto game = LoadDeterministicGame(o);
  const BenchReport report = RunBenchSuite(*game, o.game, o.n, o.runs, o.seed, o.threshold);
  Emit(o, FormatBenchReport(report, ParseFormat(o.format)), out);
  return kExitOk;
}

int RunGv(const Options& o, std::ostream& out) {
  const auto game = LoadDeterministicGame(o);
  const GvReport report = GvMatrix(*game);
  Emit(o, FormatGvReport(report, GvDiagonalClosedForm(*game), ParseFormat(o.format)), out);
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Shapley value estimation for cooperative games", "shapreg"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand("exact", "Exact Shapley values by enumeration");
  AddGameOptions(exact, o);
  AddOutputOptions(exact, o);
  exact->add_option("--instance", o.instance, "Row to explain for model games");

  auto* explain = app.add_subcommand("explain", "Estimate SHAP values for one instance");
  AddGameOptions(explain, o);
  AddOutputOptions(explain, o);
  AddEstimatorOptions(explain, o);
  explain->add_option("--instance", o.instance, "Row to explain");

  auto* sage = app.add_subcommand("sage", "Estimate SAGE values over a labeled dataset");
  AddGameOptions(sage, o);
  AddOutputOptions(sage, o);
  AddEstimatorOptions(sage, o);
  sage->add_option("--loss", o.loss, "Loss")
      ->check(CLI::IsMember({"squared", "cross_entropy"}));

  auto* effects = app.add_subcommand("effects", "Estimate Shapley Effects over a dataset");
  AddGameOptions(effects, o);
  AddOutputOptions(effects, o);
  AddEstimatorOptions(effects, o);
  effects->add_option("--loss", o.loss, "Loss")
      ->check(CLI::IsMember({"squared", "cross_entropy"}));

  auto* bench = app.add_subcommand("bench", "Bias, variance and speedup study");
  AddGameOptions(bench, o);
  AddOutputOptions(bench, o);
  bench->add_option("--instance", o.instance, "Row to explain for model games");
  bench->add_option("--runs", o.runs, "Independent runs per configuration");
  bench->add_option("--n", o.n, "Samples per run");
  bench->add_option("--threshold", o.threshold, "Threshold for the forecast study");

  auto* gv = app.add_subcommand("gv", "Paired-sampling diagnostic matrix");
  AddGameOptions(gv, o);
  AddOutputOptions(gv, o);
  gv->add_option("--instance", o.instance, "Row to explain for model games");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("shapreg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*exact) return RunExact(o, out);
    if (*explain) return RunExplain(o, out, err);
    if (*sage) return RunSage(o, out, err);
    if (*effects) return RunEffects(o, out, err);
    if (*bench) return RunBench(o, out);
    if (*gv) return RunGv(o, out);
  } catch (const Error& e) {
    err << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return kExitUnexpected;
  }
  return kExitUnexpected;
}

}  // namespace shapreg::cli
