#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rumorgraph/pipeline.hpp"

using namespace rumorgraph;

namespace {

struct Overrides {
  std::string config;
  std::string input;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string incident;
  std::string embedding_file;
  std::optional<double> threshold;
  std::optional<std::size_t> k;
  std::optional<std::size_t> epochs;
  std::string ablation;
  std::optional<bool> weighted;
  std::vector<std::string> pool;
};

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig c = default_config();
  bool out_from_config = false;
  if (!o.config.empty() && o.config != "default") {
    c = load_config(o.config);
    out_from_config = c.out_dir != default_config().out_dir;
  }
  if (!out_from_config) {
    if (const char* env = std::getenv("RUMORGRAPH_OUT"); env && *env) c.out_dir = env;
  }
  if (!o.out.empty()) c.out_dir = o.out;
  if (!o.input.empty()) c.input = o.input;
  if (!o.incident.empty()) c.incident = o.incident;
  if (o.seed) c.set_seed(*o.seed);
  if (!o.embedding_file.empty()) {
    c.embedding_provider = "file";
    c.embedding_file = o.embedding_file;
  }
  if (o.threshold) c.labeling.threshold = *o.threshold;
  if (o.k) c.experiment.k = *o.k;
  if (o.epochs) c.experiment.gcn.epochs = *o.epochs;
  if (!o.ablation.empty()) {
    if (o.ablation == "gcn") c.experiment.models = {ModelKind::Gcn};
    else if (o.ablation == "mlp") c.experiment.models = {ModelKind::Mlp};
    else c.experiment.models = {ModelKind::Gcn, ModelKind::Mlp};
  }
  if (o.weighted) c.experiment.weighted_adjacency = *o.weighted;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-labeled rumor spreader detection with a graph convolutional network"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "INI config file, or `default`");
  app.add_option("--input", o.input, "JSONL corpus, PHEME incident dir, or PHEME root");
  app.add_option("--out", o.out, "output directory (default $RUMORGRAPH_OUT)");
  app.add_option("--seed", o.seed, "seed for every randomized stage");
  app.add_option("--incident", o.incident, "incident name (prefix match under a PHEME root)");
  app.add_option("--embedding-file", o.embedding_file, "word2vec text-format embeddings");
  app.add_option("--threshold", o.threshold, "MinHash similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--k", o.k, "cross-validation folds")->check(CLI::PositiveNumber);
  app.add_option("--epochs", o.epochs, "training epochs")->check(CLI::PositiveNumber);
  app.add_option("--ablation", o.ablation, "models to train")
      ->check(CLI::IsMember({"gcn", "mlp", "both"}));
  app.add_option("--weighted-adjacency", o.weighted, "use reply counts as edge weights");

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  auto* ingest = app.add_subcommand("ingest", "load and normalize the input corpus");
  auto* label = app.add_subcommand("label", "weak-label replies and score users");
  auto* featurize = app.add_subcommand("featurize", "build the user feature matrix");
  auto* build_graph = app.add_subcommand("build-graph", "build the user reply graph");
  auto* train = app.add_subcommand("train", "cross-validated GCN and MLP training");
  auto* evaluate = app.add_subcommand("evaluate", "metrics, ROC and feature statistics");
  auto* report = app.add_subcommand("report", "plots and summary table");
  report->add_option("--pool", o.pool, "other output dirs to pool feature statistics with");
  auto* all = app.add_subcommand("run-all", "ingest through report");

  CLI11_PARSE(app, argc, argv);

  try {
    const PipelineConfig c = resolve(o);
    std::ostream& log = std::clog;
    if (synth->parsed()) run_synth(c, log);
    else if (ingest->parsed()) run_ingest(c, log);
    else if (label->parsed()) run_label(c, log);
    else if (featurize->parsed()) run_featurize(c, log);
    else if (build_graph->parsed()) run_build_graph(c, log);
    else if (train->parsed()) run_train(c, log);
    else if (evaluate->parsed()) run_evaluate(c, log);
    else if (report->parsed()) {
      run_report(c, std::vector<std::filesystem::path>(o.pool.begin(), o.pool.end()), log);
    } else if (all->parsed()) run_all(c, log);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
