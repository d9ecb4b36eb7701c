#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rumorgraph/eval.hpp"
#include "rumorgraph/feature_stats.hpp"
#include "rumorgraph/synth.hpp"
#include "rumorgraph/weaklabel.hpp"

namespace rumorgraph {

// Every setting of an end-to-end run. Defaults reproduce the reference
// configuration (0.85 threshold, 300-dim embeddings, 2 layers of 32
// channels, 300 epochs, 5 folds).
struct PipelineConfig {
  // [input]
  std::filesystem::path input;  // JSONL file, PHEME incident dir, or PHEME root with `incident`
  std::string incident;
  // [text]
  std::filesystem::path vocabulary_file;
  // [embedding]
  std::string embedding_provider = "hash";  // hash | file
  std::filesystem::path embedding_file;
  std::size_t embedding_dim = kDefaultEmbeddingDim;
  std::uint64_t embedding_seed = 42;
  // [minhash]
  LabelingConfig labeling;
  // [gcn], [eval]
  ExperimentConfig experiment;
  FeatureStatsConfig stats;
  // [synth]
  SynthSpec synth;
  // [output]
  std::filesystem::path out_dir = "rumorgraph_out";

  // Applies `--seed` to every seeded component.
  void set_seed(std::uint64_t seed);
};

PipelineConfig default_config();

// INI-style file with [section] headers; unknown keys are an error.
PipelineConfig load_config(const std::filesystem::path& file);
void apply_config(PipelineConfig& config, std::istream& ini);
void write_config(const PipelineConfig& config, std::ostream& out);

// Error tagged with the stage that raised it.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// Artifact names inside the output directory.
namespace artifact {
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kSynthCorpus = "synth_corpus.jsonl";
inline constexpr const char* kGroundTruth = "ground_truth.csv";
inline constexpr const char* kProfiles = "profiles.jsonl";
inline constexpr const char* kLabelReport = "label_report.csv";
inline constexpr const char* kSentimentReport = "sentiment_report.csv";
inline constexpr const char* kFeatures = "features.csv";
inline constexpr const char* kNodes = "nodes.csv";
inline constexpr const char* kEdges = "edges.csv";
inline constexpr const char* kAdjacency = "adjacency_coo.csv";
inline constexpr const char* kDegreeReport = "degree_report.csv";
inline constexpr const char* kPredictions = "predictions.csv";
inline constexpr const char* kMetrics = "metrics.csv";
inline constexpr const char* kFeatureStats = "feature_stats.csv";
inline constexpr const char* kPooledFeatureStats = "feature_stats_pooled.csv";
inline constexpr const char* kFoldMetricsSvg = "fold_metrics.svg";
inline constexpr const char* kRocSvg = "roc.svg";
inline constexpr const char* kSummary = "summary.md";
inline constexpr const char* kEffectiveConfig = "effective_config.ini";
}  // namespace artifact

std::string checkpoint_name(ModelKind kind, std::size_t fold);  // 0-based fold
std::string loss_trace_name(ModelKind kind, std::size_t fold);
std::string roc_name(ModelKind kind);

// Stages. Each reads its inputs from config.out_dir (ingest and synth read
// config.input / config.synth), writes its artifacts there, and logs progress
// to `log`. Failures raise StageError.
void run_synth(const PipelineConfig& config, std::ostream& log);
void run_ingest(const PipelineConfig& config, std::ostream& log);
void run_label(const PipelineConfig& config, std::ostream& log);
void run_featurize(const PipelineConfig& config, std::ostream& log);
void run_build_graph(const PipelineConfig& config, std::ostream& log);
void run_train(const PipelineConfig& config, std::ostream& log);
void run_evaluate(const PipelineConfig& config, std::ostream& log);
// `pool_dirs` are other runs' output directories whose features and labels
// join this run's in a pooled feature-statistics table.
void run_report(const PipelineConfig& config, const std::vector<std::filesystem::path>& pool_dirs,
                std::ostream& log);
// ingest, label, featurize, build-graph, train, evaluate, report.
void run_all(const PipelineConfig& config, std::ostream& log);

}  // namespace rumorgraph
