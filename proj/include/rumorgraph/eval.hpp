#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rumorgraph/features.hpp"
#include "rumorgraph/gcn.hpp"
#include "rumorgraph/graph.hpp"

namespace rumorgraph {

struct FoldMasks {
  std::vector<std::size_t> train_idx;  // sorted
  std::vector<std::size_t> test_idx;   // sorted
};

inline constexpr std::size_t kDefaultFolds = 5;

// K folds whose test sets partition 0..N-1. Stratified folds deal each class
// round-robin so per-fold class counts differ from proportional by at most
// one. Throws std::invalid_argument when k < 2, k > N, or (stratified) a
// class has fewer than k members.
std::vector<FoldMasks> kfold(std::span<const int> labels, std::size_t k, bool stratified,
                             std::uint64_t seed);

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;  // class 1 is positive
};

ConfusionCounts confusion(std::span<const int> pred, std::span<const int> truth);

struct MetricsRow {
  double accuracy = 0.0;
  // Per-class precision/recall averaged over both classes; f1 is the harmonic
  // mean of the two averages.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Pooled-count versions (equal to accuracy for single-label binary data).
  double precision_micro = 0.0;
  double recall_micro = 0.0;
  double f1_micro = 0.0;
  double auc_roc = 0.0;
};

// Throws std::invalid_argument on length mismatch or empty input.
MetricsRow classification_metrics(std::span<const int> pred, std::span<const int> truth);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

struct RocResult {
  double auc = 0.0;
  std::vector<RocPoint> curve;  // from (0,0) to (1,1)
};

// Mann-Whitney AUC (ties count one half) and the threshold-sweep curve.
// Throws std::invalid_argument unless both classes are present.
RocResult auc_roc(std::span<const double> scores, std::span<const int> truth);

// Averages every field over the rows.
MetricsRow average_rows(const std::vector<MetricsRow>& rows);

// Node classification dataset: raw (unstandardized) features, the graph the
// features' rows are aligned with, and 0/1 labels.
struct NodeDataset {
  FeatureMatrix features;
  ReplyGraph graph;
  std::vector<int> labels;
};

enum class ModelKind { Gcn, Mlp };
const char* to_string(ModelKind kind);

struct ExperimentConfig {
  GcnConfig gcn;
  std::size_t k = kDefaultFolds;
  bool stratified = true;
  std::uint64_t seed = 42;
  bool weighted_adjacency = true;
  std::vector<ModelKind> models{ModelKind::Gcn, ModelKind::Mlp};
};

struct FoldResult {
  std::size_t fold = 0;
  MetricsRow metrics;
  GcnModel model;
  std::vector<double> loss_trace;
};

struct ModelResult {
  ModelKind kind = ModelKind::Gcn;
  std::vector<FoldResult> folds;
  MetricsRow macro;                 // mean over folds
  std::vector<double> oof_scores;   // out-of-fold class-1 probability per node
  std::vector<int> oof_pred;
  std::vector<std::size_t> fold_of; // which fold held each node out
  RocResult pooled_roc;             // over all out-of-fold scores
  std::vector<RocResult> fold_roc;
};

struct ExperimentResult {
  std::vector<ModelResult> models;
  std::vector<FoldMasks> folds;
};

// Seed used for fold `fold` of a run with base seed `seed` (both models share it).
std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold);

// Fold metrics, ROC curves and the macro row from out-of-fold predictions.
// `fold_of` holds each node's 0-based held-out fold.
ModelResult score_out_of_fold(ModelKind kind, std::vector<double> scores, std::vector<int> pred,
                              std::vector<std::size_t> fold_of, std::span<const int> labels,
                              std::size_t k);

// K-fold cross-validation: per fold, standardize on the training rows, train
// on the training mask over the full graph (or identity for the MLP), and
// score the held-out rows.
ExperimentResult run_experiment(const NodeDataset& data, const ExperimentConfig& config);

void write_metrics_csv(const ExperimentResult& result, std::ostream& out);
void write_roc_csv(const ModelResult& model, std::ostream& out);
void write_predictions_csv(const ExperimentResult& result, const std::vector<std::string>& ids,
                           std::span<const int> truth, std::ostream& out);

}  // namespace rumorgraph
