#include "rumorgraph/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Fisher-Yates with a fixed bit-to-index mapping so fold assignment does not
// depend on the standard library's distribution implementations.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = std::size_t(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

double safe_div(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

}  // namespace

std::vector<FoldMasks> kfold(std::span<const int> labels, std::size_t k, bool stratified,
                             std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2) throw std::invalid_argument("k-fold needs k >= 2");
  if (k > n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds sample count " +
                                std::to_string(n));
  }
  std::mt19937_64 rng(mix(seed ^ 0x6b666f6c64ULL));
  std::vector<std::vector<std::size_t>> test(k);

  if (stratified) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
    std::size_t next = 0;
    for (auto& [cls, idx] : by_class) {
      if (idx.size() < k) {
        throw std::invalid_argument("class " + std::to_string(cls) + " has " +
                                    std::to_string(idx.size()) + " members, fewer than k = " +
                                    std::to_string(k));
      }
      shuffle(idx, rng);
      // Continue the round-robin where the previous class stopped to keep
      // the fold sizes balanced too.
      for (std::size_t i : idx) {
        test[next].push_back(i);
        next = (next + 1) % k;
      }
    }
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, rng);
    for (std::size_t p = 0; p < n; ++p) test[p % k].push_back(idx[p]);
  }

  std::vector<FoldMasks> folds(k);
  for (std::size_t f = 0; f < k; ++f) {
    std::sort(test[f].begin(), test[f].end());
    std::vector<bool> in_test(n, false);
    for (auto i : test[f]) in_test[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_test[i]) folds[f].train_idx.push_back(i);
    }
    folds[f].test_idx = std::move(test[f]);
  }
  return folds;
}

ConfusionCounts confusion(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw std::invalid_argument("prediction/truth length mismatch: " +
                                std::to_string(pred.size()) + " vs " +
                                std::to_string(truth.size()));
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] == 1, t = truth[i] == 1;
    if (p && t) ++c.tp;
    else if (p && !t) ++c.fp;
    else if (!p && t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

MetricsRow classification_metrics(std::span<const int> pred, std::span<const int> truth) {
  const ConfusionCounts c = confusion(pred, truth);
  const double n = double(pred.size());
  if (n == 0) throw std::invalid_argument("metrics over zero samples");
  MetricsRow m;
  m.accuracy = double(c.tp + c.tn) / n;
  // class 1 positive / class 0 positive
  const double p1 = safe_div(double(c.tp), double(c.tp + c.fp));
  const double r1 = safe_div(double(c.tp), double(c.tp + c.fn));
  const double p0 = safe_div(double(c.tn), double(c.tn + c.fn));
  const double r0 = safe_div(double(c.tn), double(c.tn + c.fp));
  m.precision = 0.5 * (p0 + p1);
  m.recall = 0.5 * (r0 + r1);
  m.f1 = safe_div(2.0 * m.precision * m.recall, m.precision + m.recall);
  m.precision_micro = m.accuracy;
  m.recall_micro = m.accuracy;
  m.f1_micro = m.accuracy;
  return m;
}

RocResult auc_roc(std::span<const double> scores, std::span<const int> truth) {
  if (scores.size() != truth.size()) throw std::invalid_argument("scores/truth length mismatch");
  const std::size_t n = scores.size();
  std::size_t pos = 0;
  for (int t : truth) pos += t == 1;
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("AUC needs both classes present");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return scores[a] > scores[b]; });

  RocResult r;
  r.curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  // Walking tie groups from the top: each positive beats every negative
  // ranked strictly below it and ties half of its own group's negatives.
  double wins = 0.0;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::size_t gp = 0, gn = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      (truth[order[j]] == 1 ? gp : gn)++;
      ++j;
    }
    wins += double(gp) * (double(neg - fp - gn) + 0.5 * double(gn));
    tp += gp;
    fp += gn;
    r.curve.push_back({double(fp) / double(neg), double(tp) / double(pos), scores[order[i]]});
    i = j;
  }
  r.auc = wins / (double(pos) * double(neg));
  return r;
}

MetricsRow average_rows(const std::vector<MetricsRow>& rows) {
  MetricsRow m;
  if (rows.empty()) return m;
  for (const auto& r : rows) {
    m.accuracy += r.accuracy;
    m.precision += r.precision;
    m.recall += r.recall;
    m.f1 += r.f1;
    m.precision_micro += r.precision_micro;
    m.recall_micro += r.recall_micro;
    m.f1_micro += r.f1_micro;
    m.auc_roc += r.auc_roc;
  }
  const double n = double(rows.size());
  for (double* f : {&m.accuracy, &m.precision, &m.recall, &m.f1, &m.precision_micro,
                    &m.recall_micro, &m.f1_micro, &m.auc_roc}) {
    *f /= n;
  }
  return m;
}

const char* to_string(ModelKind kind) { return kind == ModelKind::Gcn ? "gcn" : "mlp"; }

std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold) {
  return mix(seed * 0x100000001b3ULL + fold + 1);
}

ModelResult score_out_of_fold(ModelKind kind, std::vector<double> scores, std::vector<int> pred,
                              std::vector<std::size_t> fold_of, std::span<const int> labels,
                              std::size_t k) {
  const std::size_t n = labels.size();
  if (scores.size() != n || pred.size() != n || fold_of.size() != n) {
    throw std::invalid_argument("out-of-fold vectors do not match the label count");
  }
  ModelResult mr;
  mr.kind = kind;
  std::vector<MetricsRow> rows;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<int> fold_pred, fold_truth;
    std::vector<double> fold_scores;
    for (std::size_t i = 0; i < n; ++i) {
      if (fold_of[i] != f) continue;
      fold_pred.push_back(pred[i]);
      fold_truth.push_back(labels[i]);
      fold_scores.push_back(scores[i]);
    }
    if (fold_pred.empty()) throw std::invalid_argument("fold " + std::to_string(f + 1) + " is empty");
    FoldResult fr;
    fr.fold = f;
    fr.metrics = classification_metrics(fold_pred, fold_truth);
    try {
      RocResult roc = auc_roc(fold_scores, fold_truth);
      fr.metrics.auc_roc = roc.auc;
      mr.fold_roc.push_back(std::move(roc));
    } catch (const std::invalid_argument&) {
      // single-class fold (unstratified splits only)
      fr.metrics.auc_roc = std::numeric_limits<double>::quiet_NaN();
      mr.fold_roc.emplace_back();
    }
    rows.push_back(fr.metrics);
    mr.folds.push_back(std::move(fr));
  }
  mr.macro = average_rows(rows);
  mr.pooled_roc = auc_roc(scores, labels);
  mr.oof_scores = std::move(scores);
  mr.oof_pred = std::move(pred);
  mr.fold_of = std::move(fold_of);
  return mr;
}

ExperimentResult run_experiment(const NodeDataset& data, const ExperimentConfig& config) {
  const std::size_t n = data.labels.size();
  if (data.features.rows() != n || data.graph.size() != n) {
    throw ShapeError("dataset parts disagree: features " + data.features.values.shape() +
                     ", graph " + std::to_string(data.graph.size()) + " nodes, " +
                     std::to_string(n) + " labels");
  }
  ExperimentResult result;
  result.folds = kfold(data.labels, config.k, config.stratified, config.seed);

  const NormalizedAdjacency graph_adj = normalize(data.graph, config.weighted_adjacency);
  const NormalizedAdjacency eye = identity_adjacency(n);

  std::vector<Matrix> standardized;
  for (const auto& fold : result.folds) {
    standardized.push_back(standardize(data.features, fold.train_idx).values);
  }

  for (ModelKind kind : config.models) {
    const NormalizedAdjacency& adj = kind == ModelKind::Gcn ? graph_adj : eye;
    std::vector<double> scores_oof(n, 0.0);
    std::vector<int> pred_oof(n, 0);
    std::vector<std::size_t> fold_of(n, 0);
    std::vector<GcnModel> models;
    std::vector<std::vector<double>> traces;
    for (std::size_t f = 0; f < result.folds.size(); ++f) {
      const FoldMasks& fold = result.folds[f];
      GcnConfig cfg = config.gcn;
      cfg.seed = fold_seed(config.seed, f);
      TrainResult trained = train(init_model(data.features.cols(), cfg), adj, standardized[f],
                                  data.labels, fold.train_idx);
      const Matrix out = predict_proba(trained.model, adj, standardized[f]);
      const auto pred = predict_classes(out);
      const auto scores = positive_scores(out);

      for (auto i : fold.test_idx) {
        scores_oof[i] = scores[i];
        pred_oof[i] = pred[i];
        fold_of[i] = f;
      }
      models.push_back(std::move(trained.model));
      traces.push_back(std::move(trained.loss_trace));
    }
    ModelResult mr = score_out_of_fold(kind, std::move(scores_oof), std::move(pred_oof),
                                       std::move(fold_of), data.labels, result.folds.size());
    for (std::size_t f = 0; f < mr.folds.size(); ++f) {
      mr.folds[f].model = std::move(models[f]);
      mr.folds[f].loss_trace = std::move(traces[f]);
    }
    result.models.push_back(std::move(mr));
  }
  return result;
}

void write_metrics_csv(const ExperimentResult& result, std::ostream& out) {
  out << "model,fold,accuracy,precision_macro,recall_macro,f1_macro,"
         "precision_micro,recall_micro,f1_micro,auc_roc\n";
  auto row = [&](const char* model, const std::string& fold, const MetricsRow& m) {
    out << model << ',' << fold;
    for (double v : {m.accuracy, m.precision, m.recall, m.f1, m.precision_micro, m.recall_micro,
                     m.f1_micro, m.auc_roc}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  };
  for (const auto& mr : result.models) {
    for (const auto& fr : mr.folds) row(to_string(mr.kind), std::to_string(fr.fold + 1), fr.metrics);
    row(to_string(mr.kind), "macro", mr.macro);
  }
}

void write_roc_csv(const ModelResult& model, std::ostream& out) {
  out << "fold,fpr,tpr,threshold\n";
  auto emit = [&](const std::string& fold, const RocResult& roc) {
    for (const auto& p : roc.curve) {
      out << fold << ',' << format_double(p.fpr) << ',' << format_double(p.tpr) << ','
          << format_double(p.threshold) << '\n';
    }
  };
  for (std::size_t f = 0; f < model.fold_roc.size(); ++f) {
    emit(std::to_string(f + 1), model.fold_roc[f]);
  }
  emit("pooled", model.pooled_roc);
}

void write_predictions_csv(const ExperimentResult& result, const std::vector<std::string>& ids,
                           std::span<const int> truth, std::ostream& out) {
  out << "model,user_id,fold,truth,score,pred\n";
  for (const auto& mr : result.models) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      out << to_string(mr.kind) << ',' << csv_escape(ids[i]) << ',' << mr.fold_of[i] + 1 << ','
          << truth[i] << ',' << format_double(mr.oof_scores[i]) << ',' << mr.oof_pred[i] << '\n';
    }
  }
}

}  // namespace rumorgraph
