#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "rumorgraph/eval.hpp"
#include "rumorgraph/feature_stats.hpp"
#include "rumorgraph/synth.hpp"

using namespace rumorgraph;

namespace {

std::vector<int> labels_with(std::size_t ones, std::size_t zeros) {
  std::vector<int> v(ones, 1);
  v.resize(ones + zeros, 0);
  return v;
}

// Pearson statistic of an r x c table given as feature/label vectors.
double brute_chi_square(const std::vector<int>& f, const std::vector<int>& y) {
  std::map<std::pair<int, int>, double> cell;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < f.size(); ++i) {
    cell[{f[i], y[i]}] += 1;
    rows[f[i]] += 1;
    cols[y[i]] += 1;
  }
  double stat = 0;
  for (const auto& [r, rn] : rows)
    for (const auto& [c, cn] : cols) {
      const double e = rn * cn / double(f.size());
      const double o = cell[{r, c}];
      stat += (o - e) * (o - e) / e;
    }
  return stat;
}

}  // namespace

TEST(KFold, TenSamplesFiveFolds) {
  const auto labels = labels_with(5, 5);
  for (bool stratified : {false, true}) {
    const auto folds = kfold(labels, 5, stratified, 1);
    ASSERT_EQ(folds.size(), 5u);
    std::multiset<std::size_t> seen;
    for (const auto& f : folds) {
      EXPECT_EQ(f.test_idx.size(), 2u);
      EXPECT_EQ(f.train_idx.size(), 8u);
      seen.insert(f.test_idx.begin(), f.test_idx.end());
      std::vector<std::size_t> both;
      std::set_intersection(f.train_idx.begin(), f.train_idx.end(), f.test_idx.begin(),
                            f.test_idx.end(), std::back_inserter(both));
      EXPECT_TRUE(both.empty());
    }
    EXPECT_EQ(seen, (std::multiset<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
  }
}

TEST(KFold, StratifiedEightyTwenty) {
  const auto labels = labels_with(20, 80);
  const auto folds = kfold(labels, 5, true, 3);
  for (const auto& f : folds) {
    std::size_t minority = 0;
    for (auto i : f.test_idx) minority += labels[i] == 1;
    EXPECT_LE(std::abs(int(minority) - 4), 1);
    EXPECT_LE(std::abs(int(f.test_idx.size() - minority) - 16), 1);
  }
}

TEST(KFold, UnevenSizesWithinOneOfProportional) {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t ones = 5 + rng() % 40, zeros = 5 + rng() % 120, k = 2 + rng() % 4;
    auto labels = labels_with(ones, zeros);
    std::shuffle(labels.begin(), labels.end(), rng);
    for (const auto& f : kfold(labels, k, true, t)) {
      std::size_t pos = 0;
      for (auto i : f.test_idx) pos += labels[i];
      const double share = double(ones) / double(ones + zeros);
      EXPECT_LT(std::abs(double(pos) - share * double(f.test_idx.size())), 1.0 + 1e-9);
    }
  }
}

TEST(KFold, Errors) {
  EXPECT_THROW(kfold(labels_with(2, 2), 5, false, 0), std::invalid_argument);
  EXPECT_THROW(kfold(labels_with(2, 20), 5, true, 0), std::invalid_argument);
  EXPECT_THROW(kfold(labels_with(5, 5), 1, false, 0), std::invalid_argument);
}

TEST(KFold, SeedChangesAssignment) {
  const auto labels = labels_with(30, 30);
  EXPECT_EQ(kfold(labels, 5, true, 1)[0].test_idx, kfold(labels, 5, true, 1)[0].test_idx);
  EXPECT_NE(kfold(labels, 5, true, 1)[0].test_idx, kfold(labels, 5, true, 2)[0].test_idx);
}

TEST(Metrics, PerfectAndInverted) {
  const std::vector<int> truth = {0, 1, 0, 1, 1, 0};
  const auto m = classification_metrics(truth, truth);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);
  std::vector<int> inv;
  for (int t : truth) inv.push_back(1 - t);
  EXPECT_EQ(classification_metrics(inv, truth).accuracy, 0.0);
}

TEST(Metrics, HandConfusionCase) {
  // TP=2, FP=1, FN=1, TN=6
  const std::vector<int> truth = {1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
  const std::vector<int> pred = {1, 1, 0, 1, 0, 0, 0, 0, 0, 0};
  const auto c = confusion(pred, truth);
  EXPECT_EQ(c.tp, 2u);
  EXPECT_EQ(c.fp, 1u);
  EXPECT_EQ(c.fn, 1u);
  EXPECT_EQ(c.tn, 6u);
  const auto m = classification_metrics(pred, truth);
  // class 1: P = R = 2/3; class 0: P = R = 6/7
  const double p = (2.0 / 3.0 + 6.0 / 7.0) / 2.0;
  EXPECT_NEAR(m.accuracy, 0.8, 1e-15);
  EXPECT_NEAR(m.precision, p, 1e-15);
  EXPECT_NEAR(m.recall, p, 1e-15);
  EXPECT_NEAR(m.f1, p, 1e-15);
  EXPECT_NEAR(m.precision_micro, 0.8, 1e-15);
  EXPECT_NEAR(m.f1_micro, 0.8, 1e-15);
}

TEST(Metrics, MatchBruteForceOnFuzzedInputs) {
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<int> pred(n), truth(n);
    for (auto& v : pred) v = int(rng() % 2);
    for (auto& v : truth) v = int(rng() % 2);
    const auto got = classification_metrics(pred, truth);
    const auto want = oracle::brute_metrics(pred, truth);
    ASSERT_NEAR(got.accuracy, want.accuracy, 1e-12);
    ASSERT_NEAR(got.precision, want.precision, 1e-12);
    ASSERT_NEAR(got.recall, want.recall, 1e-12);
    ASSERT_NEAR(got.f1, want.f1, 1e-12);
  }
}

TEST(Metrics, LengthMismatch) {
  EXPECT_THROW(classification_metrics(std::vector<int>{1}, std::vector<int>{1, 0}),
               std::invalid_argument);
  EXPECT_THROW(classification_metrics(std::vector<int>{}, std::vector<int>{}),
               std::invalid_argument);
}

TEST(Auc, PerfectRanking) {
  const std::vector<double> s = {0.9, 0.8, 0.3, 0.1};
  const std::vector<int> y = {1, 1, 0, 0};
  EXPECT_EQ(auc_roc(s, y).auc, 1.0);
}

TEST(Auc, AllTiedIsOneHalf) {
  const std::vector<double> s(6, 0.4);
  const std::vector<int> y = {1, 0, 1, 0, 0, 1};
  const auto r = auc_roc(s, y);
  EXPECT_EQ(r.auc, 0.5);
  EXPECT_EQ(r.curve.front().fpr, 0.0);
  EXPECT_EQ(r.curve.back().tpr, 1.0);
}

TEST(Auc, MatchesPairwiseOracle) {
  std::mt19937 rng(23);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(50);
    std::vector<int> y(50);
    for (std::size_t i = 0; i < 50; ++i) {
      s[i] = double(rng() % 20) / 20.0;  // plenty of ties
      y[i] = int(rng() % 2);
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(auc_roc(s, y).auc, oracle::pairwise_auc(s, y), 1e-12);
  }
}

TEST(Auc, CurveIsMonotoneAndBounded) {
  std::mt19937 rng(29);
  std::vector<double> s(80);
  std::vector<int> y(80);
  for (std::size_t i = 0; i < 80; ++i) {
    s[i] = std::uniform_real_distribution<double>(0, 1)(rng);
    y[i] = int(i % 3 == 0);
  }
  const auto r = auc_roc(s, y);
  ASSERT_GE(r.curve.size(), 2u);
  EXPECT_EQ(r.curve.front().fpr, 0.0);
  EXPECT_EQ(r.curve.front().tpr, 0.0);
  EXPECT_EQ(r.curve.back().fpr, 1.0);
  EXPECT_EQ(r.curve.back().tpr, 1.0);
  for (std::size_t i = 1; i < r.curve.size(); ++i) {
    EXPECT_GE(r.curve[i].fpr, r.curve[i - 1].fpr);
    EXPECT_GE(r.curve[i].tpr, r.curve[i - 1].tpr);
    EXPECT_LE(r.curve[i].fpr, 1.0);
    EXPECT_LE(r.curve[i].tpr, 1.0);
  }
}

TEST(Auc, SingleClassRejected) {
  const std::vector<double> s = {0.1, 0.2};
  const std::vector<int> y = {1, 1};
  EXPECT_THROW(auc_roc(s, y), std::invalid_argument);
}

TEST(ChiSquare, IdentityFeatureIsHighlySignificant) {
  std::vector<int> y = labels_with(100, 100);
  const auto r = chi_square_test(y, y);
  EXPECT_LT(r.p_value, 1e-10);
  EXPECT_EQ(r.dof, 1.0);
}

TEST(ChiSquare, ProportionalTableIsZero) {
  // every feature value has the same 1:3 label split
  std::vector<int> f, y;
  for (int v = 0; v < 3; ++v)
    for (int i = 0; i < 8; ++i) {
      f.push_back(v);
      y.push_back(i < 2 ? 1 : 0);
    }
  const auto r = chi_square_test(f, y);
  EXPECT_NEAR(r.statistic, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
  EXPECT_EQ(r.dof, 2.0);
}

TEST(ChiSquare, ReferenceTailValues) {
  EXPECT_NEAR(chi_square_sf(3.84, 1), 0.05004, 5e-5);
  EXPECT_NEAR(chi_square_sf(5.0, 2), std::exp(-2.5), 1e-12);
  EXPECT_EQ(chi_square_sf(0.0, 3), 1.0);
}

TEST(ChiSquare, StatisticMatchesHandFormula) {
  std::mt19937 rng(31);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> f(60), y(60);
    for (auto& v : f) v = int(rng() % 4);
    for (std::size_t i = 0; i < 60; ++i) y[i] = int((rng() % 3 == 0) ^ (f[i] == 0));
    EXPECT_NEAR(chi_square_test(f, y).statistic, brute_chi_square(f, y), 1e-9);
  }
}

TEST(ChiSquare, DegenerateTable) {
  const std::vector<int> f(10, 0);
  const auto y = labels_with(5, 5);
  const auto r = chi_square_test(f, y);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(InfoGain, FeatureEqualsLabel) {
  const auto y = labels_with(3, 7);
  EXPECT_NEAR(info_gain(y, y), entropy(y), 1e-15);
  EXPECT_NEAR(gain_ratio(y, y), 1.0, 1e-15);
  const double h = -(0.3 * std::log2(0.3) + 0.7 * std::log2(0.7));
  EXPECT_NEAR(entropy(y), h, 1e-15);
}

TEST(InfoGain, ConstantFeature) {
  const std::vector<int> f(10, 4);
  const auto y = labels_with(4, 6);
  EXPECT_EQ(info_gain(f, y), 0.0);
  EXPECT_EQ(gain_ratio(f, y), 0.0);
}

TEST(Permutation, PerfectDependenceHitsTheFloor) {
  const auto y = labels_with(50, 50);
  const auto r = permutation_test(y, y, PermutationStat::InfoGain, 200, 1);
  EXPECT_NEAR(r.p_value, 1.0 / 201.0, 1e-15);
}

TEST(Permutation, NullIsRoughlyUniform) {
  std::mt19937 rng(37);
  double total = 0.0;
  for (int t = 0; t < 50; ++t) {
    std::vector<int> f(80), y(80);
    for (auto& v : f) v = int(rng() % 4);
    for (auto& v : y) v = int(rng() % 2);
    const auto r = permutation_test(f, y, PermutationStat::GainRatio, 200, 100 + t);
    EXPECT_GT(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
    total += r.p_value;
  }
  const double mean = total / 50.0;
  EXPECT_GE(mean, 0.35);
  EXPECT_LE(mean, 0.65);
}

TEST(QuantileBins, TenBinsAndTies) {
  std::vector<double> v(100);
  for (std::size_t i = 0; i < 100; ++i) v[i] = double(i);
  const auto b = quantile_bins(v, 10);
  EXPECT_EQ(*std::max_element(b.begin(), b.end()), 9);
  for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(b[i], int(i / 10));
  const std::vector<double> ties = {1, 1, 1, 1, 2};
  const auto tb = quantile_bins(ties, 10);
  EXPECT_EQ(tb, (std::vector<int>{0, 0, 0, 0, 1}));
}

TEST(FeatureStats, ColumnsAndPValueRange) {
  FeatureMatrix m;
  std::mt19937 rng(41);
  m.values = Matrix(120, 2);
  m.column_names = {"signal", "noise"};
  std::vector<int> y(120);
  for (std::size_t i = 0; i < 120; ++i) {
    y[i] = int(i % 2);
    m.values(i, 0) = double(y[i]) * 2.0 + std::normal_distribution<double>(0, 0.5)(rng);
    m.values(i, 1) = std::normal_distribution<double>(0, 1)(rng);
    m.row_ids.push_back(std::to_string(i));
  }
  FeatureStatsConfig cfg;
  cfg.permutations = 200;
  const auto stats = feature_stats(m, y, {}, "inc", cfg);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].feature_name, "signal");
  EXPECT_LT(stats[0].chi_square_p, 1e-6);
  EXPECT_NEAR(stats[0].info_gain_p, 1.0 / 201.0, 1e-15);
  for (const auto& s : stats) {
    for (double p : {s.chi_square_p, s.info_gain_p, s.gain_ratio_p}) {
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
  EXPECT_THROW(feature_stats(m, y, {"missing"}, "inc", cfg), std::invalid_argument);

  const auto pooled = pooled_feature_stats({m, m}, {y, y}, {"noise"}, cfg);
  ASSERT_EQ(pooled.size(), 1u);
  EXPECT_EQ(pooled[0].scope, "pooled");
}

TEST(Experiment, ScoreOutOfFoldBuildsKPlusMacroRows) {
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const std::vector<double> scores = {0.1, 0.9, 0.2, 0.7, 0.6, 0.4, 0.3, 0.8, 0.2, 0.95};
  std::vector<int> pred;
  for (double s : scores) pred.push_back(s >= 0.5);
  const std::vector<std::size_t> fold_of = {0, 0, 1, 1, 2, 2, 3, 3, 4, 4};
  const auto r = score_out_of_fold(ModelKind::Gcn, scores, pred, fold_of, labels, 5);
  ASSERT_EQ(r.folds.size(), 5u);
  EXPECT_EQ(r.folds[2].metrics.accuracy, 0.0);
  EXPECT_EQ(r.folds[0].metrics.auc_roc, 1.0);
  EXPECT_NEAR(r.macro.accuracy, 0.8, 1e-15);
  EXPECT_NEAR(r.pooled_roc.auc, oracle::pairwise_auc(scores, labels), 1e-15);

  ExperimentResult er;
  er.models = {r};
  std::ostringstream out;
  write_metrics_csv(er, out);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 5 + 1);
  EXPECT_NE(s.find("\ngcn,macro,"), std::string::npos);
}

TEST(Experiment, HomophilyDatasetFavorsGraphModel) {
  const auto data = make_node_dataset(homophily_dataset_spec(1));
  ExperimentConfig cfg;
  cfg.seed = 1;
  const auto r = run_experiment(data, cfg);
  ASSERT_EQ(r.models.size(), 2u);
  ASSERT_EQ(r.models[0].kind, ModelKind::Gcn);
  ASSERT_EQ(r.models[0].folds.size(), 5u);
  EXPECT_GT(r.models[0].macro.accuracy, r.models[1].macro.accuracy);
}

TEST(Experiment, DeterministicCsv) {
  auto spec = homophily_dataset_spec(3);
  spec.n = 120;
  const auto data = make_node_dataset(spec);
  ExperimentConfig cfg;
  cfg.gcn.epochs = 20;
  auto csv = [&] {
    const auto r = run_experiment(data, cfg);
    std::ostringstream out;
    write_metrics_csv(r, out);
    for (const auto& m : r.models) write_roc_csv(m, out);
    write_predictions_csv(r, data.features.row_ids, data.labels, out);
    return out.str();
  };
  EXPECT_EQ(csv(), csv());
}
