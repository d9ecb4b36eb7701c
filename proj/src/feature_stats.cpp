#include "rumorgraph/feature_stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

namespace {

// Tolerance when comparing permuted statistics with the observed one; sums of
// the same terms in a different order can differ in the last bits.
constexpr double kStatTolerance = 1e-12;

void check_lengths(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("feature/label length mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

double plogp_sum(const std::map<int, std::size_t>& counts, double n) {
  double h = 0.0;
  for (const auto& [v, c] : counts) {
    if (c == 0) continue;
    const double p = double(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double conditional_entropy(std::span<const int> feature, std::span<const int> label) {
  std::map<int, std::map<int, std::size_t>> joint;
  for (std::size_t i = 0; i < feature.size(); ++i) ++joint[feature[i]][label[i]];
  const double n = double(feature.size());
  double h = 0.0;
  for (const auto& [f, row] : joint) {
    std::size_t nf = 0;
    for (const auto& [l, c] : row) nf += c;
    h += double(nf) / n * plogp_sum(row, double(nf));
  }
  return h;
}

std::vector<double> column(const FeatureMatrix& m, std::size_t c) {
  std::vector<double> v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.values(r, c);
  return v;
}

}  // namespace

std::vector<int> quantile_bins(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("quantile_bins: bins must be positive");
  std::vector<int> out(values.size(), 0);
  if (values.empty()) return out;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (std::size_t j = 1; j < bins; ++j) {
    const double c = sorted[j * sorted.size() / bins];
    if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
  }
  std::vector<int> raw(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    raw[i] = int(std::upper_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin());
  }
  // compact to the occupied bins
  std::vector<int> occupied(raw);
  std::sort(occupied.begin(), occupied.end());
  occupied.erase(std::unique(occupied.begin(), occupied.end()), occupied.end());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = int(std::lower_bound(occupied.begin(), occupied.end(), raw[i]) - occupied.begin());
  }
  return out;
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) throw std::invalid_argument("chi-square dof must be positive");
  if (statistic <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_test(std::span<const int> feature, std::span<const int> label) {
  check_lengths(feature, label);
  std::map<int, std::size_t> rows, cols;
  std::map<std::pair<int, int>, std::size_t> cell;
  for (std::size_t i = 0; i < feature.size(); ++i) {
    ++rows[feature[i]];
    ++cols[label[i]];
    ++cell[{feature[i], label[i]}];
  }
  ChiSquareResult r;
  if (rows.size() < 2 || cols.size() < 2) {
    r.degenerate = true;
    return r;
  }
  const double n = double(feature.size());
  double stat = 0.0;
  for (const auto& [f, nf] : rows) {
    for (const auto& [l, nl] : cols) {
      const double expected = double(nf) * double(nl) / n;
      auto it = cell.find({f, l});
      const double observed = it == cell.end() ? 0.0 : double(it->second);
      const double d = observed - expected;
      stat += d * d / expected;
    }
  }
  r.statistic = stat;
  r.dof = double((rows.size() - 1) * (cols.size() - 1));
  r.p_value = chi_square_sf(stat, r.dof);
  return r;
}

double entropy(std::span<const int> values) {
  if (values.empty()) return 0.0;
  std::map<int, std::size_t> counts;
  for (int v : values) ++counts[v];
  return plogp_sum(counts, double(values.size()));
}

double info_gain(std::span<const int> feature, std::span<const int> label) {
  check_lengths(feature, label);
  if (feature.empty()) return 0.0;
  return std::max(0.0, entropy(label) - conditional_entropy(feature, label));
}

double gain_ratio(std::span<const int> feature, std::span<const int> label) {
  const double hf = entropy(feature);
  if (hf <= 0.0) return 0.0;
  return info_gain(feature, label) / hf;
}

PermutationResult permutation_test(std::span<const int> feature, std::span<const int> label,
                                   PermutationStat stat, std::size_t permutations,
                                   std::uint64_t seed) {
  check_lengths(feature, label);
  if (permutations == 0) throw std::invalid_argument("permutation count must be positive");
  auto compute = [&](std::span<const int> y) {
    return stat == PermutationStat::InfoGain ? info_gain(feature, y) : gain_ratio(feature, y);
  };
  PermutationResult r;
  r.statistic = compute(label);
  std::vector<int> y(label.begin(), label.end());
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t m = 0; m < permutations; ++m) {
    for (std::size_t i = y.size(); i > 1; --i) std::swap(y[i - 1], y[rng() % i]);
    if (compute(y) >= r.statistic - kStatTolerance) ++hits;
  }
  r.p_value = std::max(double(hits) / double(permutations), 1.0 / double(permutations + 1));
  return r;
}

const std::vector<std::string>& default_stat_columns() {
  static const std::vector<std::string> cols{"followers", "favorites", "verified", "user_imp"};
  return cols;
}

std::vector<FeatureStat> feature_stats(const FeatureMatrix& features, std::span<const int> labels,
                                       const std::vector<std::string>& columns,
                                       const std::string& scope,
                                       const FeatureStatsConfig& config) {
  if (features.rows() != labels.size()) {
    throw std::invalid_argument("feature_stats: " + std::to_string(features.rows()) +
                                " rows but " + std::to_string(labels.size()) + " labels");
  }
  std::vector<std::string> names = columns.empty() ? features.column_names : columns;
  std::vector<FeatureStat> out;
  for (const auto& name : names) {
    auto it = std::find(features.column_names.begin(), features.column_names.end(), name);
    if (it == features.column_names.end()) {
      throw std::invalid_argument("feature_stats: unknown column '" + name + "'");
    }
    const auto c = std::size_t(it - features.column_names.begin());
    const auto values = column(features, c);
    const auto binned = quantile_bins(values, config.bins);
    FeatureStat s;
    s.scope = scope;
    s.feature_name = name;
    const auto chi = chi_square_test(binned, labels);
    s.chi_square = chi.statistic;
    s.chi_square_p = chi.p_value;
    s.degenerate = chi.degenerate;
    // Each column gets its own permutation stream so adding columns does not
    // change the others' p-values.
    const std::uint64_t col_seed = config.seed + 0x9e3779b97f4a7c15ULL * (c + 1);
    const auto ig = permutation_test(binned, labels, PermutationStat::InfoGain,
                                     config.permutations, col_seed);
    const auto gr = permutation_test(binned, labels, PermutationStat::GainRatio,
                                     config.permutations, col_seed);
    s.info_gain = ig.statistic;
    s.info_gain_p = ig.p_value;
    s.gain_ratio = gr.statistic;
    s.gain_ratio_p = gr.p_value;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FeatureStat> pooled_feature_stats(const std::vector<FeatureMatrix>& features,
                                              const std::vector<std::vector<int>>& labels,
                                              const std::vector<std::string>& columns,
                                              const FeatureStatsConfig& config) {
  if (features.size() != labels.size() || features.empty()) {
    throw std::invalid_argument("pooled_feature_stats: need one label vector per matrix");
  }
  const std::vector<std::string> names =
      columns.empty() ? features.front().column_names : columns;
  FeatureMatrix pooled;
  pooled.column_names = names;
  std::vector<int> y;
  std::vector<double> data;
  for (std::size_t m = 0; m < features.size(); ++m) {
    const auto& f = features[m];
    std::vector<std::size_t> idx;
    for (const auto& name : names) {
      auto it = std::find(f.column_names.begin(), f.column_names.end(), name);
      if (it == f.column_names.end()) {
        throw std::invalid_argument("pooled_feature_stats: unknown column '" + name + "'");
      }
      idx.push_back(std::size_t(it - f.column_names.begin()));
    }
    for (std::size_t r = 0; r < f.rows(); ++r) {
      for (auto c : idx) data.push_back(f.values(r, c));
      pooled.row_ids.push_back(f.row_ids.empty() ? "" : f.row_ids[r]);
    }
    y.insert(y.end(), labels[m].begin(), labels[m].end());
  }
  pooled.values = Matrix(pooled.row_ids.size(), names.size(), std::move(data));
  return feature_stats(pooled, y, names, "pooled", config);
}

void write_feature_stats_csv(const std::vector<FeatureStat>& stats, std::ostream& out) {
  out << "scope,feature,chi_square,chi_square_p,info_gain,info_gain_p,gain_ratio,gain_ratio_p,"
         "degenerate\n";
  for (const auto& s : stats) {
    out << csv_escape(s.scope) << ',' << csv_escape(s.feature_name) << ','
        << format_double(s.chi_square) << ',' << format_double(s.chi_square_p) << ','
        << format_double(s.info_gain) << ',' << format_double(s.info_gain_p) << ','
        << format_double(s.gain_ratio) << ',' << format_double(s.gain_ratio_p) << ','
        << (s.degenerate ? 1 : 0) << '\n';
  }
}

}  // namespace rumorgraph
