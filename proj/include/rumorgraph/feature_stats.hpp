#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rumorgraph/features.hpp"

namespace rumorgraph {

inline constexpr std::size_t kDefaultBins = 10;
inline constexpr std::size_t kDefaultPermutations = 1000;

// Quantile binning: cut points at the k/bins order statistics, tied values
// share a bin, bin ids are compacted to 0..B-1.
std::vector<int> quantile_bins(std::span<const double> values, std::size_t bins = kDefaultBins);

// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, double dof);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // fewer than two occupied rows or columns
};

// Pearson test of independence on the feature x label contingency table,
// with empty rows and columns dropped. A degenerate table gives p = 1.
ChiSquareResult chi_square_test(std::span<const int> feature, std::span<const int> label);

// Entropies in bits.
double entropy(std::span<const int> values);
double info_gain(std::span<const int> feature, std::span<const int> label);
// IG / H(feature), 0 when the feature is constant.
double gain_ratio(std::span<const int> feature, std::span<const int> label);

struct PermutationResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

enum class PermutationStat { InfoGain, GainRatio };

// Fraction of label permutations whose statistic reaches the observed one,
// floored at 1/(M+1).
PermutationResult permutation_test(std::span<const int> feature, std::span<const int> label,
                                   PermutationStat stat,
                                   std::size_t permutations = kDefaultPermutations,
                                   std::uint64_t seed = 42);

struct FeatureStat {
  std::string scope;  // incident name or "pooled"
  std::string feature_name;
  double chi_square = 0.0;
  double chi_square_p = 1.0;
  double info_gain = 0.0;
  double info_gain_p = 1.0;
  double gain_ratio = 0.0;
  double gain_ratio_p = 1.0;
  bool degenerate = false;
};

struct FeatureStatsConfig {
  std::size_t bins = kDefaultBins;
  std::size_t permutations = kDefaultPermutations;
  std::uint64_t seed = 42;
};

// Statistics for the named columns of `features` (all columns when empty).
// Throws std::invalid_argument on an unknown column or row/label mismatch.
std::vector<FeatureStat> feature_stats(const FeatureMatrix& features, std::span<const int> labels,
                                       const std::vector<std::string>& columns,
                                       const std::string& scope,
                                       const FeatureStatsConfig& config = {});

// Stacks several incidents' rows and computes one "pooled" row per column.
std::vector<FeatureStat> pooled_feature_stats(const std::vector<FeatureMatrix>& features,
                                              const std::vector<std::vector<int>>& labels,
                                              const std::vector<std::string>& columns,
                                              const FeatureStatsConfig& config = {});

// The user-level metadata columns reported by default.
const std::vector<std::string>& default_stat_columns();

void write_feature_stats_csv(const std::vector<FeatureStat>& stats, std::ostream& out);

}  // namespace rumorgraph
