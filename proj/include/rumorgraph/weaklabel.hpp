#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rumorgraph/ingest.hpp"
#include "rumorgraph/minhash.hpp"
#include "rumorgraph/sentiment.hpp"
#include "rumorgraph/textprep.hpp"

namespace rumorgraph {

inline constexpr double kDefaultSimilarityThreshold = 0.85;
inline constexpr double kSpreaderCutoff = 0.5;

struct LabelingConfig {
  double threshold = kDefaultSimilarityThreshold;
  MinHashParams minhash;
};

// Same label as the initiator when the reply is similar enough (inclusive
// threshold), the opposite label otherwise.
RumorLabel assign_reply_label(RumorLabel initiator, double similarity, double threshold);

struct ReplyLabeling {
  ReplyLabels labels;                           // [record][reply]
  std::vector<std::vector<double>> similarity;  // same shape
};

// Each reply is compared with its own thread's initiator tweet only.
ReplyLabeling label_replies(const IncidentCorpus& corpus, const TextPreprocessor& text,
                            const LabelingConfig& config = {});

// Same rule with a caller-supplied similarity function (initiator text, reply text).
using SimilarityFn = std::function<double(const std::string&, const std::string&)>;
ReplyLabeling label_replies(const IncidentCorpus& corpus, const SimilarityFn& similarity,
                            double threshold = kDefaultSimilarityThreshold);

// Fraction of Rumor labels. Throws std::invalid_argument on an empty list.
double intensity_score(std::span<const RumorLabel> labels);

// 0 iff score < 0.5. Throws std::out_of_range outside [0, 1].
int binarize(double score);

struct UserProfile {
  std::string user_id;
  std::vector<RumorLabel> tweet_labels;
  std::vector<std::string> tweets;  // raw texts, same order as tweet_labels
  double intensity_score = 0.0;
  int spreader_class = 0;
  std::uint64_t followers_count = 0;
  std::uint64_t favorites_count = 0;
  bool verified = false;

  bool operator==(const UserProfile&) const = default;
};

struct SpreaderCounts {
  std::size_t non_spreaders = 0;
  std::size_t spreaders = 0;
};

// One profile per distinct user (initiators and repliers), sorted by user id.
// Followers/favorites take the maximum seen across the user's records;
// `verified` comes from the user's last record in corpus order.
std::vector<UserProfile> build_user_profiles(const IncidentCorpus& corpus,
                                             const ReplyLabels& reply_labels);

SpreaderCounts count_classes(const std::vector<UserProfile>& profiles);

void write_profiles_jsonl(const std::vector<UserProfile>& profiles, std::ostream& out);
std::vector<UserProfile> read_profiles_jsonl(std::istream& in);

// Per-incident tweet and spreader counts with percentages.
void write_label_report(const std::string& incident, const CorpusStats& stats,
                        const SpreaderCounts& counts, std::ostream& out);

}  // namespace rumorgraph
