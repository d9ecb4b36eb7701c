#pragma once

#include <string_view>
#include <vector>

#include "rumorgraph/ingest.hpp"

namespace rumorgraph {

enum class SentimentClass { Positive, Negative, Neutral };

struct SentimentScore {
  double polarity = 0.0;  // [-1, 1]
  SentimentClass sentiment = SentimentClass::Neutral;
};

// Lexicon polarity: mean of the unit weights of matched words, where a
// negation word up to two positions before a term flips its sign.
SentimentScore sentiment(std::string_view text);

// Reply labels aligned with corpus.records[i].replies[j].
using ReplyLabels = std::vector<std::vector<RumorLabel>>;

enum class ReportGrouping { ByInitiatorLabel, ByReplyLabel };

struct SentimentTally {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t neutral = 0;

  // Shares of positive/negative among non-neutral replies; 0 when there are none.
  double positive_pct() const;
  double negative_pct() const;
  bool empty() const { return positive + negative == 0; }
};

struct SentimentReport {
  SentimentTally rumor;
  SentimentTally non_rumor;
};

// Reply sentiment grouped by the initiator's label (or by the weak reply
// label when `grouping` asks for it; then `reply_labels` must be given).
SentimentReport sentiment_report(const IncidentCorpus& corpus,
                                 const ReplyLabels* reply_labels = nullptr,
                                 ReportGrouping grouping = ReportGrouping::ByInitiatorLabel);

}  // namespace rumorgraph
