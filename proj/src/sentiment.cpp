#include "rumorgraph/sentiment.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace rumorgraph {

namespace {

constexpr const char* kPositive[] = {
    "good", "great", "excellent", "amazing", "awesome", "best", "better", "brave",
    "calm", "confirmed", "correct", "glad", "happy", "hope", "hopeful", "kind", "love",
    "loved", "lovely", "nice", "peace", "peaceful", "perfect", "pray", "praying",
    "prayers", "proud", "relief", "relieved", "respect", "safe", "safely", "strong",
    "support", "supporting", "thank", "thanks", "thankful", "true", "trust", "truth",
    "well", "wonderful", "agree", "right", "solidarity", "courage", "hero", "heroes",
    "helpful", "positive", "fine", "fair", "honest", "accurate", "verified", "real",
    "beautiful", "win", "welcome", "encouraging", "grateful", "rescued", "free",
    "freedom", "bless", "blessed", "smart", "wise", "success", "successful", "secure",
};

constexpr const char* kNegative[] = {
    "bad", "worse", "worst", "awful", "terrible", "horrible", "sad", "angry", "hate",
    "hated", "fear", "afraid", "scared", "false", "fake", "hoax", "lie", "lies", "lying",
    "liar", "wrong", "rumor", "rumour", "unconfirmed", "misleading", "shame", "shameful",
    "disgusting", "disgrace", "evil", "kill", "killed", "killing", "dead", "death",
    "attack", "attacked", "terror", "terrorist", "violence", "violent", "tragic",
    "tragedy", "horror", "panic", "crazy", "stupid", "idiot", "sick", "pathetic",
    "nonsense", "ridiculous", "doubt", "doubtful", "suspicious", "unbelievable",
    "negative", "fail", "failed", "failure", "danger", "dangerous", "threat", "hurt",
    "pain", "cry", "crying", "upset", "worried", "worry", "disaster", "outrage",
    "outrageous", "racist", "corrupt", "debunked", "untrue", "propaganda",
};

constexpr const char* kNegators[] = {
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor", "cannot",
    "cant", "can't", "dont", "don't", "doesnt", "doesn't", "isnt", "isn't", "wasnt",
    "wasn't", "arent", "aren't", "werent", "weren't", "wont", "won't", "didnt", "didn't",
    "shouldnt", "shouldn't", "wouldnt", "wouldn't", "aint", "ain't", "without",
};

const std::unordered_map<std::string, double>& lexicon() {
  static const auto table = [] {
    std::unordered_map<std::string, double> t;
    for (const char* w : kPositive) t.emplace(w, 1.0);
    for (const char* w : kNegative) t.emplace(w, -1.0);
    return t;
  }();
  return table;
}

const std::unordered_set<std::string>& negators() {
  static const std::unordered_set<std::string> set(std::begin(kNegators), std::end(kNegators));
  return set;
}

std::vector<std::string> sentiment_words(std::string_view text) {
  std::vector<std::string> words;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    std::size_t b = 0;
    while (b < cur.size() && cur[b] == '\'') ++b;
    if (b < cur.size()) words.push_back(cur.substr(b));
    cur.clear();
  };
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || c == '\'') {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return words;
}

double pct(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * double(part) / double(whole);
}

}  // namespace

SentimentScore sentiment(std::string_view text) {
  const auto words = sentiment_words(text);
  const auto& lex = lexicon();
  const auto& neg = negators();
  double sum = 0.0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto it = lex.find(words[i]);
    if (it == lex.end()) continue;
    double value = it->second;
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
      if (neg.contains(words[i - back])) {
        value = -value;
        break;
      }
    }
    sum += value;
    ++matched;
  }
  SentimentScore score;
  score.polarity = matched == 0 ? 0.0 : sum / double(matched);
  if (score.polarity > 0) {
    score.sentiment = SentimentClass::Positive;
  } else if (score.polarity < 0) {
    score.sentiment = SentimentClass::Negative;
  }
  return score;
}

double SentimentTally::positive_pct() const { return pct(positive, positive + negative); }
double SentimentTally::negative_pct() const { return pct(negative, positive + negative); }

SentimentReport sentiment_report(const IncidentCorpus& corpus, const ReplyLabels* reply_labels,
                                 ReportGrouping grouping) {
  if (grouping == ReportGrouping::ByReplyLabel) {
    if (!reply_labels || reply_labels->size() != corpus.records.size()) {
      throw std::invalid_argument("reply labels do not match the corpus");
    }
  }
  SentimentReport report;
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& rec = corpus.records[i];
    for (std::size_t j = 0; j < rec.replies.size(); ++j) {
      RumorLabel group = rec.label;
      if (grouping == ReportGrouping::ByReplyLabel) group = (*reply_labels)[i].at(j);
      SentimentTally& tally = group == RumorLabel::Rumor ? report.rumor : report.non_rumor;
      switch (sentiment(rec.replies[j].text).sentiment) {
        case SentimentClass::Positive: ++tally.positive; break;
        case SentimentClass::Negative: ++tally.negative; break;
        case SentimentClass::Neutral: ++tally.neutral; break;
      }
    }
  }
  return report;
}

}  // namespace rumorgraph
