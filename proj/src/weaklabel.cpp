#include "rumorgraph/weaklabel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace rumorgraph {

using nlohmann::json;

RumorLabel assign_reply_label(RumorLabel initiator, double similarity, double threshold) {
  return similarity >= threshold ? initiator : opposite(initiator);
}

ReplyLabeling label_replies(const IncidentCorpus& corpus, const SimilarityFn& similarity,
                            double threshold) {
  ReplyLabeling out;
  out.labels.resize(corpus.records.size());
  out.similarity.resize(corpus.records.size());
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& rec = corpus.records[i];
    for (const auto& reply : rec.replies) {
      double s = similarity(rec.text, reply.text);
      out.similarity[i].push_back(s);
      out.labels[i].push_back(assign_reply_label(rec.label, s, threshold));
    }
  }
  return out;
}

ReplyLabeling label_replies(const IncidentCorpus& corpus, const TextPreprocessor& text,
                            const LabelingConfig& config) {
  ReplyLabeling out;
  out.labels.resize(corpus.records.size());
  out.similarity.resize(corpus.records.size());
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& rec = corpus.records[i];
    if (rec.replies.empty()) continue;
    const auto source = minhash_signature(text.tokens(rec.text), config.minhash);
    for (const auto& reply : rec.replies) {
      const auto sig = minhash_signature(text.tokens(reply.text), config.minhash);
      double s = estimate_similarity(source, sig);
      out.similarity[i].push_back(s);
      out.labels[i].push_back(assign_reply_label(rec.label, s, config.threshold));
    }
  }
  return out;
}

double intensity_score(std::span<const RumorLabel> labels) {
  if (labels.empty()) throw std::invalid_argument("intensity score of a user with no tweets");
  auto rumors = std::count(labels.begin(), labels.end(), RumorLabel::Rumor);
  return double(rumors) / double(labels.size());
}

int binarize(double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw std::out_of_range("intensity score outside [0, 1]: " + std::to_string(score));
  }
  return score < kSpreaderCutoff ? 0 : 1;
}

std::vector<UserProfile> build_user_profiles(const IncidentCorpus& corpus,
                                             const ReplyLabels& reply_labels) {
  if (reply_labels.size() != corpus.records.size()) {
    throw std::invalid_argument("reply labels do not match the corpus");
  }
  std::map<std::string, UserProfile> users;
  auto touch = [&](const std::string& id, const std::string& text, RumorLabel label,
                   std::uint64_t followers, std::uint64_t favorites, bool verified) {
    auto& p = users[id];
    p.user_id = id;
    p.tweet_labels.push_back(label);
    p.tweets.push_back(text);
    p.followers_count = std::max(p.followers_count, followers);
    p.favorites_count = std::max(p.favorites_count, favorites);
    p.verified = verified;
  };
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    const auto& rec = corpus.records[i];
    if (reply_labels[i].size() != rec.replies.size()) {
      throw std::invalid_argument("reply labels do not match thread " + rec.thread_id);
    }
    touch(rec.user_id, rec.text, rec.label, rec.followers_count, rec.favorites_count,
          rec.verified);
    for (std::size_t j = 0; j < rec.replies.size(); ++j) {
      const auto& r = rec.replies[j];
      touch(r.user_id, r.text, reply_labels[i][j], r.followers_count, r.favorites_count,
            r.verified);
    }
  }
  std::vector<UserProfile> out;
  out.reserve(users.size());
  for (auto& [id, p] : users) {
    p.intensity_score = intensity_score(p.tweet_labels);
    p.spreader_class = binarize(p.intensity_score);
    out.push_back(std::move(p));
  }
  return out;
}

SpreaderCounts count_classes(const std::vector<UserProfile>& profiles) {
  SpreaderCounts c;
  for (const auto& p : profiles) (p.spreader_class == 1 ? c.spreaders : c.non_spreaders)++;
  return c;
}

void write_profiles_jsonl(const std::vector<UserProfile>& profiles, std::ostream& out) {
  for (const auto& p : profiles) {
    json labels = json::array();
    for (auto l : p.tweet_labels) labels.push_back(l == RumorLabel::Rumor ? 1 : 0);
    json obj = {{"user_id", p.user_id},
                {"score", p.intensity_score},
                {"class", p.spreader_class},
                {"followers", p.followers_count},
                {"favorites", p.favorites_count},
                {"verified", p.verified},
                {"labels", std::move(labels)},
                {"tweets", p.tweets}};
    out << obj.dump() << '\n';
  }
}

std::vector<UserProfile> read_profiles_jsonl(std::istream& in) {
  std::vector<UserProfile> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json obj = json::parse(line);
      UserProfile p;
      p.user_id = obj.at("user_id").get<std::string>();
      p.intensity_score = obj.at("score").get<double>();
      p.spreader_class = obj.at("class").get<int>();
      p.followers_count = obj.at("followers").get<std::uint64_t>();
      p.favorites_count = obj.at("favorites").get<std::uint64_t>();
      p.verified = obj.at("verified").get<bool>();
      for (int l : obj.at("labels")) {
        p.tweet_labels.push_back(l == 1 ? RumorLabel::Rumor : RumorLabel::NonRumor);
      }
      p.tweets = obj.at("tweets").get<std::vector<std::string>>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw std::runtime_error("profiles line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void write_label_report(const std::string& incident, const CorpusStats& stats,
                        const SpreaderCounts& counts, std::ostream& out) {
  auto pct = [](std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * double(part) / double(whole);
  };
  const std::size_t tweets = stats.rumor_tweets + stats.non_rumor_tweets;
  const std::size_t users = counts.spreaders + counts.non_spreaders;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%zu,%.1f,%zu,%.1f,%zu,%.1f,%zu,%.1f\n", incident.c_str(),
                stats.rumor_tweets, pct(stats.rumor_tweets, tweets), stats.non_rumor_tweets,
                pct(stats.non_rumor_tweets, tweets), counts.spreaders,
                pct(counts.spreaders, users), counts.non_spreaders,
                pct(counts.non_spreaders, users));
  out << "incident,rumor_tweets,rumor_pct,non_rumor_tweets,non_rumor_pct,"
         "spreaders,spreaders_pct,non_spreaders,non_spreaders_pct\n"
      << buf;
}

}  // namespace rumorgraph
