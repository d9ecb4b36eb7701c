#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "rumorgraph/ingest.hpp"
#include "test_util.hpp"

using namespace rumorgraph;

namespace {

std::string tweet_json(const std::string& id, const std::string& user, const std::string& text,
                       int followers = 10, int favourites = 3, bool verified = false) {
  return R"({"id_str":")" + id + R"(","text":")" + text + R"(","user":{"id_str":")" + user +
         R"(","followers_count":)" + std::to_string(followers) + R"(,"favourites_count":)" +
         std::to_string(favourites) + R"(,"verified":)" + (verified ? "true" : "false") + "}}";
}

void write_thread(const std::filesystem::path& incident, const std::string& label_dir,
                  const std::string& id, const std::string& user, const std::string& text,
                  const std::vector<std::pair<std::string, std::string>>& replies = {}) {
  const auto dir = incident / label_dir / id;
  write_file(dir / "source-tweet" / (id + ".json"), tweet_json(id, user, text));
  int k = 0;
  for (const auto& [ruser, rtext] : replies) {
    const std::string rid = id + "r" + std::to_string(k++);
    write_file(dir / "reactions" / (rid + ".json"), tweet_json(rid, ruser, rtext));
  }
}

TweetRecord record(const std::string& user, RumorLabel label,
                   std::vector<ReplyRecord> replies = {}) {
  TweetRecord r;
  r.user_id = user;
  r.text = "text from " + user;
  r.label = label;
  r.replies = std::move(replies);
  return r;
}

}  // namespace

TEST(PhemeLoader, TwoValidThreadsAndOneCorruptFile) {
  TempDir tmp;
  const auto inc = tmp / "charliehebdo";
  write_thread(inc, "rumours", "100", "u1", "breaking news", {{"u2", "really?"}, {"u3", "wow"}});
  write_thread(inc, "non-rumours", "200", "u4", "calm update");
  write_file(inc / "rumours" / "300" / "source-tweet" / "300.json", "{not json");

  LoadReport report;
  const auto corpus = load_pheme_incident(inc, &report);
  ASSERT_EQ(corpus.records.size(), 2u);
  EXPECT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("300.json"), std::string::npos);
  EXPECT_EQ(report.threads_seen, 3u);
  EXPECT_EQ(report.threads_skipped, 1u);
  EXPECT_EQ(corpus.incident_name, "charliehebdo");

  const auto& rumor = corpus.records[0];
  EXPECT_EQ(rumor.thread_id, "100");
  EXPECT_EQ(rumor.label, RumorLabel::Rumor);
  EXPECT_EQ(rumor.user_id, "u1");
  EXPECT_EQ(rumor.followers_count, 10u);
  EXPECT_EQ(rumor.favorites_count, 3u);
  ASSERT_EQ(rumor.replies.size(), 2u);
  EXPECT_EQ(rumor.replies[0].user_id, "u2");
  EXPECT_EQ(corpus.records[1].label, RumorLabel::NonRumor);
}

TEST(PhemeLoader, EmptyDirectoryIsFatal) {
  TempDir tmp;
  std::filesystem::create_directories(tmp / "empty" / "rumours");
  EXPECT_THROW(load_pheme_incident(tmp / "empty"), IngestError);
}

TEST(PhemeLoader, MissingPathIsFatal) {
  TempDir tmp;
  EXPECT_THROW(load_pheme_incident(tmp / "nope"), IngestError);
}

TEST(PhemeLoader, MissingMetadataDefaultsToZero) {
  TempDir tmp;
  const auto dir = tmp / "inc" / "rumours" / "1";
  write_file(dir / "source-tweets" / "1.json", R"({"id_str":"1","text":"hi","user":{"id_str":"u"}})");
  LoadReport report;
  const auto corpus = load_pheme_incident(tmp / "inc", &report);
  ASSERT_EQ(corpus.records.size(), 1u);
  EXPECT_EQ(corpus.records[0].followers_count, 0u);
  EXPECT_EQ(corpus.records[0].favorites_count, 0u);
  EXPECT_FALSE(corpus.records[0].verified);
  EXPECT_EQ(report.defaulted_fields, 3u);
}

TEST(PhemeLoader, DuplicateThreadLastWinsWithWarning) {
  TempDir tmp;
  const auto inc = tmp / "inc";
  write_thread(inc, "non-rumours", "7", "a", "first copy");
  write_thread(inc, "rumours", "7", "b", "second copy");
  LoadReport report;
  const auto corpus = load_pheme_incident(inc, &report);
  ASSERT_EQ(corpus.records.size(), 1u);
  EXPECT_EQ(corpus.records[0].user_id, "b");
  EXPECT_EQ(corpus.records[0].label, RumorLabel::Rumor);
  EXPECT_EQ(report.duplicate_threads, 1u);
  EXPECT_EQ(report.warnings.size(), 1u);
}

TEST(Jsonl, ThreeValidLines) {
  std::istringstream in(
      R"({"user_id":"a","text":"x","label":"rumor"})"
      "\n"
      R"({"user_id":"b","text":"y","label":"non-rumor","replies":[{"user_id":"c","text":"z"}]})"
      "\n"
      R"({"user_id":"c","text":"w","label":1,"followers":5,"favorites":2,"verified":true})"
      "\n");
  const auto corpus = parse_jsonl(in, "fixture");
  ASSERT_EQ(corpus.records.size(), 3u);
  EXPECT_EQ(corpus.records[0].label, RumorLabel::Rumor);
  EXPECT_EQ(corpus.records[1].label, RumorLabel::NonRumor);
  ASSERT_EQ(corpus.records[1].replies.size(), 1u);
  EXPECT_EQ(corpus.records[1].replies[0].user_id, "c");
  EXPECT_EQ(corpus.records[2].followers_count, 5u);
  EXPECT_TRUE(corpus.records[2].verified);
}

TEST(Jsonl, MissingLabelNamesLineAndField) {
  std::istringstream in(R"({"user_id":"a","text":"x","label":"rumor"})"
                        "\n"
                        R"({"user_id":"b","text":"y"})"
                        "\n");
  try {
    parse_jsonl(in, "fixture");
    FAIL() << "expected an error";
  } catch (const IngestError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("line 2: rumor_label", 0), 0u) << e.what();
  }
}

TEST(Jsonl, TrailingBlankLinesIgnored) {
  std::istringstream in(R"({"user_id":"a","text":"x","label":"rumor"})"
                        "\n\n   \n");
  EXPECT_EQ(parse_jsonl(in, "fixture").records.size(), 1u);
}

TEST(Jsonl, LoadFromFile) {
  TempDir tmp;
  write_file(tmp / "inc.jsonl", R"({"user_id":"a","text":"x","label":"rumor"})"
                                "\n");
  const auto corpus = load_jsonl(tmp / "inc.jsonl");
  EXPECT_EQ(corpus.incident_name, "inc");
  EXPECT_EQ(corpus.records.size(), 1u);
  EXPECT_THROW(load_jsonl(tmp / "missing.jsonl"), IngestError);
}

TEST(Jsonl, RoundTripIsFieldForField) {
  IncidentCorpus corpus;
  corpus.incident_name = "rt";
  auto r1 = record("u1", RumorLabel::Rumor, {{"u2", "reply \"quoted\" text", 4, 5, true}});
  r1.thread_id = "t1";
  r1.followers_count = 99;
  r1.verified = true;
  auto r2 = record("u3", RumorLabel::NonRumor);
  r2.text = "unicode caf\xc3\xa9 \xf0\x9f\x98\x80";
  corpus.records = {r1, r2};

  std::stringstream buf;
  write_jsonl(corpus, buf);
  EXPECT_EQ(parse_jsonl(buf, "rt"), corpus);
}

TEST(CorpusStats, SingleRecordWithoutReplies) {
  IncidentCorpus corpus;
  corpus.records = {record("u", RumorLabel::Rumor)};
  const auto s = corpus_stats(corpus);
  EXPECT_EQ(s.unique_users, 1u);
  EXPECT_EQ(s.replies, 0u);
  EXPECT_EQ(s.rumor_tweets, 1u);
  EXPECT_EQ(s.non_rumor_tweets, 0u);
}

TEST(CorpusStats, MatchesBruteForceCounts) {
  std::mt19937 rng(3);
  IncidentCorpus corpus;
  for (int i = 0; i < 50; ++i) {
    auto rec = record("u" + std::to_string(rng() % 20),
                      rng() % 3 == 0 ? RumorLabel::Rumor : RumorLabel::NonRumor);
    const int n = int(rng() % 4);
    for (int k = 0; k < n; ++k) rec.replies.push_back({"u" + std::to_string(rng() % 30), "r"});
    corpus.records.push_back(rec);
  }
  std::size_t rumor = 0, non_rumor = 0, replies = 0;
  std::set<std::string> users;
  for (const auto& r : corpus.records) {
    if (r.label == RumorLabel::Rumor) ++rumor;
    else ++non_rumor;
    users.insert(r.user_id);
    for (const auto& rep : r.replies) {
      ++replies;
      users.insert(rep.user_id);
    }
  }
  const auto s = corpus_stats(corpus);
  EXPECT_EQ(s.rumor_tweets, rumor);
  EXPECT_EQ(s.non_rumor_tweets, non_rumor);
  EXPECT_EQ(s.replies, replies);
  EXPECT_EQ(s.unique_users, users.size());
}
