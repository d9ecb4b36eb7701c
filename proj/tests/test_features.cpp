#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rumorgraph/features.hpp"

using namespace rumorgraph;

namespace {

EmbeddingProvider tiny_table() {
  return EmbeddingProvider::from_vectors({{"cat", {1.0, 2.0, 3.0}}, {"dog", {3.0, -2.0, 0.0}}});
}

UserProfile profile(const std::string& id, std::uint64_t followers, std::uint64_t favorites,
                    bool verified) {
  UserProfile p;
  p.user_id = id;
  p.followers_count = followers;
  p.favorites_count = favorites;
  p.verified = verified;
  return p;
}

FeatureMatrix column(std::vector<double> v) {
  FeatureMatrix m;
  const std::size_t n = v.size();
  m.values = Matrix(n, 1, std::move(v));
  m.column_names = {"x"};
  for (std::size_t i = 0; i < n; ++i) m.row_ids.push_back("r" + std::to_string(i));
  return m;
}

}  // namespace

TEST(EmbedText, EmptyIsZero) {
  EXPECT_EQ(embed_text({}, tiny_table()), std::vector<double>(3, 0.0));
  EXPECT_EQ(embed_text({"unknown"}, tiny_table()), std::vector<double>(3, 0.0));
}

TEST(EmbedText, SingleWordIsItsVector) {
  EXPECT_EQ(embed_text({"cat"}, tiny_table()), (std::vector<double>{1.0, 2.0, 3.0}));
}

TEST(EmbedText, MeanOfKnownWords) {
  EXPECT_EQ(embed_text({"cat", "dog", "unknown"}, tiny_table()),
            (std::vector<double>{2.0, 0.0, 1.5}));
}

TEST(EmbedUserTweets, MeanOfTweetEmbeddings) {
  const auto p = tiny_table();
  EXPECT_EQ(embed_user_tweets({{"cat"}}, p), embed_text({"cat"}, p));
  EXPECT_EQ(embed_user_tweets({{"cat"}, {"cat"}}, p), embed_text({"cat"}, p));
  // tweet means (1,2,3) and (2,0,1.5)
  EXPECT_EQ(embed_user_tweets({{"cat"}, {"cat", "dog"}}, p),
            (std::vector<double>{1.5, 1.0, 2.25}));
}

TEST(HashProvider, DeterministicPerWordAndSeed) {
  const auto a = EmbeddingProvider::hash_random(300, 42);
  const auto b = EmbeddingProvider::hash_random(300, 42);
  const auto c = EmbeddingProvider::hash_random(300, 43);
  std::vector<double> va(300), vb(300), vc(300), vd(300);
  ASSERT_TRUE(a.lookup("police", va));
  b.lookup("police", vb);
  c.lookup("police", vc);
  a.lookup("polic", vd);
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
  for (double v : va) EXPECT_TRUE(std::isfinite(v));
}

TEST(HashProvider, RoughlyUnitVariance) {
  const auto p = EmbeddingProvider::hash_random(300, 1);
  std::vector<double> v(300);
  double sum = 0, sq = 0;
  std::size_t n = 0;
  for (int w = 0; w < 100; ++w) {
    p.lookup("w" + std::to_string(w), v);
    for (double x : v) {
      sum += x;
      sq += x * x;
      ++n;
    }
  }
  const double mean = sum / double(n);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(sq / double(n) - mean * mean, 1.0, 0.03);
}

TEST(FileProvider, ParsesHeaderAndRows) {
  std::istringstream in("2 3\ncat 1 2 3\ndog 3 -2 0\n");
  const auto p = EmbeddingProvider::from_stream(in);
  EXPECT_EQ(p.mode(), EmbeddingProvider::Mode::FileBacked);
  EXPECT_EQ(p.dimension(), 3u);
  EXPECT_EQ(embed_text({"dog"}, p), (std::vector<double>{3.0, -2.0, 0.0}));
}

TEST(FileProvider, WithoutHeaderAndWrongWidth) {
  std::istringstream ok("cat 1 2\n");
  EXPECT_EQ(EmbeddingProvider::from_stream(ok).dimension(), 2u);
  std::istringstream bad("cat 1 2\ndog 1\n");
  EXPECT_THROW(EmbeddingProvider::from_stream(bad), std::runtime_error);
}

TEST(UserImportance, Examples) {
  EXPECT_EQ(user_importance({{"A", 5}, {"B", 15}}),
            (std::map<std::string, double>{{"A", 0.25}, {"B", 0.75}}));
  EXPECT_EQ(user_importance({{"A", 7}}), (std::map<std::string, double>{{"A", 1.0}}));
  EXPECT_EQ(user_importance({{"A", 0}, {"B", 0}}),
            (std::map<std::string, double>{{"A", 0.0}, {"B", 0.0}}));
}

TEST(UserImportance, SumsToOne) {
  std::mt19937 rng(9);
  std::map<std::string, std::uint64_t> counts;
  for (int i = 0; i < 40; ++i) counts["u" + std::to_string(i)] = rng() % 10;
  double total = 0;
  for (const auto& [u, v] : user_importance(counts)) {
    EXPECT_GE(v, 0.0);
    total += v;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(RepliesReceived, CountsOtherUsersOnly) {
  IncidentCorpus c;
  TweetRecord r;
  r.user_id = "I";
  r.replies = {{"R1", "a"}, {"R1", "b"}, {"I", "self"}, {"R2", "c"}};
  c.records = {r};
  const auto counts = replies_received(c);
  EXPECT_EQ(counts.at("I"), 3u);
  EXPECT_EQ(counts.at("R1"), 0u);
  EXPECT_EQ(counts.at("R2"), 0u);
}

TEST(Assemble, ShapeAndLayout) {
  const std::vector<UserProfile> profiles = {profile("a", 10, 1, true), profile("b", 20, 2, false),
                                             profile("c", 30, 3, false)};
  std::map<std::string, std::vector<double>> emb;
  std::map<std::string, double> imp;
  for (int i = 0; i < 3; ++i) {
    const std::string id(1, char('a' + i));
    emb[id] = {double(i), double(i) + 0.5, -double(i), 7.0};
    imp[id] = 0.1 * i;
  }
  const auto m = assemble(profiles, emb, imp);
  ASSERT_EQ(m.rows(), 3u);
  ASSERT_EQ(m.cols(), 8u);
  EXPECT_EQ(m.column_names.back(), "user_imp");
  EXPECT_EQ(m.row_ids, (std::vector<std::string>{"a", "b", "c"}));
  for (std::size_t r = 0; r < 3; ++r) {
    const auto& id = m.row_ids[r];
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(m.values(r, k), emb[id][k]);
    EXPECT_EQ(m.values(r, 4), double(profiles[r].followers_count));
    EXPECT_EQ(m.values(r, 5), double(profiles[r].favorites_count));
    EXPECT_EQ(m.values(r, 6), profiles[r].verified ? 1.0 : 0.0);
    EXPECT_EQ(m.values(r, 7), imp[id]);
  }
}

TEST(Assemble, MissingEmbeddingNamesUser) {
  const std::vector<UserProfile> profiles = {profile("a", 0, 0, false), profile("ghost", 0, 0, false)};
  try {
    assemble(profiles, {{"a", {1.0}}}, {{"a", 0.0}, {"ghost", 0.0}});
    FAIL() << "expected an error";
  } catch (const FeatureError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
  }
}

TEST(Standardize, UnitColumn) {
  const std::vector<std::size_t> all = {0, 1, 2};
  const auto z = standardize(column({1, 2, 3}), all);
  // population sd of {1,2,3} is sqrt(2/3)
  EXPECT_NEAR(z.values(0, 0), -1.0 / std::sqrt(2.0 / 3.0), 1e-12);
  double mean = 0, sq = 0;
  for (double v : z.values.data()) {
    mean += v;
    sq += v * v;
  }
  EXPECT_NEAR(mean / 3, 0.0, 1e-12);
  EXPECT_NEAR(sq / 3, 1.0, 1e-12);
}

TEST(Standardize, ConstantColumnIsZero) {
  const std::vector<std::size_t> all = {0, 1, 2};
  EXPECT_EQ(standardize(column({4, 4, 4}), all).values.data(), std::vector<double>(3, 0.0));
}

TEST(Standardize, TestRowsUseTrainingStatistics) {
  // fit on {2, 4}: mean 3, population sd 1
  const std::vector<std::size_t> fit = {0, 1};
  const auto z = standardize(column({2, 4, 10}), fit);
  EXPECT_DOUBLE_EQ(z.values(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(z.values(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(z.values(2, 0), 7.0);
}

TEST(Standardize, IdempotentOnSameRows) {
  std::mt19937 rng(4);
  std::normal_distribution<double> g(5.0, 3.0);
  std::vector<double> v(50);
  for (auto& x : v) x = g(rng);
  std::vector<std::size_t> fit;
  for (std::size_t i = 0; i < 50; i += 2) fit.push_back(i);
  const auto once = standardize(column(v), fit);
  const auto twice = standardize(once, fit);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(once.values(i, 0), twice.values(i, 0), 1e-12);
}

TEST(Standardize, EmptyFitRejected) {
  EXPECT_THROW(standardize(column({1, 2}), std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(FeatureCsv, RoundTripIsExact) {
  FeatureMatrix m;
  m.values = Matrix(2, 2, {0.1, -1e-300, 1.0 / 3.0, 123456789.125});
  m.column_names = {"emb_0", "user_imp"};
  m.row_ids = {"a,b", "c"};
  std::stringstream buf;
  write_feature_csv(m, buf);
  const auto back = read_feature_csv(buf);
  EXPECT_EQ(back.values, m.values);
  EXPECT_EQ(back.column_names, m.column_names);
  EXPECT_EQ(back.row_ids, m.row_ids);
}
