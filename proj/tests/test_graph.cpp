#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "rumorgraph/graph.hpp"

using namespace rumorgraph;

namespace {

TweetRecord rec(const std::string& user, std::vector<std::string> repliers) {
  TweetRecord r;
  r.user_id = user;
  for (auto& u : repliers) r.replies.push_back({u, "x"});
  return r;
}

}  // namespace

TEST(BuildGraph, WeightedStar) {
  IncidentCorpus c;
  c.records = {rec("I", {"R1", "R2", "R1"})};
  const auto g = build_graph(c);
  ASSERT_EQ(g.node_ids, (std::vector<std::string>{"I", "R1", "R2"}));
  const std::map<std::pair<std::size_t, std::size_t>, double> want = {{{0, 1}, 2.0}, {{0, 2}, 1.0}};
  EXPECT_EQ(g.edges, want);
}

TEST(BuildGraph, SelfReplyAddsNoEdge) {
  IncidentCorpus c;
  c.records = {rec("I", {"I"})};
  const auto g = build_graph(c);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(BuildGraph, IsolatedInitiatorKept) {
  IncidentCorpus c;
  c.records = {rec("lonely", {}), rec("a", {"b"})};
  const auto g = build_graph(c);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(degree_vector(g)[g.index_of("lonely")], 0u);
}

TEST(BuildGraph, ReverseReplyAccumulatesOnSamePair) {
  IncidentCorpus c;
  c.records = {rec("a", {"b"}), rec("b", {"a"})};
  const auto g = build_graph(c);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges.begin()->second, 2.0);
}

TEST(BuildGraph, IndependentOfRecordOrder) {
  std::mt19937 rng(11);
  IncidentCorpus c;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> reps;
    for (int k = 0, n = int(rng() % 4); k < n; ++k) reps.push_back("u" + std::to_string(rng() % 20));
    c.records.push_back(rec("u" + std::to_string(rng() % 20), reps));
  }
  const auto g1 = build_graph(c);
  std::shuffle(c.records.begin(), c.records.end(), rng);
  const auto g2 = build_graph(c);
  EXPECT_EQ(g1.node_ids, g2.node_ids);
  EXPECT_EQ(g1.edges, g2.edges);
}

TEST(Normalize, TwoNodesOneEdge) {
  ReplyGraph g;
  g.node_ids = {"a", "b"};
  g.add_interaction(0, 1);
  const auto a = normalize(g).matrix.to_dense();
  for (double v : a.data()) EXPECT_NEAR(v, 0.5, 1e-15);
}

TEST(Normalize, IsolatedNode) {
  ReplyGraph g;
  g.node_ids = {"a"};
  EXPECT_EQ(normalize(g).matrix.to_dense(), Matrix(1, 1, 1.0));
}

TEST(Normalize, WeightedEdge) {
  ReplyGraph g;
  g.node_ids = {"a", "b"};
  g.add_interaction(0, 1, 3.0);
  const auto a = normalize(g, true).matrix.to_dense();
  EXPECT_NEAR(a(0, 1), 0.75, 1e-15);
  EXPECT_NEAR(a(1, 0), 0.75, 1e-15);
  EXPECT_NEAR(a(0, 0), 0.25, 1e-15);
  const auto b = normalize(g, false).matrix.to_dense();
  EXPECT_NEAR(b(0, 1), 0.5, 1e-15);
}

TEST(Normalize, MatchesDenseFormulaOnRandomGraphs) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {2u, 7u, 40u, 200u}) {
    const auto g = oracle::random_graph(n, 0.05, rng, true);
    const auto got = normalize(g).matrix.to_dense();
    const auto want = oracle::normalized_adjacency(g);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(got(i, i), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_NEAR(got(i, j), want(i, j), 1e-12) << n << ' ' << i << ' ' << j;
        ASSERT_NEAR(got(i, j), got(j, i), 1e-12);
        ASSERT_GE(got(i, j), 0.0);
      }
    }
  }
}

TEST(Normalize, SpectralRadiusAtMostOne) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    const auto g = oracle::random_graph(30, 0.2, rng, t % 2 == 0);
    const double lambda = oracle::largest_eigenvalue(normalize(g).matrix);
    EXPECT_LE(lambda, 1.0 + 1e-9);
    EXPECT_GT(lambda, 0.99);
  }
}

TEST(Normalize, IdentityAdjacency) {
  EXPECT_EQ(identity_adjacency(4).matrix.to_dense(), Matrix::identity(4));
}

TEST(DegreeVector, StarAndBruteForce) {
  IncidentCorpus c;
  c.records = {rec("I", {"R1", "R2", "R3", "R1"})};
  const auto g = build_graph(c);
  EXPECT_EQ(degree_vector(g), (std::vector<std::size_t>{3, 1, 1, 1}));

  std::mt19937_64 rng(6);
  const auto r = oracle::random_graph(50, 0.1, rng, true);
  std::vector<std::size_t> want(50, 0);
  for (const auto& [ij, w] : r.edges) {
    ++want[ij.first];
    ++want[ij.second];
  }
  EXPECT_EQ(degree_vector(r), want);
}

TEST(Spearman, ProportionalIsOne) {
  EXPECT_NEAR(spearman_correlation({1, 2, 3, 5, 8}, {0.1, 0.2, 0.3, 0.5, 0.8}), 1.0, 1e-12);
  EXPECT_NEAR(spearman_correlation({1, 2, 3}, {3, 2, 1}), -1.0, 1e-12);
}

TEST(Spearman, ConstantIsZero) {
  EXPECT_EQ(spearman_correlation({1, 2, 3}, {0.4, 0.4, 0.4}), 0.0);
}

TEST(Spearman, TiesUseAverageRanks) {
  // ranks x: 1, 2.5, 2.5, 4; y: 1, 2, 3, 4
  const double mx = 2.5;
  const std::vector<double> rx = {1, 2.5, 2.5, 4}, ry = {1, 2, 3, 4};
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - mx);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - mx) * (ry[i] - mx);
  }
  EXPECT_NEAR(spearman_correlation({1, 2, 2, 3}, {1, 2, 3, 4}), sxy / std::sqrt(sxx * syy), 1e-12);
}

TEST(Spearman, PermutationNullIsNearZero) {
  std::mt19937 rng(12);
  double total = 0.0;
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x(200), y(200);
    std::iota(x.begin(), x.end(), 0.0);
    std::iota(y.begin(), y.end(), 0.0);
    std::shuffle(y.begin(), y.end(), rng);
    total += std::abs(spearman_correlation(x, y));
  }
  EXPECT_LT(total / 30, 0.2);
}

TEST(DegreeReport, ScoresProportionalToDegree) {
  IncidentCorpus c;
  c.records = {rec("hub", {"a", "b", "c", "d"}), rec("a", {"b"})};
  const auto g = build_graph(c);
  const auto deg = degree_vector(g);
  std::vector<UserProfile> profiles;
  for (std::size_t i = 0; i < g.size(); ++i) {
    UserProfile p;
    p.user_id = g.node_ids[i];
    p.intensity_score = 0.1 * double(deg[i]);
    profiles.push_back(p);
  }
  const auto report = degree_vs_score_report(g, profiles, 2);
  EXPECT_NEAR(report.spearman, 1.0, 1e-12);
  ASSERT_EQ(report.top.size(), 2u);
  EXPECT_EQ(report.top[0].user_id, "hub");
  EXPECT_EQ(report.top[0].degree, 4u);
}

TEST(GraphCsv, RoundTrip) {
  std::mt19937_64 rng(3);
  auto g = oracle::random_graph(25, 0.15, rng, true);
  g.node_ids[0] = "needs,quoting";
  std::stringstream nodes, edges;
  write_nodes_csv(g, nodes);
  write_edges_csv(g, edges);
  const auto back = read_graph_csv(nodes, edges);
  EXPECT_EQ(back.node_ids, g.node_ids);
  EXPECT_EQ(back.edges, g.edges);
}

TEST(AdjacencyCoo, OneLinePerNonzero) {
  ReplyGraph g;
  g.node_ids = {"a", "b", "c"};
  g.add_interaction(0, 1);
  std::ostringstream out;
  write_adjacency_coo(normalize(g), out);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 5);
}
