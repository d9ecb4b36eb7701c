#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rumorgraph/ingest.hpp"
#include "rumorgraph/linalg.hpp"
#include "rumorgraph/weaklabel.hpp"

namespace rumorgraph {

// Weighted undirected user-user reply graph. Nodes are sorted by user id and
// that order is shared with the feature matrix rows. Each unordered pair is
// stored once as (i, j) with i < j; there are no self edges.
struct ReplyGraph {
  std::vector<std::string> node_ids;
  std::map<std::pair<std::size_t, std::size_t>, double> edges;

  std::size_t size() const { return node_ids.size(); }
  std::size_t index_of(const std::string& user_id) const;  // throws std::out_of_range
  void add_interaction(std::size_t a, std::size_t b, double weight = 1.0);
};

// One unit of weight per (initiator, replier) reply; self replies add nothing.
ReplyGraph build_graph(const IncidentCorpus& corpus);

// D^{-1/2} (A + I) D^{-1/2}, with D the row sums of A + I.
struct NormalizedAdjacency {
  SparseMatrix matrix;
  std::vector<double> degree;  // row sums of A + I

  std::size_t size() const { return matrix.rows(); }
};

NormalizedAdjacency normalize(const ReplyGraph& graph, bool use_weights = true);

// Identity propagation, used for the structure-free ablation.
NormalizedAdjacency identity_adjacency(std::size_t n);

// Unweighted neighbor counts, aligned with graph.node_ids.
std::vector<std::size_t> degree_vector(const ReplyGraph& graph);

struct DegreeScoreEntry {
  std::string user_id;
  std::size_t degree = 0;
  double score = 0.0;
};

struct DegreeScoreReport {
  double spearman = 0.0;
  std::vector<DegreeScoreEntry> top;  // highest degree first
};

// Spearman rank correlation (average ranks for ties; 0 when either side is
// constant) plus the top-k users by degree.
double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y);
DegreeScoreReport degree_vs_score_report(const ReplyGraph& graph,
                                         const std::vector<UserProfile>& profiles,
                                         std::size_t top_k = 20);

void write_nodes_csv(const ReplyGraph& graph, std::ostream& out);
void write_edges_csv(const ReplyGraph& graph, std::ostream& out);
void write_adjacency_coo(const NormalizedAdjacency& adj, std::ostream& out);
ReplyGraph read_graph_csv(std::istream& nodes, std::istream& edges);

}  // namespace rumorgraph
