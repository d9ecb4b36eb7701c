#include "rumorgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

std::size_t ReplyGraph::index_of(const std::string& user_id) const {
  auto it = std::lower_bound(node_ids.begin(), node_ids.end(), user_id);
  if (it == node_ids.end() || *it != user_id) {
    throw std::out_of_range("unknown user id " + user_id);
  }
  return std::size_t(it - node_ids.begin());
}

void ReplyGraph::add_interaction(std::size_t a, std::size_t b, double weight) {
  if (a == b) return;
  if (a >= size() || b >= size()) throw std::out_of_range("edge endpoint outside graph");
  edges[{std::min(a, b), std::max(a, b)}] += weight;
}

ReplyGraph build_graph(const IncidentCorpus& corpus) {
  std::set<std::string> users;
  for (const auto& rec : corpus.records) {
    users.insert(rec.user_id);
    for (const auto& r : rec.replies) users.insert(r.user_id);
  }
  ReplyGraph g;
  g.node_ids.assign(users.begin(), users.end());
  for (const auto& rec : corpus.records) {
    const std::size_t src = g.index_of(rec.user_id);
    for (const auto& r : rec.replies) g.add_interaction(src, g.index_of(r.user_id));
  }
  return g;
}

NormalizedAdjacency normalize(const ReplyGraph& graph, bool use_weights) {
  const std::size_t n = graph.size();
  NormalizedAdjacency out;
  out.degree.assign(n, 1.0);
  for (const auto& [ij, w] : graph.edges) {
    const double v = use_weights ? w : 1.0;
    out.degree[ij.first] += v;
    out.degree[ij.second] += v;
  }
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(out.degree[i]);

  std::vector<Triplet> entries;
  entries.reserve(n + 2 * graph.edges.size());
  for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, inv_sqrt[i] * inv_sqrt[i]});
  for (const auto& [ij, w] : graph.edges) {
    const double v = (use_weights ? w : 1.0) * inv_sqrt[ij.first] * inv_sqrt[ij.second];
    entries.push_back({ij.first, ij.second, v});
    entries.push_back({ij.second, ij.first, v});
  }
  out.matrix = SparseMatrix(n, n, std::move(entries));
  return out;
}

NormalizedAdjacency identity_adjacency(std::size_t n) {
  return {SparseMatrix::identity(n), std::vector<double>(n, 1.0)};
}

std::vector<std::size_t> degree_vector(const ReplyGraph& graph) {
  std::vector<std::size_t> deg(graph.size(), 0);
  for (const auto& [ij, w] : graph.edges) {
    ++deg[ij.first];
    ++deg[ij.second];
  }
  return deg;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * double(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

double spearman_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = double(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

DegreeScoreReport degree_vs_score_report(const ReplyGraph& graph,
                                         const std::vector<UserProfile>& profiles,
                                         std::size_t top_k) {
  std::vector<double> score(graph.size(), 0.0);
  std::vector<bool> seen(graph.size(), false);
  for (const auto& p : profiles) {
    const std::size_t i = graph.index_of(p.user_id);
    score[i] = p.intensity_score;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument("no profile for node " + graph.node_ids[i]);
  }
  const auto deg = degree_vector(graph);
  DegreeScoreReport report;
  report.spearman = spearman_correlation(std::vector<double>(deg.begin(), deg.end()), score);

  std::vector<std::size_t> order(graph.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] > deg[b]; });
  for (std::size_t k = 0; k < std::min(top_k, order.size()); ++k) {
    const std::size_t i = order[k];
    report.top.push_back({graph.node_ids[i], deg[i], score[i]});
  }
  return report;
}

void write_nodes_csv(const ReplyGraph& graph, std::ostream& out) {
  out << "index,user_id\n";
  for (std::size_t i = 0; i < graph.size(); ++i) {
    out << i << ',' << csv_escape(graph.node_ids[i]) << '\n';
  }
}

void write_edges_csv(const ReplyGraph& graph, std::ostream& out) {
  out << "src,dst,weight\n";
  for (const auto& [ij, w] : graph.edges) {
    out << csv_escape(graph.node_ids[ij.first]) << ',' << csv_escape(graph.node_ids[ij.second])
        << ',' << format_double(w) << '\n';
  }
}

void write_adjacency_coo(const NormalizedAdjacency& adj, std::ostream& out) {
  out << "row,col,value\n";
  for (const auto& t : adj.matrix.triplets()) {
    out << t.row << ',' << t.col << ',' << format_double(t.value) << '\n';
  }
}

ReplyGraph read_graph_csv(std::istream& nodes, std::istream& edges) {
  ReplyGraph g;
  std::string line;
  std::getline(nodes, line);
  while (std::getline(nodes, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 2) throw std::runtime_error("nodes.csv: bad line '" + line + "'");
    if (std::stoul(f[0]) != g.node_ids.size()) throw std::runtime_error("nodes.csv: bad index");
    g.node_ids.push_back(f[1]);
  }
  if (!std::is_sorted(g.node_ids.begin(), g.node_ids.end())) {
    throw std::runtime_error("nodes.csv: user ids not in canonical sorted order");
  }
  std::getline(edges, line);
  while (std::getline(edges, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 3) throw std::runtime_error("edges.csv: bad line '" + line + "'");
    g.add_interaction(g.index_of(f[0]), g.index_of(f[1]), std::stod(f[2]));
  }
  return g;
}

}  // namespace rumorgraph
