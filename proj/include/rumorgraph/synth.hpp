#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rumorgraph/eval.hpp"
#include "rumorgraph/ingest.hpp"

namespace rumorgraph {

// Parameters of a PHEME-shaped synthetic incident.
//
// Users come from two planted pools. Rumor tweets are posted by spreader-pool
// users and non-rumor tweets by non-spreader-pool users. With probability
// `homophily` a reply comes from the initiator's own pool and near-copies the
// initiator text; otherwise it comes from the other pool with fresh tokens.
struct SynthSpec {
  std::size_t n_initiators = 500;
  std::size_t replies_min = 1;
  std::size_t replies_max = 6;
  double rumor_fraction = 0.22;
  double homophily = 0.9;
  std::size_t vocab_size = 5000;
  std::size_t tweet_length = 12;
  // Fraction of initiator tokens dropped from a near-copy reply; 0 copies verbatim.
  double copy_dropout = 0.1;
  std::size_t spreader_pool = 150;
  std::size_t non_spreader_pool = 450;
  // Users who post exactly one rumor and one non-rumor tweet (intensity 0.5).
  std::size_t boundary_users = 0;
  // Probability that an initiator tweet of each label carries a negative
  // lexicon word; the rest carry a positive one. Negative values disable
  // sentiment words.
  double rumor_negative_rate = -1.0;
  double non_rumor_negative_rate = -1.0;
  std::uint64_t seed = 42;
  std::string incident_name = "synthetic";

  // Throws std::invalid_argument naming the bad field.
  void validate() const;
};

struct SynthCorpus {
  IncidentCorpus corpus;
  std::map<std::string, int> planted_class;  // every user that appears
};

SynthCorpus generate(const SynthSpec& spec);

void write_ground_truth_csv(const SynthCorpus& synth, std::ostream& out);

// Node-level two-class datasets for comparing graph propagation against the
// identity-adjacency baseline.
struct NodeDatasetSpec {
  std::size_t n = 600;
  std::size_t feature_dim = 8;
  // Expected same-class and cross-class neighbors per node.
  double intra_degree = 9.0;
  double inter_degree = 1.0;
  // Class-mean separation along each feature, in noise standard deviations.
  double signal = 0.25;
  std::uint64_t seed = 42;
};

// Balanced classes, stochastic-block-model edges, Gaussian features whose
// class means differ by `signal` per dimension.
NodeDataset make_node_dataset(const NodeDatasetSpec& spec);

// Weak features with a strongly assortative graph.
NodeDatasetSpec homophily_dataset_spec(std::uint64_t seed);
// Strong features with a very sparse graph unrelated to the labels (about one
// node in ten has a neighbor).
NodeDatasetSpec feature_only_dataset_spec(std::uint64_t seed);

}  // namespace rumorgraph
