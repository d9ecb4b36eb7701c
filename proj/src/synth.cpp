#include "rumorgraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hand-rolled draws so output does not depend on the standard library's
// distribution implementations.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform() { return double(engine() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return std::size_t(engine() % n); }
  double normal() {
    const double u1 = (double(engine() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
};

std::vector<std::string> random_tokens(Rng& rng, std::size_t count, std::size_t vocab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back("w" + std::to_string(rng.below(vocab)));
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

void fill_user_meta(const std::string& user, std::uint64_t seed, std::uint64_t& followers,
                    std::uint64_t& favorites, bool& verified) {
  std::uint64_t h = seed;
  for (unsigned char c : user) h = mix(h ^ c);
  Rng rng(h);
  followers = std::uint64_t(std::exp(5.0 + 1.5 * rng.normal()));
  favorites = std::uint64_t(std::exp(4.0 + 1.5 * rng.normal()));
  verified = rng.uniform() < 0.05;
}

std::string padded(char prefix, std::size_t i, std::size_t total) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::to_string(total > 0 ? total - 1 : 0).size();
  return prefix + std::string(width - std::min(width, digits.size()), '0') + digits;
}

}  // namespace

void SynthSpec::validate() const {
  auto fraction = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string("synth: ") + name + " must be in [0,1]");
    }
  };
  fraction(rumor_fraction, "rumor_fraction");
  fraction(homophily, "homophily");
  fraction(copy_dropout, "copy_dropout");
  if (rumor_negative_rate >= 0.0) fraction(rumor_negative_rate, "rumor_negative_rate");
  if (non_rumor_negative_rate >= 0.0) fraction(non_rumor_negative_rate, "non_rumor_negative_rate");
  if (replies_min > replies_max) throw std::invalid_argument("synth: replies_min > replies_max");
  if (vocab_size == 0) throw std::invalid_argument("synth: vocab_size must be positive");
  if (tweet_length == 0) throw std::invalid_argument("synth: tweet_length must be positive");
  if (spreader_pool == 0 || non_spreader_pool == 0) {
    throw std::invalid_argument("synth: user pools must be non-empty");
  }
}

SynthCorpus generate(const SynthSpec& spec) {
  spec.validate();
  SynthCorpus out;
  out.corpus.incident_name = spec.incident_name;

  const std::size_t n = spec.n_initiators;
  const auto n_rumor = std::size_t(std::llround(spec.rumor_fraction * double(n)));
  std::vector<bool> is_rumor(n, false);
  {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix(spec.seed));
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t i = 0; i < n_rumor; ++i) is_rumor[order[i]] = true;
  }

  const std::size_t pool_size[2] = {spec.non_spreader_pool, spec.spreader_pool};
  auto user_name = [&](int pool, std::size_t k) {
    return padded(pool == 1 ? 's' : 'n', k, pool_size[pool]);
  };
  auto record_user = [&](const std::string& id, int cls) { out.planted_class.emplace(id, cls); };
  auto with_meta = [&](auto& rec) {
    fill_user_meta(rec.user_id, spec.seed, rec.followers_count, rec.favorites_count, rec.verified);
  };

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(mix(spec.seed ^ mix(i + 1)));
    const int pool = is_rumor[i] ? 1 : 0;
    TweetRecord rec;
    rec.thread_id = padded('t', i, n);
    rec.label = is_rumor[i] ? RumorLabel::Rumor : RumorLabel::NonRumor;
    const std::size_t initiator = rng.below(pool_size[pool]);
    rec.user_id = user_name(pool, initiator);
    with_meta(rec);
    record_user(rec.user_id, pool);

    auto tokens = random_tokens(rng, spec.tweet_length, spec.vocab_size);
    const double neg_rate = is_rumor[i] ? spec.rumor_negative_rate : spec.non_rumor_negative_rate;
    if (neg_rate >= 0.0) tokens.insert(tokens.begin(), rng.uniform() < neg_rate ? "bad" : "good");
    rec.text = join(tokens);

    const std::size_t n_replies =
        spec.replies_min + rng.below(spec.replies_max - spec.replies_min + 1);
    for (std::size_t r = 0; r < n_replies; ++r) {
      ReplyRecord reply;
      const bool follows = rng.uniform() < spec.homophily;
      const int reply_pool = follows ? pool : 1 - pool;
      std::size_t who = rng.below(pool_size[reply_pool]);
      if (reply_pool == pool && who == initiator && pool_size[pool] > 1) {
        who = (who + 1 + rng.below(pool_size[pool] - 1)) % pool_size[pool];
      }
      reply.user_id = user_name(reply_pool, who);
      if (follows) {
        std::vector<std::string> copy;
        for (const auto& t : tokens) {
          if (spec.copy_dropout == 0.0 || rng.uniform() >= spec.copy_dropout) copy.push_back(t);
        }
        if (copy.empty()) copy.push_back(tokens.front());
        reply.text = join(copy);
      } else {
        reply.text = join(random_tokens(rng, spec.tweet_length, spec.vocab_size));
      }
      with_meta(reply);
      record_user(reply.user_id, reply_pool);
      rec.replies.push_back(std::move(reply));
    }
    out.corpus.records.push_back(std::move(rec));
  }

  for (std::size_t b = 0; b < spec.boundary_users; ++b) {
    Rng rng(mix(spec.seed ^ 0xb0b0ULL ^ mix(b + 1)));
    for (RumorLabel label : {RumorLabel::Rumor, RumorLabel::NonRumor}) {
      TweetRecord rec;
      rec.user_id = padded('b', b, spec.boundary_users);
      rec.thread_id = rec.user_id + (label == RumorLabel::Rumor ? "r" : "n");
      rec.label = label;
      rec.text = join(random_tokens(rng, spec.tweet_length, spec.vocab_size));
      with_meta(rec);
      out.corpus.records.push_back(std::move(rec));
    }
    // score 0.5 sits on the class-1 side of the cutoff
    record_user(padded('b', b, spec.boundary_users), 1);
  }
  return out;
}

void write_ground_truth_csv(const SynthCorpus& synth, std::ostream& out) {
  out << "user_id,planted_class\n";
  for (const auto& [user, cls] : synth.planted_class) out << csv_escape(user) << ',' << cls << '\n';
}

NodeDataset make_node_dataset(const NodeDatasetSpec& spec) {
  if (spec.n < 4) throw std::invalid_argument("node dataset needs at least 4 nodes");
  NodeDataset d;
  Rng rng(mix(spec.seed ^ 0x6e6f6465ULL));
  const std::size_t n = spec.n;
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.labels[i] = int(i % 2);
  for (std::size_t i = 0; i < n; ++i) d.graph.node_ids.push_back(padded('v', i, n));

  const double half = double(n) / 2.0;
  const double p_in = std::min(1.0, spec.intra_degree / (half - 1.0));
  const double p_out = std::min(1.0, spec.inter_degree / half);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = d.labels[i] == d.labels[j] ? p_in : p_out;
      if (rng.uniform() < p) d.graph.add_interaction(i, j);
    }
  }

  d.features.values = Matrix(n, spec.feature_dim);
  for (std::size_t c = 0; c < spec.feature_dim; ++c) {
    d.features.column_names.push_back("f" + std::to_string(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    d.features.row_ids.push_back(d.graph.node_ids[i]);
    const double shift = (d.labels[i] == 1 ? 0.5 : -0.5) * spec.signal;
    for (std::size_t c = 0; c < spec.feature_dim; ++c) {
      d.features.values(i, c) = shift + rng.normal();
    }
  }
  return d;
}

NodeDatasetSpec homophily_dataset_spec(std::uint64_t seed) {
  NodeDatasetSpec s;
  s.seed = seed;
  return s;
}

NodeDatasetSpec feature_only_dataset_spec(std::uint64_t seed) {
  NodeDatasetSpec s;
  s.intra_degree = 0.05;
  s.inter_degree = 0.05;
  s.signal = 1.5;
  s.seed = seed;
  return s;
}

}  // namespace rumorgraph
