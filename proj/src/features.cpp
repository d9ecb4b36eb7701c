#include "rumorgraph/features.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rumorgraph/csv.hpp"

namespace rumorgraph {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double unit_open(std::uint64_t bits) {
  // (0, 1): never returns 0 so the logarithm below stays finite.
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t word_hash(const std::string& word) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : word) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

EmbeddingProvider EmbeddingProvider::hash_random(std::size_t dimension, std::uint64_t seed) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
  EmbeddingProvider p;
  p.mode_ = Mode::HashRandom;
  p.dimension_ = dimension;
  p.seed_ = seed;
  return p;
}

EmbeddingProvider EmbeddingProvider::from_vectors(
    std::unordered_map<std::string, std::vector<double>> v) {
  EmbeddingProvider p;
  p.mode_ = Mode::FileBacked;
  p.dimension_ = 0;
  for (const auto& [w, vec] : v) {
    if (p.dimension_ == 0) p.dimension_ = vec.size();
    if (vec.size() != p.dimension_ || vec.empty()) {
      throw std::invalid_argument("inconsistent embedding dimension for '" + w + "'");
    }
  }
  if (p.dimension_ == 0) throw std::invalid_argument("empty embedding table");
  p.vectors_ = std::move(v);
  return p;
}

EmbeddingProvider EmbeddingProvider::from_stream(std::istream& in) {
  std::unordered_map<std::string, std::vector<double>> table;
  std::size_t dim = 0;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::istringstream ss(line);
    std::vector<std::string> parts;
    std::string tok;
    while (ss >> tok) parts.push_back(tok);
    if (parts.empty()) continue;
    if (n == 1 && parts.size() == 2) {
      // "<count> <dim>" header
      try {
        std::size_t pos = 0;
        std::stoul(parts[0], &pos);
        dim = std::stoul(parts[1]);
        continue;
      } catch (const std::exception&) {
      }
    }
    if (dim == 0) dim = parts.size() - 1;
    if (parts.size() != dim + 1) {
      throw std::runtime_error("embedding line " + std::to_string(n) + ": expected " +
                               std::to_string(dim) + " values, got " +
                               std::to_string(parts.size() - 1));
    }
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = std::stod(parts[i + 1]);
    table[parts[0]] = std::move(v);
  }
  return from_vectors(std::move(table));
}

EmbeddingProvider EmbeddingProvider::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open embedding file " + file.string());
  return from_stream(in);
}

bool EmbeddingProvider::lookup(const std::string& word, std::span<double> out) const {
  if (out.size() != dimension_) throw ShapeError("embedding buffer has wrong dimension");
  if (mode_ == Mode::FileBacked) {
    auto it = vectors_.find(word);
    if (it == vectors_.end()) return false;
    std::copy(it->second.begin(), it->second.end(), out.begin());
    return true;
  }
  // Box-Muller over a splitmix64 stream keyed by (seed, word).
  std::uint64_t state = seed_ ^ word_hash(word);
  for (std::size_t i = 0; i < dimension_; i += 2) {
    const double u1 = unit_open(splitmix64(state));
    const double u2 = unit_open(splitmix64(state));
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[i] = r * std::cos(2.0 * std::numbers::pi * u2);
    if (i + 1 < dimension_) out[i + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
  }
  return true;
}

std::vector<double> embed_text(const TokenList& tokens, const EmbeddingProvider& provider) {
  std::vector<double> sum(provider.dimension(), 0.0);
  std::vector<double> buf(provider.dimension());
  std::size_t known = 0;
  for (const auto& t : tokens) {
    if (!provider.lookup(t, buf)) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += buf[i];
    ++known;
  }
  if (known > 0) {
    for (double& v : sum) v /= double(known);
  }
  return sum;
}

std::vector<double> embed_user_tweets(const std::vector<TokenList>& tweets,
                                      const EmbeddingProvider& provider) {
  std::vector<double> sum(provider.dimension(), 0.0);
  if (tweets.empty()) return sum;
  for (const auto& t : tweets) {
    const auto e = embed_text(t, provider);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += e[i];
  }
  for (double& v : sum) v /= double(tweets.size());
  return sum;
}

std::map<std::string, std::uint64_t> replies_received(const IncidentCorpus& corpus) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& rec : corpus.records) {
    counts.try_emplace(rec.user_id, 0);
    for (const auto& r : rec.replies) {
      counts.try_emplace(r.user_id, 0);
      if (r.user_id != rec.user_id) ++counts[rec.user_id];
    }
  }
  return counts;
}

std::map<std::string, double> user_importance(const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [u, c] : counts) total += c;
  std::map<std::string, double> out;
  for (const auto& [u, c] : counts) out[u] = total == 0 ? 0.0 : double(c) / double(total);
  return out;
}

FeatureMatrix assemble(const std::vector<UserProfile>& profiles,
                       const std::map<std::string, std::vector<double>>& embeddings,
                       const std::map<std::string, double>& user_imp) {
  std::string missing;
  std::size_t dim = 0;
  bool dim_set = false;
  for (const auto& p : profiles) {
    auto e = embeddings.find(p.user_id);
    if (e == embeddings.end()) {
      missing += " " + p.user_id + "(embedding)";
    } else if (!dim_set) {
      dim = e->second.size();
      dim_set = true;
    } else if (e->second.size() != dim) {
      throw FeatureError("embedding for " + p.user_id + " has dimension " +
                         std::to_string(e->second.size()) + ", expected " + std::to_string(dim));
    }
    if (!user_imp.contains(p.user_id)) missing += " " + p.user_id + "(user_imp)";
  }
  if (!missing.empty()) throw FeatureError("missing features for users:" + missing);

  FeatureMatrix m;
  m.values = Matrix(profiles.size(), dim + kUserFeatureCount);
  for (std::size_t i = 0; i < dim; ++i) m.column_names.push_back("emb_" + std::to_string(i));
  for (const char* c : {"followers", "favorites", "verified", "user_imp"}) {
    m.column_names.emplace_back(c);
  }
  for (std::size_t r = 0; r < profiles.size(); ++r) {
    const auto& p = profiles[r];
    m.row_ids.push_back(p.user_id);
    auto row = m.values.row(r);
    const auto& e = embeddings.at(p.user_id);
    std::copy(e.begin(), e.end(), row.begin());
    row[dim] = double(p.followers_count);
    row[dim + 1] = double(p.favorites_count);
    row[dim + 2] = p.verified ? 1.0 : 0.0;
    row[dim + 3] = user_imp.at(p.user_id);
  }
  return m;
}

FeatureMatrix standardize(const FeatureMatrix& matrix, std::span<const std::size_t> fit_rows) {
  if (fit_rows.empty()) throw std::invalid_argument("standardize: no rows to fit on");
  FeatureMatrix out = matrix;
  const std::size_t cols = matrix.cols();
  const double n = double(fit_rows.size());
  for (std::size_t c = 0; c < cols; ++c) {
    double mean = 0.0;
    for (auto r : fit_rows) mean += matrix.values(r, c);
    mean /= n;
    double var = 0.0;
    for (auto r : fit_rows) {
      const double d = matrix.values(r, c) - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / n);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      out.values(r, c) = sd > 0.0 ? (matrix.values(r, c) - mean) / sd : 0.0;
    }
  }
  return out;
}

void write_feature_csv(const FeatureMatrix& m, std::ostream& out) {
  out << "user_id";
  for (const auto& c : m.column_names) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv_escape(m.row_ids[r]);
    for (double v : m.values.row(r)) out << ',' << format_double(v);
    out << '\n';
  }
}

FeatureMatrix read_feature_csv(std::istream& in) {
  FeatureMatrix m;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("features.csv: empty file");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "user_id") {
    throw std::runtime_error("features.csv: header must start with user_id");
  }
  m.column_names.assign(header.begin() + 1, header.end());
  std::vector<double> data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != header.size()) {
      throw std::runtime_error("features.csv: row " + std::to_string(m.row_ids.size() + 1) +
                               " has " + std::to_string(f.size()) + " fields");
    }
    m.row_ids.push_back(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) data.push_back(std::stod(f[i]));
  }
  m.values = Matrix(m.row_ids.size(), m.column_names.size(), std::move(data));
  return m;
}

}  // namespace rumorgraph
