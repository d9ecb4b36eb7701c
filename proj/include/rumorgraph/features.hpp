#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rumorgraph/ingest.hpp"
#include "rumorgraph/linalg.hpp"
#include "rumorgraph/textprep.hpp"
#include "rumorgraph/weaklabel.hpp"

namespace rumorgraph {

inline constexpr std::size_t kDefaultEmbeddingDim = 300;
inline constexpr std::size_t kUserFeatureCount = 4;  // followers, favorites, verified, user_imp

// Word vectors either loaded from a word2vec text file or derived from a
// seeded hash of the word (every word known, unit-variance components).
class EmbeddingProvider {
 public:
  enum class Mode { FileBacked, HashRandom };

  static EmbeddingProvider hash_random(std::size_t dimension = kDefaultEmbeddingDim,
                                       std::uint64_t seed = 42);
  // "<word> v1 ... vD" per line, with an optional "<count> <dim>" header.
  static EmbeddingProvider from_file(const std::filesystem::path& file);
  static EmbeddingProvider from_stream(std::istream& in);
  static EmbeddingProvider from_vectors(std::unordered_map<std::string, std::vector<double>> v);

  Mode mode() const { return mode_; }
  std::size_t dimension() const { return dimension_; }

  // Writes the vector into `out` (size dimension()) and returns true when the
  // word is known.
  bool lookup(const std::string& word, std::span<double> out) const;

 private:
  Mode mode_ = Mode::HashRandom;
  std::size_t dimension_ = kDefaultEmbeddingDim;
  std::uint64_t seed_ = 42;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Mean of the vectors of known words; zero vector when none is known.
std::vector<double> embed_text(const TokenList& tokens, const EmbeddingProvider& provider);

// Mean of the per-tweet embeddings.
std::vector<double> embed_user_tweets(const std::vector<TokenList>& tweets,
                                      const EmbeddingProvider& provider);

// Replies each user received from other users.
std::map<std::string, std::uint64_t> replies_received(const IncidentCorpus& corpus);

// Share of all replies received by each user; all zeros when there are none.
std::map<std::string, double> user_importance(const std::map<std::string, std::uint64_t>& counts);

struct FeatureMatrix {
  Matrix values;
  std::vector<std::string> column_names;
  std::vector<std::string> row_ids;

  std::size_t rows() const { return values.rows(); }
  std::size_t cols() const { return values.cols(); }
};

class FeatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Columns: [emb_0 .. emb_{D-1}, followers, favorites, verified, user_imp], rows
// in profile order. Throws FeatureError naming users missing from either map.
FeatureMatrix assemble(const std::vector<UserProfile>& profiles,
                       const std::map<std::string, std::vector<double>>& embeddings,
                       const std::map<std::string, double>& user_imp);

// Per-column z-score using mean and population standard deviation over
// `fit_rows`, applied to every row. Zero-variance columns become 0.
FeatureMatrix standardize(const FeatureMatrix& matrix, std::span<const std::size_t> fit_rows);

void write_feature_csv(const FeatureMatrix& m, std::ostream& out);
FeatureMatrix read_feature_csv(std::istream& in);

}  // namespace rumorgraph
