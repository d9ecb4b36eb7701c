#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rumorgraph {

using TokenList = std::vector<std::string>;
using WordSet = std::unordered_set<std::string>;

// Porter (1980) stemmer. Words containing anything other than [a-z] are
// returned unchanged.
std::string porter_stem(std::string_view word);

// Bundled English stopword list.
const WordSet& default_stopwords();
inline constexpr int kStopwordListVersion = 1;

// One lowercase word per line; blank lines ignored.
WordSet load_word_list(const std::filesystem::path& file);

// Lowercases, drops URLs, splits on anything outside [a-z0-9_], strips the
// '#'/'@' prefixes (the word after them is kept) and drops stopwords.
TokenList clean_words(std::string_view text, const WordSet& stopwords = default_stopwords());

// clean_words followed by stemming. Each token is stemmed until it no longer
// changes and stems that land on a stopword are dropped, so the result is a
// fixed point of this function on its own space-joined output.
TokenList clean_and_tokenize(std::string_view text,
                             const WordSet& stopwords = default_stopwords());

// True when a word looks like elongated noise ("aaand", "aand"): a run of
// three identical letters anywhere, or a doubled first letter.
bool looks_noisy(std::string_view word);

// Drops noisy-looking tokens that are not in the vocabulary.
TokenList filter_noise(const TokenList& tokens, const WordSet& vocabulary);

// Full per-tweet preprocessing used by the pipeline.
class TextPreprocessor {
 public:
  TextPreprocessor() : stopwords_(default_stopwords()) {}
  TextPreprocessor(WordSet stopwords, std::optional<WordSet> vocabulary)
      : stopwords_(std::move(stopwords)), vocabulary_(std::move(vocabulary)) {}

  // Loads the vocabulary if the file exists; otherwise the noise filter is
  // disabled and `warning` (when given) receives a message.
  static TextPreprocessor with_vocabulary_file(const std::filesystem::path& file,
                                               std::string* warning = nullptr);

  // Cleaned, noise-filtered, unstemmed words.
  TokenList words(std::string_view text) const;
  // Cleaned, noise-filtered, stemmed tokens.
  TokenList tokens(std::string_view text) const;

  bool noise_filter_enabled() const { return vocabulary_.has_value(); }

 private:
  WordSet stopwords_;
  std::optional<WordSet> vocabulary_;
};

}  // namespace rumorgraph
