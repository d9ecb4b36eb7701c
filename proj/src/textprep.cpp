#include "rumorgraph/textprep.hpp"

#include <fstream>

namespace rumorgraph {

namespace {

bool is_token_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_url(std::string_view chunk) {
  return chunk.find("://") != std::string_view::npos || chunk.starts_with("www.");
}

std::string stem_to_fixed_point(std::string token) {
  while (true) {
    std::string next = porter_stem(token);
    if (next == token) return token;
    token = std::move(next);
  }
}

}  // namespace

WordSet load_word_list(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open word list " + file.string());
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    if (start < line.size()) words.insert(line.substr(start));
  }
  return words;
}

TokenList clean_words(std::string_view text, const WordSet& stopwords) {
  TokenList out;
  std::size_t i = 0;
  std::string lowered;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (start == i) continue;

    lowered.assign(text.substr(start, i - start));
    for (char& c : lowered) c = ascii_lower(c);
    if (is_url(lowered)) continue;

    std::size_t p = 0;
    while (p < lowered.size()) {
      while (p < lowered.size() && !is_token_char(lowered[p])) ++p;
      std::size_t b = p;
      while (p < lowered.size() && is_token_char(lowered[p])) ++p;
      std::size_t e = p;
      while (b < e && lowered[b] == '_') ++b;
      while (e > b && lowered[e - 1] == '_') --e;
      if (b == e) continue;
      std::string word = lowered.substr(b, e - b);
      if (!stopwords.contains(word)) out.push_back(std::move(word));
    }
  }
  return out;
}

namespace {

TokenList stem_all(TokenList words, const WordSet& stopwords) {
  TokenList out;
  out.reserve(words.size());
  for (auto& w : words) {
    std::string stem = stem_to_fixed_point(std::move(w));
    if (!stopwords.contains(stem)) out.push_back(std::move(stem));
  }
  return out;
}

}  // namespace

TokenList clean_and_tokenize(std::string_view text, const WordSet& stopwords) {
  return stem_all(clean_words(text, stopwords), stopwords);
}

bool looks_noisy(std::string_view word) {
  if (word.size() >= 2 && word[0] == word[1] && word[0] >= 'a' && word[0] <= 'z') return true;
  for (std::size_t i = 2; i < word.size(); ++i) {
    if (word[i] == word[i - 1] && word[i] == word[i - 2] && word[i] >= 'a' && word[i] <= 'z') {
      return true;
    }
  }
  return false;
}

TokenList filter_noise(const TokenList& tokens, const WordSet& vocabulary) {
  TokenList out;
  for (const auto& t : tokens) {
    if (looks_noisy(t) && !vocabulary.contains(t)) continue;
    out.push_back(t);
  }
  return out;
}

TextPreprocessor TextPreprocessor::with_vocabulary_file(const std::filesystem::path& file,
                                                        std::string* warning) {
  if (!std::filesystem::exists(file)) {
    if (warning) *warning = "vocabulary file " + file.string() + " not found; noise filter disabled";
    return TextPreprocessor(default_stopwords(), std::nullopt);
  }
  return TextPreprocessor(default_stopwords(), load_word_list(file));
}

TokenList TextPreprocessor::words(std::string_view text) const {
  TokenList w = clean_words(text, stopwords_);
  if (vocabulary_) w = filter_noise(w, *vocabulary_);
  return w;
}

TokenList TextPreprocessor::tokens(std::string_view text) const {
  return stem_all(words(text), stopwords_);
}

}  // namespace rumorgraph
