#include <gtest/gtest.h>

#include <fstream>

#include "rumorgraph/textprep.hpp"
#include "test_util.hpp"

using namespace rumorgraph;

TEST(CleanAndTokenize, EmptyInput) { EXPECT_TRUE(clean_and_tokenize("").empty()); }

TEST(CleanAndTokenize, UrlsAndPunctuationRemovedThenStemmed) {
  EXPECT_EQ(clean_and_tokenize("Running http://t.co/x RUNNING!!"), (TokenList{"run", "run"}));
}

TEST(CleanAndTokenize, AllStopwords) { EXPECT_TRUE(clean_and_tokenize("the and a").empty()); }

TEST(CleanAndTokenize, HashtagsAndMentionsKeepTheWord) {
  EXPECT_EQ(clean_and_tokenize("#Paris @police"), (TokenList{"pari", "polic"}));
}

TEST(CleanAndTokenize, WwwUrlsDropped) {
  EXPECT_EQ(clean_and_tokenize("see www.example.com now"), (TokenList{"see"}));
}

TEST(CleanAndTokenize, TokensStayInAllowedAlphabet) {
  const auto tokens = clean_and_tokenize("Caf\xc3\xa9 <b>bold</b> x\ty\n12:30 snake_case __x__");
  for (const auto& t : tokens) {
    EXPECT_FALSE(t.empty());
    for (char c : t) {
      EXPECT_TRUE((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') << t;
    }
    EXPECT_FALSE(default_stopwords().contains(t)) << t;
  }
}

TEST(CleanAndTokenize, IdempotentOnJoinedOutput) {
  const char* inputs[] = {
      "Police confirm the gunmen have been identified http://t.co/abc #CharlieHebdo",
      "Generalizations about relational conditional hopefulness!!",
      "feed feeding fed agreed agreement oscillators",
      "happy happiness generously universal universities",
      "@user I am NOT sure this is true... sources say otherwise",
  };
  for (const char* text : inputs) {
    const auto once = clean_and_tokenize(text);
    std::string joined;
    for (const auto& t : once) joined += t + " ";
    EXPECT_EQ(clean_and_tokenize(joined), once) << text;
  }
}

TEST(PorterStem, ReferenceExamples) {
  EXPECT_EQ(porter_stem("caresses"), "caress");
  EXPECT_EQ(porter_stem("ponies"), "poni");
  EXPECT_EQ(porter_stem("sky"), "sky");
  EXPECT_EQ(porter_stem("running"), "run");
  EXPECT_EQ(porter_stem("relational"), "relat");
  EXPECT_EQ(porter_stem("generalizations"), "gener");
}

TEST(PorterStem, CanonicalVocabulary) {
  std::ifstream voc(std::string(RUMORGRAPH_TEST_DATA) + "/porter_voc.txt");
  std::ifstream out(std::string(RUMORGRAPH_TEST_DATA) + "/porter_output.txt");
  ASSERT_TRUE(voc && out);
  std::string word, expected;
  std::size_t n = 0, mismatches = 0;
  while (std::getline(voc, word) && std::getline(out, expected)) {
    ++n;
    if (porter_stem(word) != expected) {
      if (++mismatches <= 10) ADD_FAILURE() << word << " -> " << porter_stem(word) << ", want " << expected;
    }
  }
  EXPECT_GT(n, 23000u);
  EXPECT_EQ(mismatches, 0u);
}

TEST(FilterNoise, RepeatedLettersDropped) {
  const WordSet vocab{"good", "and"};
  EXPECT_EQ(filter_noise({"aaand", "good"}, vocab), (TokenList{"good"}));
  EXPECT_EQ(filter_noise({"aand"}, vocab), TokenList{});
  EXPECT_EQ(filter_noise({}, vocab), TokenList{});
}

TEST(FilterNoise, VocabularyWordsSurvive) {
  const WordSet vocab{"llama", "zzz"};
  EXPECT_EQ(filter_noise({"llama", "zzz", "aaaaand", "coool"}, vocab), (TokenList{"llama", "zzz"}));
}

TEST(FilterNoise, OrdinaryDoubleLettersAreNotNoise) {
  EXPECT_FALSE(looks_noisy("good"));
  EXPECT_FALSE(looks_noisy("committee"));
  EXPECT_TRUE(looks_noisy("aaand"));
  EXPECT_TRUE(looks_noisy("aand"));
  EXPECT_TRUE(looks_noisy("sooo"));
  EXPECT_FALSE(looks_noisy("1112"));
}

TEST(TextPreprocessor, MissingVocabularyDisablesFilterWithWarning) {
  std::string warning;
  const auto text = TextPreprocessor::with_vocabulary_file("/nonexistent/vocab.txt", &warning);
  EXPECT_FALSE(text.noise_filter_enabled());
  EXPECT_FALSE(warning.empty());
  EXPECT_EQ(text.words("aaand good"), (TokenList{"aaand", "good"}));
}

TEST(TextPreprocessor, BundledVocabularyFiltersNoise) {
  std::string warning;
  const auto text = TextPreprocessor::with_vocabulary_file(
      std::string(RUMORGRAPH_DATA_DIR) + "/english_vocab.txt", &warning);
  ASSERT_TRUE(text.noise_filter_enabled()) << warning;
  EXPECT_EQ(text.words("Aaand the police arrived"), (TokenList{"police", "arrived"}));
  EXPECT_EQ(text.tokens("Aaand the police arrived"), (TokenList{"polic", "arriv"}));
}

TEST(WordList, OneWordPerLine) {
  TempDir tmp;
  write_file(tmp / "w.txt", "alpha\n beta \n\ngamma\r\n");
  EXPECT_EQ(load_word_list(tmp / "w.txt"), (WordSet{"alpha", "beta", "gamma"}));
}

TEST(Stopwords, BundledListIsVersioned) {
  EXPECT_GE(default_stopwords().size(), 150u);
  EXPECT_TRUE(default_stopwords().contains("the"));
  EXPECT_GE(kStopwordListVersion, 1);
}
