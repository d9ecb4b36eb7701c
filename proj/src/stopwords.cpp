#include "rumorgraph/textprep.hpp"

namespace rumorgraph {

namespace {

// Version 1. Common English function words; bump kStopwordListVersion on edits.
constexpr const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and",
    "any", "are", "aren", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "cannot", "could", "couldn",
    "did", "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each",
    "few", "for", "from", "further", "had", "hadn", "has", "hasn", "have", "haven",
    "having", "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just", "ll", "me",
    "more", "most", "mustn", "my", "myself", "no", "nor", "not", "now", "of", "off",
    "on", "once", "only", "or", "other", "ought", "our", "ours", "ourselves", "out",
    "over", "own", "re", "same", "shan", "she", "should", "shouldn", "so", "some",
    "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "these", "they", "this", "those", "through", "to", "too", "under",
    "until", "up", "ve", "very", "was", "wasn", "we", "were", "weren", "what", "when",
    "where", "which", "while", "who", "whom", "why", "will", "with", "won", "would",
    "wouldn", "you", "your", "yours", "yourself", "yourselves", "s", "t", "d", "m",
    "o", "y", "ain", "also", "although", "among", "anyone", "anything", "else",
    "ever", "every", "however", "itself", "many", "may", "might", "much", "must",
    "neither", "never", "shall", "since", "still", "thus", "upon", "us", "via",
    "whether", "yet",
};

}  // namespace

const WordSet& default_stopwords() {
  static const WordSet words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

}  // namespace rumorgraph
