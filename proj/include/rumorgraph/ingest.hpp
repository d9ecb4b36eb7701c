#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rumorgraph {

enum class RumorLabel { Rumor, NonRumor };

inline RumorLabel opposite(RumorLabel label) {
  return label == RumorLabel::Rumor ? RumorLabel::NonRumor : RumorLabel::Rumor;
}

const char* to_string(RumorLabel label);

struct ReplyRecord {
  std::string user_id;
  std::string text;
  std::uint64_t followers_count = 0;
  std::uint64_t favorites_count = 0;
  bool verified = false;

  bool operator==(const ReplyRecord&) const = default;
};

// One initiator tweet together with the replies it received.
struct TweetRecord {
  std::string thread_id;
  std::string user_id;
  std::string text;
  std::uint64_t followers_count = 0;
  std::uint64_t favorites_count = 0;
  bool verified = false;
  std::vector<ReplyRecord> replies;
  RumorLabel label = RumorLabel::NonRumor;

  bool operator==(const TweetRecord&) const = default;
};

struct IncidentCorpus {
  std::string incident_name;
  std::vector<TweetRecord> records;

  bool operator==(const IncidentCorpus&) const = default;
};

// Raised for unrecoverable input problems (missing path, nothing parsable,
// schema violations in the fixture format).
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadReport {
  std::size_t threads_seen = 0;
  std::size_t threads_loaded = 0;
  std::size_t threads_skipped = 0;
  std::size_t duplicate_threads = 0;
  std::size_t defaulted_fields = 0;
  std::vector<std::string> warnings;
};

struct CorpusStats {
  std::size_t rumor_tweets = 0;
  std::size_t non_rumor_tweets = 0;
  std::size_t unique_users = 0;
  std::size_t replies = 0;

  bool operator==(const CorpusStats&) const = default;
};

// Loads one PHEME incident directory:
//   <incident>/{rumours,non-rumours}/<thread>/source-tweet[s]/*.json
//   <incident>/{rumours,non-rumours}/<thread>/reactions/*.json
// The label is taken from the parent folder. Records are ordered by thread id.
IncidentCorpus load_pheme_incident(const std::filesystem::path& dir,
                                   LoadReport* report = nullptr);

// Newline-delimited fixture format, one initiator tweet per line.
IncidentCorpus load_jsonl(const std::filesystem::path& file);
IncidentCorpus parse_jsonl(std::istream& in, const std::string& incident_name);

void write_jsonl(const IncidentCorpus& corpus, std::ostream& out);
void write_jsonl(const IncidentCorpus& corpus, const std::filesystem::path& file);

CorpusStats corpus_stats(const IncidentCorpus& corpus);

}  // namespace rumorgraph
