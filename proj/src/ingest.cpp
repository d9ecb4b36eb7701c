#include "rumorgraph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rumorgraph {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(RumorLabel label) {
  return label == RumorLabel::Rumor ? "rumor" : "non-rumor";
}

namespace {

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (want_dirs ? entry.is_directory() : entry.is_regular_file()) {
      if (!want_dirs && entry.path().extension() != ".json") continue;
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string id_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return {};
}

// Fields common to source tweets and reactions in the Twitter v1.1 schema.
struct RawTweet {
  std::string tweet_id;
  std::string user_id;
  std::string text;
  std::uint64_t followers = 0;
  std::uint64_t favorites = 0;
  bool verified = false;
  std::size_t defaulted = 0;
};

std::uint64_t count_field(const json& obj, std::initializer_list<const char*> keys,
                          std::size_t& defaulted) {
  for (const char* key : keys) {
    auto it = obj.find(key);
    if (it != obj.end() && it->is_number() && it->get<double>() >= 0) {
      return it->get<std::uint64_t>();
    }
  }
  ++defaulted;
  return 0;
}

// Returns false when the mandatory user id or text is missing.
bool parse_tweet(const json& doc, RawTweet& out) {
  if (!doc.is_object()) return false;
  if (auto it = doc.find("id_str"); it != doc.end()) {
    out.tweet_id = id_to_string(*it);
  } else if (auto id = doc.find("id"); id != doc.end()) {
    out.tweet_id = id_to_string(*id);
  }
  if (auto it = doc.find("full_text"); it != doc.end() && it->is_string()) {
    out.text = it->get<std::string>();
  } else if (auto t = doc.find("text"); t != doc.end() && t->is_string()) {
    out.text = t->get<std::string>();
  } else {
    return false;
  }
  auto user = doc.find("user");
  if (user == doc.end() || !user->is_object()) return false;
  if (auto it = user->find("id_str"); it != user->end()) {
    out.user_id = id_to_string(*it);
  }
  if (out.user_id.empty()) {
    if (auto it = user->find("id"); it != user->end()) out.user_id = id_to_string(*it);
  }
  if (out.user_id.empty()) return false;

  out.followers = count_field(*user, {"followers_count"}, out.defaulted);
  out.favorites = count_field(*user, {"favourites_count", "favorites_count"}, out.defaulted);
  if (auto it = user->find("verified"); it != user->end() && it->is_boolean()) {
    out.verified = it->get<bool>();
  } else {
    ++out.defaulted;
  }
  return true;
}

std::optional<json> read_json_file(const fs::path& file, LoadReport& report) {
  std::ifstream in(file);
  if (!in) {
    report.warnings.push_back("cannot open " + file.string());
    return std::nullopt;
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    report.warnings.push_back("malformed JSON in " + file.string() + ": " + e.what());
    return std::nullopt;
  }
}

std::optional<TweetRecord> load_thread(const fs::path& thread_dir, RumorLabel label,
                                       LoadReport& report) {
  fs::path source_dir = thread_dir / "source-tweets";
  if (!fs::is_directory(source_dir)) source_dir = thread_dir / "source-tweet";
  auto sources = sorted_entries(source_dir, false);
  if (sources.empty()) {
    report.warnings.push_back("no source tweet in " + thread_dir.string());
    return std::nullopt;
  }
  auto doc = read_json_file(sources.front(), report);
  if (!doc) return std::nullopt;
  RawTweet src;
  if (!parse_tweet(*doc, src)) {
    report.warnings.push_back("missing user id or text in " + sources.front().string());
    return std::nullopt;
  }

  TweetRecord rec;
  rec.thread_id = thread_dir.filename().string();
  rec.user_id = src.user_id;
  rec.text = src.text;
  rec.followers_count = src.followers;
  rec.favorites_count = src.favorites;
  rec.verified = src.verified;
  rec.label = label;
  report.defaulted_fields += src.defaulted;

  for (const auto& file : sorted_entries(thread_dir / "reactions", false)) {
    auto rdoc = read_json_file(file, report);
    if (!rdoc) continue;
    RawTweet r;
    if (!parse_tweet(*rdoc, r)) {
      report.warnings.push_back("missing user id or text in " + file.string());
      continue;
    }
    if (!src.tweet_id.empty() && r.tweet_id == src.tweet_id) continue;
    if (r.text.empty()) {
      report.warnings.push_back("empty reply text in " + file.string());
      continue;
    }
    report.defaulted_fields += r.defaulted;
    rec.replies.push_back({r.user_id, r.text, r.followers, r.favorites, r.verified});
  }
  return rec;
}

RumorLabel parse_label(const json& v, std::size_t line) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "rumor" || s == "rumour") return RumorLabel::Rumor;
    if (s == "non-rumor" || s == "non-rumour" || s == "nonrumor" || s == "non_rumor") {
      return RumorLabel::NonRumor;
    }
  } else if (v.is_number_integer()) {
    auto i = v.get<std::int64_t>();
    if (i == 1) return RumorLabel::Rumor;
    if (i == 0) return RumorLabel::NonRumor;
  }
  throw IngestError("line " + std::to_string(line) + ": rumor_label (invalid value for 'label')");
}

[[noreturn]] void schema_error(std::size_t line, const std::string& field) {
  throw IngestError("line " + std::to_string(line) + ": " + field);
}

std::string required_string(const json& obj, const char* key, std::size_t line,
                            const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) schema_error(line, field);
  return it->get<std::string>();
}

std::uint64_t optional_count(const json& obj, const char* key, std::size_t line,
                             const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return 0;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0) schema_error(line, field);
  return it->get<std::uint64_t>();
}

bool optional_bool(const json& obj, const char* key, std::size_t line, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return false;
  if (!it->is_boolean()) schema_error(line, field);
  return it->get<bool>();
}

}  // namespace

IncidentCorpus load_pheme_incident(const fs::path& dir, LoadReport* report_out) {
  if (!fs::is_directory(dir)) {
    throw IngestError("PHEME incident directory not found: " + dir.string());
  }
  LoadReport report;
  std::map<std::string, TweetRecord> by_thread;

  // Folder order fixes which copy wins for duplicated thread ids.
  const std::pair<const char*, RumorLabel> label_dirs[] = {
      {"non-rumours", RumorLabel::NonRumor},
      {"rumours", RumorLabel::Rumor},
  };
  for (const auto& [name, label] : label_dirs) {
    for (const auto& thread_dir : sorted_entries(dir / name, true)) {
      ++report.threads_seen;
      auto rec = load_thread(thread_dir, label, report);
      if (!rec) {
        ++report.threads_skipped;
        continue;
      }
      auto [it, inserted] = by_thread.try_emplace(rec->thread_id);
      if (!inserted) {
        ++report.duplicate_threads;
        report.warnings.push_back("duplicate thread id " + rec->thread_id + ", keeping " +
                                  thread_dir.string());
      }
      it->second = std::move(*rec);
    }
  }

  IncidentCorpus corpus;
  corpus.incident_name = dir.filename().string();
  if (corpus.incident_name.empty()) corpus.incident_name = dir.parent_path().filename().string();
  for (auto& [id, rec] : by_thread) corpus.records.push_back(std::move(rec));
  report.threads_loaded = corpus.records.size();
  if (corpus.records.empty()) {
    throw IngestError("no parsable threads under " + dir.string());
  }
  if (report_out) *report_out = std::move(report);
  return corpus;
}

IncidentCorpus parse_jsonl(std::istream& in, const std::string& incident_name) {
  IncidentCorpus corpus;
  corpus.incident_name = incident_name;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw IngestError("line " + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) schema_error(line, "record (expected object)");

    TweetRecord rec;
    if (auto it = obj.find("id"); it != obj.end()) rec.thread_id = id_to_string(*it);
    rec.user_id = required_string(obj, "user_id", line, "user_id");
    if (rec.user_id.empty()) schema_error(line, "user_id (empty)");
    rec.text = required_string(obj, "text", line, "text");
    rec.followers_count = optional_count(obj, "followers", line, "followers");
    rec.favorites_count = optional_count(obj, "favorites", line, "favorites");
    rec.verified = optional_bool(obj, "verified", line, "verified");
    auto label = obj.find("label");
    if (label == obj.end()) schema_error(line, "rumor_label (missing key 'label')");
    rec.label = parse_label(*label, line);

    if (auto replies = obj.find("replies"); replies != obj.end()) {
      if (!replies->is_array()) schema_error(line, "replies (expected array)");
      std::size_t k = 0;
      for (const auto& r : *replies) {
        const std::string prefix = "replies[" + std::to_string(k++) + "].";
        if (!r.is_object()) schema_error(line, prefix + "(expected object)");
        ReplyRecord reply;
        reply.user_id = required_string(r, "user_id", line, prefix + "user_id");
        if (reply.user_id.empty()) schema_error(line, prefix + "user_id (empty)");
        reply.text = required_string(r, "text", line, prefix + "text");
        reply.followers_count = optional_count(r, "followers", line, prefix + "followers");
        reply.favorites_count = optional_count(r, "favorites", line, prefix + "favorites");
        reply.verified = optional_bool(r, "verified", line, prefix + "verified");
        rec.replies.push_back(std::move(reply));
      }
    }
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

IncidentCorpus load_jsonl(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError("cannot open JSONL file: " + file.string());
  return parse_jsonl(in, file.stem().string());
}

void write_jsonl(const IncidentCorpus& corpus, std::ostream& out) {
  for (const auto& rec : corpus.records) {
    json obj = json::object();
    if (!rec.thread_id.empty()) obj["id"] = rec.thread_id;
    obj["user_id"] = rec.user_id;
    obj["text"] = rec.text;
    obj["followers"] = rec.followers_count;
    obj["favorites"] = rec.favorites_count;
    obj["verified"] = rec.verified;
    obj["label"] = to_string(rec.label);
    json replies = json::array();
    for (const auto& r : rec.replies) {
      replies.push_back({{"user_id", r.user_id},
                         {"text", r.text},
                         {"followers", r.followers_count},
                         {"favorites", r.favorites_count},
                         {"verified", r.verified}});
    }
    obj["replies"] = std::move(replies);
    out << obj.dump() << '\n';
  }
}

void write_jsonl(const IncidentCorpus& corpus, const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw IngestError("cannot write " + file.string());
  write_jsonl(corpus, out);
}

CorpusStats corpus_stats(const IncidentCorpus& corpus) {
  CorpusStats stats;
  std::set<std::string> users;
  for (const auto& rec : corpus.records) {
    (rec.label == RumorLabel::Rumor ? stats.rumor_tweets : stats.non_rumor_tweets)++;
    users.insert(rec.user_id);
    stats.replies += rec.replies.size();
    for (const auto& r : rec.replies) users.insert(r.user_id);
  }
  stats.unique_users = users.size();
  return stats;
}

}  // namespace rumorgraph
