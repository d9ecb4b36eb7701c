#include "rumorgraph/pipeline.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "rumorgraph/csv.hpp"
#include "rumorgraph/features.hpp"
#include "rumorgraph/graph.hpp"
#include "rumorgraph/ingest.hpp"
#include "rumorgraph/report.hpp"
#include "rumorgraph/sentiment.hpp"
#include "rumorgraph/textprep.hpp"

namespace fs = std::filesystem;

namespace rumorgraph {

namespace {

constexpr const char* kIncidentFile = "incident.txt";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("config key " + key + ": expected true/false, got '" + v + "'");
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const auto x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return std::size_t(x);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": expected a non-negative integer, got '" +
                                v + "'");
  }
}

double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key " + key + ": expected a number, got '" + v + "'");
  }
}

std::vector<ModelKind> parse_models(const std::string& v) {
  const std::string s = lower(v);
  if (s == "both") return {ModelKind::Gcn, ModelKind::Mlp};
  if (s == "gcn") return {ModelKind::Gcn};
  if (s == "mlp") return {ModelKind::Mlp};
  throw std::invalid_argument("models must be gcn, mlp or both, got '" + v + "'");
}

std::string models_string(const std::vector<ModelKind>& models) {
  if (models.size() == 2) return "both";
  return models.empty() ? "both" : to_string(models.front());
}

ModelKind parse_model_kind(const std::string& v) {
  if (v == "gcn") return ModelKind::Gcn;
  if (v == "mlp") return ModelKind::Mlp;
  throw std::invalid_argument("unknown model '" + v + "'");
}

fs::path artifact_path(const PipelineConfig& c, const std::string& name) { return c.out_dir / name; }

void require(const std::string& stage, const PipelineConfig& c, const std::string& name,
             const std::string& upstream) {
  if (!fs::exists(artifact_path(c, name))) {
    throw StageError(stage, "missing " + artifact_path(c, name).string() + "; run `" + upstream +
                                "` first");
  }
}

std::ofstream open_out(const std::string& stage, const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw StageError(stage, "cannot write " + p.string());
  return out;
}

std::ifstream open_in(const std::string& stage, const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StageError(stage, "cannot read " + p.string());
  return in;
}

void prepare(const std::string& stage, const PipelineConfig& c) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw StageError(stage, "cannot create " + c.out_dir.string() + ": " + ec.message());
  auto out = open_out(stage, artifact_path(c, artifact::kEffectiveConfig));
  write_config(c, out);
}

std::string incident_of(const PipelineConfig& c) {
  std::ifstream in(artifact_path(c, kIncidentFile));
  std::string name;
  if (in) std::getline(in, name);
  return name.empty() ? "incident" : name;
}

TextPreprocessor make_text(const PipelineConfig& c, std::ostream& log) {
  std::string warning;
  auto text = TextPreprocessor::with_vocabulary_file(c.vocabulary_file, &warning);
  if (!warning.empty()) log << "warning: " << warning << '\n';
  return text;
}

IncidentCorpus read_corpus(const std::string& stage, const PipelineConfig& c) {
  require(stage, c, artifact::kCorpus, "ingest");
  auto in = open_in(stage, artifact_path(c, artifact::kCorpus));
  try {
    return parse_jsonl(in, incident_of(c));
  } catch (const std::exception& e) {
    throw StageError(stage, std::string(artifact::kCorpus) + ": " + e.what());
  }
}

std::vector<UserProfile> read_profiles(const std::string& stage, const PipelineConfig& c) {
  require(stage, c, artifact::kProfiles, "label");
  auto in = open_in(stage, artifact_path(c, artifact::kProfiles));
  return read_profiles_jsonl(in);
}

FeatureMatrix read_features(const std::string& stage, const PipelineConfig& c) {
  require(stage, c, artifact::kFeatures, "featurize");
  auto in = open_in(stage, artifact_path(c, artifact::kFeatures));
  return read_feature_csv(in);
}

std::vector<int> labels_for(const std::string& stage, const std::vector<std::string>& ids,
                            const std::vector<UserProfile>& profiles) {
  std::map<std::string, int> cls;
  for (const auto& p : profiles) cls[p.user_id] = p.spreader_class;
  std::vector<int> out;
  for (const auto& id : ids) {
    auto it = cls.find(id);
    if (it == cls.end()) throw StageError(stage, "user " + id + " has no profile; rerun `label`");
    out.push_back(it->second);
  }
  return out;
}

fs::path find_incident_dir(const fs::path& root, const std::string& incident) {
  auto is_incident = [](const fs::path& d) {
    return fs::is_directory(d / "rumours") || fs::is_directory(d / "non-rumours");
  };
  if (is_incident(root)) return root;
  if (incident.empty()) {
    throw IngestError(root.string() + " is not an incident directory; pass --incident");
  }
  std::vector<fs::path> matches;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory() && e.path().filename().string().rfind(incident, 0) == 0 &&
        is_incident(e.path())) {
      matches.push_back(e.path());
    }
  }
  std::sort(matches.begin(), matches.end());
  if (matches.empty()) {
    throw IngestError("no incident directory matching '" + incident + "' under " + root.string());
  }
  return matches.front();
}

struct ScoredRun {
  std::vector<std::string> ids;
  std::vector<int> truth;
  ExperimentResult result;
};

// Rebuilds fold metrics and ROC data from predictions.csv.
ScoredRun read_scored_run(const std::string& stage, const PipelineConfig& c) {
  require(stage, c, artifact::kPredictions, "train");
  auto in = open_in(stage, artifact_path(c, artifact::kPredictions));
  std::string line;
  std::getline(in, line);
  struct Column {
    std::vector<double> scores;
    std::vector<int> pred;
    std::vector<std::size_t> fold_of;
    std::vector<int> truth;
    std::vector<std::string> ids;
  };
  std::vector<ModelKind> order;
  std::map<ModelKind, Column> cols;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw StageError(stage, "malformed predictions row: " + line);
    const ModelKind kind = parse_model_kind(f[0]);
    if (!cols.contains(kind)) order.push_back(kind);
    auto& col = cols[kind];
    col.ids.push_back(f[1]);
    const std::size_t fold = std::stoul(f[2]);
    if (fold == 0) throw StageError(stage, "fold numbers start at 1");
    col.fold_of.push_back(fold - 1);
    k = std::max(k, fold);
    col.truth.push_back(std::stoi(f[3]));
    col.scores.push_back(std::stod(f[4]));
    col.pred.push_back(std::stoi(f[5]));
  }
  if (order.empty()) throw StageError(stage, "predictions.csv has no rows; rerun `train`");
  ScoredRun run;
  run.ids = cols[order.front()].ids;
  run.truth = cols[order.front()].truth;
  for (ModelKind kind : order) {
    auto& col = cols[kind];
    if (col.ids != run.ids) throw StageError(stage, "models disagree on node order");
    run.result.models.push_back(score_out_of_fold(kind, std::move(col.scores), std::move(col.pred),
                                                  std::move(col.fold_of), run.truth, k));
  }
  return run;
}

}  // namespace

void PipelineConfig::set_seed(std::uint64_t seed) {
  embedding_seed = seed;
  labeling.minhash.seed = seed;
  experiment.seed = seed;
  experiment.gcn.seed = seed;
  stats.seed = seed;
  synth.seed = seed;
}

PipelineConfig default_config() {
  PipelineConfig c;
  c.vocabulary_file = fs::path(RUMORGRAPH_DATA_DIR) / "english_vocab.txt";
  return c;
}

void apply_config(PipelineConfig& c, std::istream& ini) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(ini, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument("config: " + std::string(e.what()));
  }
  using Setter = void (*)(PipelineConfig&, const std::string&, const std::string&);
  static const std::map<std::string, Setter> setters = {
      {"input.path", [](PipelineConfig& c, const std::string&, const std::string& v) { c.input = v; }},
      {"input.incident",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.incident = v; }},
      {"text.vocabulary_file",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.vocabulary_file = v; }},
      {"embedding.provider",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         if (v != "hash" && v != "file") {
           throw std::invalid_argument("config key " + k + ": expected hash or file");
         }
         c.embedding_provider = v;
       }},
      {"embedding.file",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.embedding_file = v; }},
      {"embedding.dim", [](PipelineConfig& c, const std::string& k,
                           const std::string& v) { c.embedding_dim = parse_size(k, v); }},
      {"embedding.seed", [](PipelineConfig& c, const std::string& k,
                            const std::string& v) { c.embedding_seed = parse_size(k, v); }},
      {"minhash.num_hashes",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.labeling.minhash.num_hashes = parse_size(k, v);
       }},
      {"minhash.shingle_size",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.labeling.minhash.shingle_size = parse_size(k, v);
       }},
      {"minhash.seed", [](PipelineConfig& c, const std::string& k,
                          const std::string& v) { c.labeling.minhash.seed = parse_size(k, v); }},
      {"minhash.threshold", [](PipelineConfig& c, const std::string& k,
                               const std::string& v) { c.labeling.threshold = parse_real(k, v); }},
      {"gcn.hidden_channels",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.experiment.gcn.hidden_channels = parse_size(k, v);
       }},
      {"gcn.epochs", [](PipelineConfig& c, const std::string& k,
                        const std::string& v) { c.experiment.gcn.epochs = parse_size(k, v); }},
      {"gcn.dropout_rate",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.experiment.gcn.dropout_rate = parse_real(k, v);
       }},
      {"gcn.dropout_layers",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.experiment.gcn.dropout_layers = parse_size(k, v);
       }},
      {"gcn.learning_rate",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.experiment.gcn.learning_rate = parse_real(k, v);
       }},
      {"gcn.optimizer",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         if (v == "adam") c.experiment.gcn.optimizer = Optimizer::Adam;
         else if (v == "gd") c.experiment.gcn.optimizer = Optimizer::GradientDescent;
         else throw std::invalid_argument("config key " + k + ": expected adam or gd");
       }},
      {"gcn.output",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         if (v == "sigmoid") c.experiment.gcn.output = OutputMode::SigmoidBce;
         else if (v == "softmax") c.experiment.gcn.output = OutputMode::SoftmaxCe;
         else throw std::invalid_argument("config key " + k + ": expected sigmoid or softmax");
       }},
      {"gcn.seed", [](PipelineConfig& c, const std::string& k,
                      const std::string& v) { c.experiment.gcn.seed = parse_size(k, v); }},
      {"eval.k", [](PipelineConfig& c, const std::string& k,
                    const std::string& v) { c.experiment.k = parse_size(k, v); }},
      {"eval.stratified", [](PipelineConfig& c, const std::string& k,
                             const std::string& v) { c.experiment.stratified = parse_bool(k, v); }},
      {"eval.seed", [](PipelineConfig& c, const std::string& k,
                       const std::string& v) { c.experiment.seed = parse_size(k, v); }},
      {"eval.weighted_adjacency",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.experiment.weighted_adjacency = parse_bool(k, v);
       }},
      {"eval.models", [](PipelineConfig& c, const std::string&,
                         const std::string& v) { c.experiment.models = parse_models(v); }},
      {"eval.bins", [](PipelineConfig& c, const std::string& k,
                       const std::string& v) { c.stats.bins = parse_size(k, v); }},
      {"eval.permutations", [](PipelineConfig& c, const std::string& k,
                               const std::string& v) { c.stats.permutations = parse_size(k, v); }},
      {"eval.stats_seed", [](PipelineConfig& c, const std::string& k,
                             const std::string& v) { c.stats.seed = parse_size(k, v); }},
      {"synth.n_initiators", [](PipelineConfig& c, const std::string& k,
                                const std::string& v) { c.synth.n_initiators = parse_size(k, v); }},
      {"synth.replies_min", [](PipelineConfig& c, const std::string& k,
                               const std::string& v) { c.synth.replies_min = parse_size(k, v); }},
      {"synth.replies_max", [](PipelineConfig& c, const std::string& k,
                               const std::string& v) { c.synth.replies_max = parse_size(k, v); }},
      {"synth.rumor_fraction",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.synth.rumor_fraction = parse_real(k, v);
       }},
      {"synth.homophily", [](PipelineConfig& c, const std::string& k,
                             const std::string& v) { c.synth.homophily = parse_real(k, v); }},
      {"synth.vocab_size", [](PipelineConfig& c, const std::string& k,
                              const std::string& v) { c.synth.vocab_size = parse_size(k, v); }},
      {"synth.tweet_length", [](PipelineConfig& c, const std::string& k,
                                const std::string& v) { c.synth.tweet_length = parse_size(k, v); }},
      {"synth.copy_dropout", [](PipelineConfig& c, const std::string& k,
                                const std::string& v) { c.synth.copy_dropout = parse_real(k, v); }},
      {"synth.spreader_pool", [](PipelineConfig& c, const std::string& k,
                                 const std::string& v) { c.synth.spreader_pool = parse_size(k, v); }},
      {"synth.non_spreader_pool",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.synth.non_spreader_pool = parse_size(k, v);
       }},
      {"synth.boundary_users",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.synth.boundary_users = parse_size(k, v);
       }},
      {"synth.rumor_negative_rate",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.synth.rumor_negative_rate = parse_real(k, v);
       }},
      {"synth.non_rumor_negative_rate",
       [](PipelineConfig& c, const std::string& k, const std::string& v) {
         c.synth.non_rumor_negative_rate = parse_real(k, v);
       }},
      {"synth.seed", [](PipelineConfig& c, const std::string& k,
                        const std::string& v) { c.synth.seed = parse_size(k, v); }},
      {"synth.incident_name",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.synth.incident_name = v; }},
      {"output.dir",
       [](PipelineConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
  };
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw std::invalid_argument("config: key '" + section + "' outside a [section]");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      auto it = setters.find(full);
      if (it == setters.end()) throw std::invalid_argument("config: unknown key " + full);
      it->second(c, full, value.data());
    }
  }
}

PipelineConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open config file " + file.string());
  PipelineConfig c = default_config();
  apply_config(c, in);
  return c;
}

void write_config(const PipelineConfig& c, std::ostream& out) {
  const auto& g = c.experiment.gcn;
  const auto b = [](bool v) { return v ? "true" : "false"; };
  out << "[input]\npath=" << c.input.string() << "\nincident=" << c.incident << "\n\n"
      << "[text]\nvocabulary_file=" << c.vocabulary_file.string() << "\n\n"
      << "[embedding]\nprovider=" << c.embedding_provider << "\nfile=" << c.embedding_file.string()
      << "\ndim=" << c.embedding_dim << "\nseed=" << c.embedding_seed << "\n\n"
      << "[minhash]\nnum_hashes=" << c.labeling.minhash.num_hashes
      << "\nshingle_size=" << c.labeling.minhash.shingle_size
      << "\nseed=" << c.labeling.minhash.seed
      << "\nthreshold=" << format_double(c.labeling.threshold) << "\n\n"
      << "[gcn]\nhidden_channels=" << g.hidden_channels << "\nepochs=" << g.epochs
      << "\ndropout_rate=" << format_double(g.dropout_rate)
      << "\ndropout_layers=" << g.dropout_layers
      << "\nlearning_rate=" << format_double(g.learning_rate)
      << "\noptimizer=" << (g.optimizer == Optimizer::Adam ? "adam" : "gd")
      << "\noutput=" << (g.output == OutputMode::SigmoidBce ? "sigmoid" : "softmax")
      << "\nseed=" << g.seed << "\n\n"
      << "[eval]\nk=" << c.experiment.k << "\nstratified=" << b(c.experiment.stratified)
      << "\nseed=" << c.experiment.seed
      << "\nweighted_adjacency=" << b(c.experiment.weighted_adjacency)
      << "\nmodels=" << models_string(c.experiment.models) << "\nbins=" << c.stats.bins
      << "\npermutations=" << c.stats.permutations << "\nstats_seed=" << c.stats.seed << "\n\n"
      << "[synth]\nn_initiators=" << c.synth.n_initiators
      << "\nreplies_min=" << c.synth.replies_min << "\nreplies_max=" << c.synth.replies_max
      << "\nrumor_fraction=" << format_double(c.synth.rumor_fraction)
      << "\nhomophily=" << format_double(c.synth.homophily)
      << "\nvocab_size=" << c.synth.vocab_size << "\ntweet_length=" << c.synth.tweet_length
      << "\ncopy_dropout=" << format_double(c.synth.copy_dropout)
      << "\nspreader_pool=" << c.synth.spreader_pool
      << "\nnon_spreader_pool=" << c.synth.non_spreader_pool
      << "\nboundary_users=" << c.synth.boundary_users
      << "\nrumor_negative_rate=" << format_double(c.synth.rumor_negative_rate)
      << "\nnon_rumor_negative_rate=" << format_double(c.synth.non_rumor_negative_rate)
      << "\nseed=" << c.synth.seed << "\nincident_name=" << c.synth.incident_name << "\n\n"
      << "[output]\ndir=" << c.out_dir.string() << "\n";
}

std::string checkpoint_name(ModelKind kind, std::size_t fold) {
  return std::string("model_") + to_string(kind) + "_fold" + std::to_string(fold + 1) + ".json";
}

std::string loss_trace_name(ModelKind kind, std::size_t fold) {
  return std::string("loss_") + to_string(kind) + "_fold" + std::to_string(fold + 1) + ".csv";
}

std::string roc_name(ModelKind kind) { return std::string("roc_") + to_string(kind) + ".csv"; }

void run_synth(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "synth";
  prepare(stage, c);
  SynthCorpus synth;
  try {
    synth = generate(c.synth);
  } catch (const std::invalid_argument& e) {
    throw StageError(stage, e.what());
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kSynthCorpus));
    write_jsonl(synth.corpus, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kGroundTruth));
    write_ground_truth_csv(synth, out);
  }
  const auto stats = corpus_stats(synth.corpus);
  log << "[synth] " << stats.rumor_tweets << " rumor / " << stats.non_rumor_tweets
      << " non-rumor tweets, " << stats.unique_users << " users\n";
}

void run_ingest(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "ingest";
  prepare(stage, c);
  IncidentCorpus corpus;
  std::string incident = c.incident;
  try {
    fs::path input = c.input;
    if (input.empty()) {
      input = artifact_path(c, artifact::kSynthCorpus);
      if (!fs::exists(input)) throw IngestError("no input given; pass --input or run `synth` first");
      if (incident.empty()) incident = c.synth.incident_name;
    }
    if (fs::is_directory(input)) {
      LoadReport report;
      corpus = load_pheme_incident(find_incident_dir(input, c.incident), &report);
      log << "[ingest] threads seen " << report.threads_seen << ", loaded "
          << report.threads_loaded << ", skipped " << report.threads_skipped << ", duplicates "
          << report.duplicate_threads << ", defaulted fields " << report.defaulted_fields << '\n';
      const std::size_t shown = std::min<std::size_t>(report.warnings.size(), 10);
      for (std::size_t i = 0; i < shown; ++i) log << "warning: " << report.warnings[i] << '\n';
      if (report.warnings.size() > shown) {
        log << "warning: " << report.warnings.size() - shown << " more warnings\n";
      }
    } else {
      corpus = load_jsonl(input);
    }
  } catch (const IngestError& e) {
    throw StageError(stage, e.what());
  }
  if (incident.empty()) incident = corpus.incident_name;
  {
    auto out = open_out(stage, artifact_path(c, artifact::kCorpus));
    write_jsonl(corpus, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, kIncidentFile));
    out << incident << '\n';
  }
  const auto s = corpus_stats(corpus);
  log << "[ingest] " << incident << ": " << s.rumor_tweets << " rumor / " << s.non_rumor_tweets
      << " non-rumor tweets, " << s.replies << " replies, " << s.unique_users << " users\n";
}

void run_label(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "label";
  const IncidentCorpus corpus = read_corpus(stage, c);
  prepare(stage, c);
  const auto text = make_text(c, log);
  ReplyLabeling labeling;
  try {
    labeling = label_replies(corpus, text, c.labeling);
  } catch (const std::invalid_argument& e) {
    throw StageError(stage, e.what());
  }
  const auto profiles = build_user_profiles(corpus, labeling.labels);
  const auto counts = count_classes(profiles);
  const std::string incident = incident_of(c);
  {
    auto out = open_out(stage, artifact_path(c, artifact::kProfiles));
    write_profiles_jsonl(profiles, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kLabelReport));
    write_label_report(incident, corpus_stats(corpus), counts, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kSentimentReport));
    write_sentiment_report_csv(incident, sentiment_report(corpus, &labeling.labels), out);
  }
  log << "[label] " << profiles.size() << " users: " << counts.spreaders << " spreaders, "
      << counts.non_spreaders << " non-spreaders\n";
}

void run_featurize(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "featurize";
  const IncidentCorpus corpus = read_corpus(stage, c);
  const auto profiles = read_profiles(stage, c);
  prepare(stage, c);
  EmbeddingProvider provider;
  try {
    if (c.embedding_provider == "file") {
      provider = EmbeddingProvider::from_file(c.embedding_file);
    } else {
      provider = EmbeddingProvider::hash_random(c.embedding_dim, c.embedding_seed);
    }
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
  const auto text = make_text(c, log);
  std::map<std::string, std::vector<double>> embeddings;
  for (const auto& p : profiles) {
    std::vector<TokenList> tweets;
    for (const auto& t : p.tweets) tweets.push_back(text.words(t));
    embeddings[p.user_id] = embed_user_tweets(tweets, provider);
  }
  FeatureMatrix features;
  try {
    features = assemble(profiles, embeddings, user_importance(replies_received(corpus)));
  } catch (const FeatureError& e) {
    throw StageError(stage, e.what());
  }
  auto out = open_out(stage, artifact_path(c, artifact::kFeatures));
  write_feature_csv(features, out);
  log << "[featurize] feature matrix " << features.rows() << "x" << features.cols() << '\n';
}

void run_build_graph(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "build-graph";
  const IncidentCorpus corpus = read_corpus(stage, c);
  const auto profiles = read_profiles(stage, c);
  prepare(stage, c);
  const ReplyGraph graph = build_graph(corpus);
  const auto adj = normalize(graph, c.experiment.weighted_adjacency);
  {
    auto out = open_out(stage, artifact_path(c, artifact::kNodes));
    write_nodes_csv(graph, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kEdges));
    write_edges_csv(graph, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kAdjacency));
    write_adjacency_coo(adj, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kDegreeReport));
    write_degree_report_csv(degree_vs_score_report(graph, profiles), out);
  }
  log << "[build-graph] " << graph.size() << " nodes, " << graph.edges.size()
      << " edges, adjacency " << adj.size() << "x" << adj.size() << '\n';
}

void run_train(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "train";
  NodeDataset data;
  data.features = read_features(stage, c);
  require(stage, c, artifact::kNodes, "build-graph");
  require(stage, c, artifact::kEdges, "build-graph");
  const auto profiles = read_profiles(stage, c);
  {
    auto nodes = open_in(stage, artifact_path(c, artifact::kNodes));
    auto edges = open_in(stage, artifact_path(c, artifact::kEdges));
    data.graph = read_graph_csv(nodes, edges);
  }
  if (data.graph.node_ids != data.features.row_ids) {
    throw StageError(stage, "graph nodes and feature rows differ; rerun `featurize` and `build-graph`");
  }
  data.labels = labels_for(stage, data.features.row_ids, profiles);
  prepare(stage, c);

  ExperimentResult result;
  try {
    result = run_experiment(data, c.experiment);
  } catch (const TrainingError& e) {
    throw StageError(stage, std::string(e.what()) + " at epoch " + std::to_string(e.epoch()));
  } catch (const std::invalid_argument& e) {
    throw StageError(stage, e.what());
  }
  for (const auto& m : result.models) {
    for (const auto& f : m.folds) {
      {
        auto out = open_out(stage, artifact_path(c, checkpoint_name(m.kind, f.fold)));
        save_checkpoint(f.model, out);
      }
      auto out = open_out(stage, artifact_path(c, loss_trace_name(m.kind, f.fold)));
      write_loss_trace(f.loss_trace, out);
    }
    log << "[train] " << to_string(m.kind) << ": " << m.folds.size() << " folds, macro accuracy "
        << format_fixed(m.macro.accuracy, 3) << '\n';
  }
  auto out = open_out(stage, artifact_path(c, artifact::kPredictions));
  write_predictions_csv(result, data.features.row_ids, data.labels, out);
}

void run_evaluate(const PipelineConfig& c, std::ostream& log) {
  const std::string stage = "evaluate";
  const ScoredRun run = read_scored_run(stage, c);
  const FeatureMatrix features = read_features(stage, c);
  const auto profiles = read_profiles(stage, c);
  prepare(stage, c);
  {
    auto out = open_out(stage, artifact_path(c, artifact::kMetrics));
    write_metrics_csv(run.result, out);
  }
  for (const auto& m : run.result.models) {
    auto out = open_out(stage, artifact_path(c, roc_name(m.kind)));
    write_roc_csv(m, out);
    log << "[evaluate] " << to_string(m.kind) << ": accuracy " << format_fixed(m.macro.accuracy, 3)
        << ", f1 " << format_fixed(m.macro.f1, 3) << ", auc " << format_fixed(m.macro.auc_roc, 3)
        << '\n';
  }
  const auto labels = labels_for(stage, features.row_ids, profiles);
  const auto stats =
      feature_stats(features, labels, default_stat_columns(), incident_of(c), c.stats);
  for (const auto& s : stats) {
    if (s.degenerate) log << "warning: chi-square table for " << s.feature_name << " is degenerate\n";
  }
  auto out = open_out(stage, artifact_path(c, artifact::kFeatureStats));
  write_feature_stats_csv(stats, out);
}

void run_report(const PipelineConfig& c, const std::vector<fs::path>& pool_dirs, std::ostream& log) {
  const std::string stage = "report";
  require(stage, c, artifact::kMetrics, "evaluate");
  const ScoredRun run = read_scored_run(stage, c);
  prepare(stage, c);
  {
    auto out = open_out(stage, artifact_path(c, artifact::kFoldMetricsSvg));
    write_fold_metrics_svg(run.result, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kRocSvg));
    write_roc_svg(run.result, out);
  }
  {
    auto out = open_out(stage, artifact_path(c, artifact::kSummary));
    write_summary_markdown(incident_of(c), run.result, out);
  }
  if (!pool_dirs.empty()) {
    std::vector<FeatureMatrix> matrices;
    std::vector<std::vector<int>> labels;
    std::vector<fs::path> dirs{c.out_dir};
    dirs.insert(dirs.end(), pool_dirs.begin(), pool_dirs.end());
    for (const auto& dir : dirs) {
      PipelineConfig other = c;
      other.out_dir = dir;
      matrices.push_back(read_features(stage, other));
      labels.push_back(labels_for(stage, matrices.back().row_ids, read_profiles(stage, other)));
    }
    const auto stats = pooled_feature_stats(matrices, labels, default_stat_columns(), c.stats);
    auto out = open_out(stage, artifact_path(c, artifact::kPooledFeatureStats));
    write_feature_stats_csv(stats, out);
    log << "[report] pooled feature statistics over " << dirs.size() << " runs\n";
  }
  log << "[report] wrote " << artifact::kSummary << ", " << artifact::kFoldMetricsSvg << ", "
      << artifact::kRocSvg << '\n';
}

void run_all(const PipelineConfig& c, std::ostream& log) {
  run_ingest(c, log);
  run_label(c, log);
  run_featurize(c, log);
  run_build_graph(c, log);
  run_train(c, log);
  run_evaluate(c, log);
  run_report(c, {}, log);
}

}  // namespace rumorgraph
