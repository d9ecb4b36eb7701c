#include "rumorgraph/gcn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "rumorgraph/csv.hpp"

namespace rumorgraph {

using nlohmann::json;

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

void glorot(Matrix& w, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / double(w.rows() + w.cols()));
  for (double& v : w.data()) v = (2.0 * uniform01(rng) - 1.0) * limit;
}

// Inverted dropout: kept entries are scaled by 1 / (1 - rate).
Matrix dropout_mask(std::size_t rows, std::size_t cols, double rate, std::mt19937_64& rng) {
  Matrix mask(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& v : mask.data()) v = uniform01(rng) < rate ? 0.0 : keep_scale;
  return mask;
}

bool input_dropout_on(const GcnConfig& c) { return c.dropout_layers >= 2 && c.dropout_rate > 0; }
bool hidden_dropout_on(const GcnConfig& c) { return c.dropout_layers >= 1 && c.dropout_rate > 0; }

void apply_head(OutputMode mode, Matrix& z) {
  if (mode == OutputMode::SigmoidBce) {
    for (double& v : z.data()) v = sigmoid(v);
    return;
  }
  for (std::size_t r = 0; r < z.rows(); ++r) {
    auto row = z.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
}

// `propagated_x` may carry a precomputed A * X when input dropout is off.
ForwardCache forward_impl(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x,
                          std::mt19937_64* rng, const Matrix* propagated_x) {
  if (x.rows() != adj.size()) {
    throw ShapeError("features have " + std::to_string(x.rows()) + " rows, adjacency is " +
                     std::to_string(adj.size()) + "x" + std::to_string(adj.size()));
  }
  if (x.cols() != model.w1.rows()) {
    throw ShapeError("features have " + std::to_string(x.cols()) + " columns, W1 is " +
                     model.w1.shape());
  }
  const GcnConfig& cfg = model.config;
  ForwardCache c;
  if (rng && input_dropout_on(cfg)) {
    c.input_mask = dropout_mask(x.rows(), x.cols(), cfg.dropout_rate, *rng);
    c.propagated = adj.matrix.multiply(hadamard(x, c.input_mask));
  } else if (propagated_x) {
    c.propagated = *propagated_x;
  } else {
    c.propagated = adj.matrix.multiply(x);
  }
  c.hidden = matmul(c.propagated, model.w1);
  for (double& v : c.hidden.data()) v = sigmoid(v);

  if (rng && hidden_dropout_on(cfg)) {
    c.hidden_mask = dropout_mask(c.hidden.rows(), c.hidden.cols(), cfg.dropout_rate, *rng);
    c.propagated2 = adj.matrix.multiply(hadamard(c.hidden, c.hidden_mask));
  } else {
    c.propagated2 = adj.matrix.multiply(c.hidden);
  }
  c.output = matmul(c.propagated2, model.w2);
  apply_head(cfg.output, c.output);
  return c;
}

void check_mask(const Matrix& output, const Matrix& targets, std::span<const std::size_t> mask) {
  if (mask.empty()) throw std::invalid_argument("loss over an empty node mask");
  if (output.rows() != targets.rows() || output.cols() != targets.cols()) {
    throw ShapeError("output " + output.shape() + " vs targets " + targets.shape());
  }
  for (auto i : mask) {
    if (i >= output.rows()) throw std::out_of_range("mask index outside the node set");
  }
}

double clamp_prob(double p) {
  return std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
}

json matrix_json(const Matrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j) {
  return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                j.at("data").get<std::vector<double>>());
}

}  // namespace

void GcnConfig::validate() const {
  if (hidden_channels == 0) throw std::invalid_argument("hidden_channels must be positive");
  if (output_channels < 2) throw std::invalid_argument("output_channels must be at least 2");
  if (epochs == 0) throw std::invalid_argument("epochs must be positive");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw std::invalid_argument("dropout_rate must be in [0, 1)");
  }
  if (dropout_layers > 2) throw std::invalid_argument("dropout_layers must be 0, 1 or 2");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be finite and non-negative");
  }
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

GcnModel init_model(std::size_t in_features, const GcnConfig& config) {
  config.validate();
  if (in_features == 0) throw std::invalid_argument("model needs at least one input feature");
  GcnModel m;
  m.config = config;
  m.w1 = Matrix(in_features, config.hidden_channels);
  m.w2 = Matrix(config.hidden_channels, config.output_channels);
  std::mt19937_64 rng(derive_seed(config.seed, 1));
  glorot(m.w1, rng);
  glorot(m.w2, rng);
  return m;
}

ForwardCache forward(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x,
                     std::mt19937_64* dropout_rng) {
  return forward_impl(model, adj, x, dropout_rng, nullptr);
}

Matrix predict_proba(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x) {
  return forward(model, adj, x).output;
}

Matrix one_hot(std::span<const int> labels, std::size_t classes) {
  Matrix t(labels.size(), classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || std::size_t(labels[i]) >= classes) {
      throw std::out_of_range("label " + std::to_string(labels[i]) + " outside class range");
    }
    t(i, std::size_t(labels[i])) = 1.0;
  }
  return t;
}

double bce_loss(const Matrix& output, const Matrix& targets, std::span<const std::size_t> mask) {
  check_mask(output, targets, mask);
  double total = 0.0;
  for (auto i : mask) {
    for (std::size_t c = 0; c < output.cols(); ++c) {
      const double p = clamp_prob(output(i, c));
      const double y = targets(i, c);
      total -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
    }
  }
  return total / double(mask.size() * output.cols());
}

double loss(OutputMode mode, const Matrix& output, const Matrix& targets,
            std::span<const std::size_t> mask) {
  if (mode == OutputMode::SigmoidBce) return bce_loss(output, targets, mask);
  check_mask(output, targets, mask);
  double total = 0.0;
  for (auto i : mask) {
    for (std::size_t c = 0; c < output.cols(); ++c) {
      total -= targets(i, c) * std::log(clamp_prob(output(i, c)));
    }
  }
  return total / double(mask.size());
}

Gradients backward(const GcnModel& model, const NormalizedAdjacency& adj, const ForwardCache& cache,
                   const Matrix& targets, std::span<const std::size_t> mask) {
  const Matrix& out = cache.output;
  check_mask(out, targets, mask);
  const std::size_t channels = out.cols();

  // dL/dZ2 for the masked rows; zero elsewhere.
  Matrix dz2(out.rows(), channels);
  if (model.config.output == OutputMode::SigmoidBce) {
    const double scale = 1.0 / double(mask.size() * channels);
    for (auto i : mask) {
      for (std::size_t c = 0; c < channels; ++c) {
        const double p = out(i, c);
        // The clamp is flat outside [eps, 1 - eps].
        if (p > kProbabilityClamp && p < 1.0 - kProbabilityClamp) {
          dz2(i, c) = (p - targets(i, c)) * scale;
        }
      }
    }
  } else {
    const double scale = 1.0 / double(mask.size());
    for (auto i : mask) {
      for (std::size_t c = 0; c < channels; ++c) dz2(i, c) = (out(i, c) - targets(i, c)) * scale;
    }
  }

  Gradients g;
  g.w2 = matmul_tn(cache.propagated2, dz2);
  Matrix d_hidden = adj.matrix.multiply(matmul_nt(dz2, model.w2));
  if (!cache.hidden_mask.data().empty()) d_hidden = hadamard(d_hidden, cache.hidden_mask);
  for (std::size_t k = 0; k < d_hidden.size(); ++k) {
    const double h = cache.hidden.data()[k];
    d_hidden.data()[k] *= h * (1.0 - h);
  }
  g.w1 = matmul_tn(cache.propagated, d_hidden);
  return g;
}

TrainResult train(GcnModel model, const NormalizedAdjacency& adj, const Matrix& x,
                  std::span<const int> labels, std::span<const std::size_t> train_idx) {
  const GcnConfig& cfg = model.config;
  cfg.validate();
  if (labels.size() != x.rows()) {
    throw ShapeError("labels: " + std::to_string(labels.size()) + " for " +
                     std::to_string(x.rows()) + " nodes");
  }
  if (train_idx.empty()) throw std::invalid_argument("training mask is empty");
  const Matrix targets = one_hot(labels, cfg.output_channels);
  std::mt19937_64 rng(derive_seed(cfg.seed, 2));
  const bool any_dropout = input_dropout_on(cfg) || hidden_dropout_on(cfg);
  const Matrix propagated_x = adj.matrix.multiply(x);

  // Adam moments.
  Matrix m1(model.w1.rows(), model.w1.cols()), v1 = m1;
  Matrix m2(model.w2.rows(), model.w2.cols()), v2 = m2;
  constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;

  auto step = [&](Matrix& w, const Matrix& grad, Matrix& m, Matrix& v, std::size_t t) {
    if (cfg.optimizer == Optimizer::GradientDescent) {
      for (std::size_t k = 0; k < w.size(); ++k) w.data()[k] -= cfg.learning_rate * grad.data()[k];
      return;
    }
    const double c1 = 1.0 - std::pow(beta1, double(t));
    const double c2 = 1.0 - std::pow(beta2, double(t));
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double gk = grad.data()[k];
      m.data()[k] = beta1 * m.data()[k] + (1.0 - beta1) * gk;
      v.data()[k] = beta2 * v.data()[k] + (1.0 - beta2) * gk * gk;
      const double mhat = m.data()[k] / c1;
      const double vhat = v.data()[k] / c2;
      w.data()[k] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + adam_eps);
    }
  };

  TrainResult result;
  result.loss_trace.reserve(cfg.epochs);
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    ForwardCache cache = forward_impl(model, adj, x, any_dropout ? &rng : nullptr, &propagated_x);
    double epoch_loss;
    if (any_dropout) {
      const ForwardCache clean = forward_impl(model, adj, x, nullptr, &propagated_x);
      epoch_loss = loss(cfg.output, clean.output, targets, train_idx);
    } else {
      epoch_loss = loss(cfg.output, cache.output, targets, train_idx);
    }
    if (!std::isfinite(epoch_loss)) {
      throw TrainingError("non-finite loss at epoch " + std::to_string(epoch), epoch);
    }
    result.loss_trace.push_back(epoch_loss);

    const Gradients g = backward(model, adj, cache, targets, train_idx);
    step(model.w1, g.w1, m1, v1, epoch);
    step(model.w2, g.w2, m2, v2, epoch);
    if (!all_finite(model.w1) || !all_finite(model.w2)) {
      throw TrainingError("non-finite weights at epoch " + std::to_string(epoch), epoch);
    }
  }
  result.model = std::move(model);
  return result;
}

std::vector<int> predict_classes(const Matrix& output) {
  std::vector<int> out(output.rows());
  for (std::size_t i = 0; i < output.rows(); ++i) {
    auto row = output.row(i);
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] >= row[best]) best = c;
    }
    out[i] = int(best);
  }
  return out;
}

std::vector<int> predict(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x) {
  return predict_classes(predict_proba(model, adj, x));
}

std::vector<double> positive_scores(const Matrix& output) {
  std::vector<double> s(output.rows());
  for (std::size_t i = 0; i < output.rows(); ++i) s[i] = output(i, 1);
  return s;
}

void save_checkpoint(const GcnModel& model, std::ostream& out) {
  const GcnConfig& c = model.config;
  json j = {
      {"format", "rumorgraph-gcn"},
      {"version", 1},
      {"config",
       {{"layers", kGcnLayers},
        {"hidden_channels", c.hidden_channels},
        {"output_channels", c.output_channels},
        {"epochs", c.epochs},
        {"dropout_rate", c.dropout_rate},
        {"dropout_layers", c.dropout_layers},
        {"learning_rate", c.learning_rate},
        {"optimizer", c.optimizer == Optimizer::Adam ? "adam" : "gd"},
        {"output", c.output == OutputMode::SigmoidBce ? "sigmoid_bce" : "softmax_ce"},
        {"seed", c.seed}}},
      {"w1", matrix_json(model.w1)},
      {"w2", matrix_json(model.w2)},
  };
  out << j.dump() << '\n';
}

GcnModel load_checkpoint(std::istream& in) {
  json j = json::parse(in);
  if (j.at("format") != "rumorgraph-gcn" || j.at("version") != 1) {
    throw std::runtime_error("unsupported checkpoint format");
  }
  GcnModel m;
  const json& c = j.at("config");
  m.config.hidden_channels = c.at("hidden_channels");
  m.config.output_channels = c.at("output_channels");
  m.config.epochs = c.at("epochs");
  m.config.dropout_rate = c.at("dropout_rate");
  m.config.dropout_layers = c.at("dropout_layers");
  m.config.learning_rate = c.at("learning_rate");
  m.config.optimizer = c.at("optimizer") == "adam" ? Optimizer::Adam : Optimizer::GradientDescent;
  m.config.output = c.at("output") == "softmax_ce" ? OutputMode::SoftmaxCe : OutputMode::SigmoidBce;
  m.config.seed = c.at("seed");
  m.w1 = matrix_from_json(j.at("w1"));
  m.w2 = matrix_from_json(j.at("w2"));
  if (m.w1.cols() != m.config.hidden_channels || m.w2.rows() != m.config.hidden_channels ||
      m.w2.cols() != m.config.output_channels) {
    throw std::runtime_error("checkpoint weight shapes do not match its config");
  }
  return m;
}

void write_loss_trace(const std::vector<double>& trace, std::ostream& out) {
  out << "epoch,loss\n";
  for (std::size_t e = 0; e < trace.size(); ++e) out << e + 1 << ',' << format_double(trace[e]) << '\n';
}

}  // namespace rumorgraph
