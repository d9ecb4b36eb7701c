#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "rumorgraph/graph.hpp"
#include "rumorgraph/linalg.hpp"

namespace rumorgraph {

// Output head: two independent sigmoid channels trained with binary cross
// entropy against one-hot targets, or a softmax with categorical cross entropy.
enum class OutputMode { SigmoidBce, SoftmaxCe };

enum class Optimizer { GradientDescent, Adam };

struct GcnConfig {
  std::size_t hidden_channels = 32;
  std::size_t output_channels = 2;
  std::size_t epochs = 300;
  double dropout_rate = 0.5;
  // Number of dropout sites: 1 drops hidden activations, 2 also drops input
  // features. 0 disables dropout.
  std::size_t dropout_layers = 2;
  double learning_rate = 0.01;
  Optimizer optimizer = Optimizer::Adam;
  OutputMode output = OutputMode::SigmoidBce;
  std::uint64_t seed = 42;

  // Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

inline constexpr std::size_t kGcnLayers = 2;
inline constexpr double kProbabilityClamp = 1e-7;

struct GcnModel {
  Matrix w1;  // features x hidden
  Matrix w2;  // hidden x outputs
  GcnConfig config;
};

class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& what, std::size_t epoch)
      : std::runtime_error(what), epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

// Glorot-uniform initialization from config.seed.
GcnModel init_model(std::size_t in_features, const GcnConfig& config);

double sigmoid(double x);

// Intermediate activations kept for the backward pass.
struct ForwardCache {
  Matrix input_mask;   // empty when input dropout is off
  Matrix propagated;   // A * (X .* input_mask)
  Matrix hidden;       // sigmoid(propagated * W1)
  Matrix hidden_mask;  // empty when hidden dropout is off
  Matrix propagated2;  // A * (hidden .* hidden_mask)
  Matrix output;       // N x outputs, entries in (0, 1)
};

// H1 = sigmoid(A X W1), H2 = head(A H1 W2), with dropout on the configured
// sites when `rng` is given. A must be symmetric (the backward pass uses it
// as its own transpose).
ForwardCache forward(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x,
                     std::mt19937_64* dropout_rng = nullptr);

// Inference output (no dropout).
Matrix predict_proba(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x);

// Two-column one-hot targets from 0/1 labels.
Matrix one_hot(std::span<const int> labels, std::size_t classes = 2);

// Mean over masked rows and all channels of the clamped binary cross entropy.
// Throws std::invalid_argument on an empty mask.
double bce_loss(const Matrix& output, const Matrix& targets, std::span<const std::size_t> mask);

// Loss matching the model's output head (BCE or categorical CE).
double loss(OutputMode mode, const Matrix& output, const Matrix& targets,
            std::span<const std::size_t> mask);

struct Gradients {
  Matrix w1;
  Matrix w2;
};

// Exact gradients of `loss` w.r.t. W1 and W2, replaying the cached dropout masks.
Gradients backward(const GcnModel& model, const NormalizedAdjacency& adj, const ForwardCache& cache,
                   const Matrix& targets, std::span<const std::size_t> mask);

struct TrainResult {
  GcnModel model;
  std::vector<double> loss_trace;  // per epoch, dropout-free loss on the training rows
};

// Full-batch training for config.epochs steps. Throws TrainingError when a
// non-finite loss or weight appears.
TrainResult train(GcnModel model, const NormalizedAdjacency& adj, const Matrix& x,
                  std::span<const int> labels, std::span<const std::size_t> train_idx);

// Argmax over the output channels; ties go to class 1.
std::vector<int> predict_classes(const Matrix& output);
std::vector<int> predict(const GcnModel& model, const NormalizedAdjacency& adj, const Matrix& x);

// Probability of class 1 used for ranking metrics.
std::vector<double> positive_scores(const Matrix& output);

void save_checkpoint(const GcnModel& model, std::ostream& out);
GcnModel load_checkpoint(std::istream& in);
void write_loss_trace(const std::vector<double>& trace, std::ostream& out);

}  // namespace rumorgraph
