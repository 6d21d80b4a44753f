#ifndef FRGAME_CLASSIFIER_HPP
#define FRGAME_CLASSIFIER_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

namespace frgame {

// Dense softmax classifier: input -> hidden (ReLU) -> dropout -> output.
// Dimensions are fixed by config and identical across clients so that
// weight averaging is well defined.
struct ClassifierConfig {
  int input_dim = 32;
  int hidden_dim = 32;
  int output_dim = 2;
  double dropout_rate = 0.1;
};

struct ClassifierModel {
  ClassifierConfig config;
  Eigen::MatrixXd w1;  // hidden x input
  Eigen::VectorXd b1;  // hidden
  Eigen::MatrixXd w2;  // output x hidden
  Eigen::VectorXd b2;  // output

  // Parameter count, for flattened views.
  int parameter_count() const;
  Eigen::VectorXd flatten() const;
  static ClassifierModel unflatten(const ClassifierConfig& config, const Eigen::VectorXd& theta);
};

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 32;
};

struct Gradients {
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd w2;
  Eigen::VectorXd b2;
};

// Glorot-uniform weights, zero biases; deterministic given seed.
ClassifierModel init_classifier(const ClassifierConfig& config, std::uint64_t seed);

// Softmax probabilities in eval mode (no dropout); rows sum to 1.
Eigen::MatrixXd forward_probabilities(const ClassifierModel& model, const Eigen::MatrixXd& x);

// Mean categorical cross-entropy and its analytic gradients on a batch.
// `dropout_keep` (hidden-dim 0/1 mask per sample, scaled at apply time) makes
// the same stochastic forward pass reproducible for gradient checking;
// nullopt means no dropout.
double loss_and_gradients(const ClassifierModel& model, const Eigen::MatrixXd& x,
                          const std::vector<int>& labels,
                          const std::optional<Eigen::MatrixXd>& dropout_keep, Gradients* grads);

// Argmax-vs-label accuracy on (x, labels); ties resolve to the lower class.
double evaluate_accuracy(const ClassifierModel& model, const Eigen::MatrixXd& x,
                         const std::vector<int>& labels);

// Mini-batch Adam on cross-entropy for `epochs` passes over (x, labels).
// Shuffling and dropout draw from independent streams derived from `seed`
// and `dropout_seed` (dropout stream untouched at rate 0). Throws
// DivergedTrainingError on a non-finite loss.
ClassifierModel train_local(const ClassifierModel& model, const Eigen::MatrixXd& x,
                            const std::vector<int>& labels, int epochs, const AdamConfig& adam,
                            std::uint64_t seed,
                            std::optional<std::uint64_t> dropout_seed = std::nullopt);

}  // namespace frgame

#endif  // FRGAME_CLASSIFIER_HPP
