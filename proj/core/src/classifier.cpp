#include "frgame/classifier.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "frgame/error.hpp"
#include "frgame/rng.hpp"

namespace frgame {

namespace {

Eigen::MatrixXd glorot_uniform(int rows, int cols, RandomStream& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = rng.uniform(-limit, limit);
    }
  }
  return m;
}

Eigen::MatrixXd softmax_rows(Eigen::MatrixXd z) {
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double m = z.row(r).maxCoeff();
    z.row(r) = (z.row(r).array() - m).exp();
    z.row(r) /= z.row(r).sum();
  }
  return z;
}

}  // namespace

int ClassifierModel::parameter_count() const {
  return config.hidden_dim * config.input_dim + config.hidden_dim +
         config.output_dim * config.hidden_dim + config.output_dim;
}

Eigen::VectorXd ClassifierModel::flatten() const {
  Eigen::VectorXd theta(parameter_count());
  Eigen::Index at = 0;
  for (int r = 0; r < w1.rows(); ++r)
    for (int c = 0; c < w1.cols(); ++c) theta(at++) = w1(r, c);
  for (int r = 0; r < b1.size(); ++r) theta(at++) = b1(r);
  for (int r = 0; r < w2.rows(); ++r)
    for (int c = 0; c < w2.cols(); ++c) theta(at++) = w2(r, c);
  for (int r = 0; r < b2.size(); ++r) theta(at++) = b2(r);
  return theta;
}

ClassifierModel ClassifierModel::unflatten(const ClassifierConfig& config,
                                           const Eigen::VectorXd& theta) {
  ClassifierModel m;
  m.config = config;
  m.w1.resize(config.hidden_dim, config.input_dim);
  m.b1.resize(config.hidden_dim);
  m.w2.resize(config.output_dim, config.hidden_dim);
  m.b2.resize(config.output_dim);
  if (theta.size() != m.parameter_count())
    throw std::invalid_argument("parameter vector size mismatch");
  Eigen::Index at = 0;
  for (int r = 0; r < m.w1.rows(); ++r)
    for (int c = 0; c < m.w1.cols(); ++c) m.w1(r, c) = theta(at++);
  for (int r = 0; r < m.b1.size(); ++r) m.b1(r) = theta(at++);
  for (int r = 0; r < m.w2.rows(); ++r)
    for (int c = 0; c < m.w2.cols(); ++c) m.w2(r, c) = theta(at++);
  for (int r = 0; r < m.b2.size(); ++r) m.b2(r) = theta(at++);
  return m;
}

ClassifierModel init_classifier(const ClassifierConfig& config, std::uint64_t seed) {
  if (config.input_dim < 1 || config.hidden_dim < 1 || config.output_dim < 2)
    throw std::invalid_argument("bad classifier dimensions");
  if (!(config.dropout_rate >= 0.0 && config.dropout_rate < 1.0))
    throw std::invalid_argument("dropout rate must be in [0,1)");
  RandomStream rng(mix_seed(seed, 0x1417ULL));
  ClassifierModel m;
  m.config = config;
  m.w1 = glorot_uniform(config.hidden_dim, config.input_dim, rng);
  m.b1 = Eigen::VectorXd::Zero(config.hidden_dim);
  m.w2 = glorot_uniform(config.output_dim, config.hidden_dim, rng);
  m.b2 = Eigen::VectorXd::Zero(config.output_dim);
  return m;
}

Eigen::MatrixXd forward_probabilities(const ClassifierModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.config.input_dim) throw std::invalid_argument("input dimension mismatch");
  Eigen::MatrixXd z1 = (x * model.w1.transpose()).rowwise() + model.b1.transpose();
  z1 = z1.cwiseMax(0.0);
  const Eigen::MatrixXd z2 = (z1 * model.w2.transpose()).rowwise() + model.b2.transpose();
  return softmax_rows(z2);
}

double loss_and_gradients(const ClassifierModel& model, const Eigen::MatrixXd& x,
                          const std::vector<int>& labels,
                          const std::optional<Eigen::MatrixXd>& dropout_keep, Gradients* grads) {
  const Eigen::Index batch = x.rows();
  if (batch == 0) throw std::invalid_argument("empty batch");
  if (static_cast<Eigen::Index>(labels.size()) != batch)
    throw std::invalid_argument("labels size mismatch");

  const Eigen::MatrixXd z1 = (x * model.w1.transpose()).rowwise() + model.b1.transpose();
  Eigen::MatrixXd h = z1.cwiseMax(0.0);

  // inverted dropout: scale kept units at train time, nothing at eval
  Eigen::MatrixXd keep_scaled;
  const bool use_dropout = dropout_keep.has_value();
  if (use_dropout) {
    if (dropout_keep->rows() != batch || dropout_keep->cols() != model.config.hidden_dim)
      throw std::invalid_argument("dropout mask shape mismatch");
    const double keep_prob = 1.0 - model.config.dropout_rate;
    keep_scaled = *dropout_keep / keep_prob;
    h = h.cwiseProduct(keep_scaled);
  }

  const Eigen::MatrixXd z2 = (h * model.w2.transpose()).rowwise() + model.b2.transpose();
  const Eigen::MatrixXd p = softmax_rows(z2);

  double loss = 0.0;
  Eigen::MatrixXd dz2 = p;
  for (Eigen::Index r = 0; r < batch; ++r) {
    const int y = labels[static_cast<std::size_t>(r)];
    if (y < 0 || y >= model.config.output_dim) throw std::invalid_argument("label out of range");
    loss -= std::log(std::max(p(r, y), 1e-300));
    dz2(r, y) -= 1.0;
  }
  loss /= static_cast<double>(batch);

  if (grads != nullptr) {
    dz2 /= static_cast<double>(batch);
    grads->w2 = dz2.transpose() * h;
    grads->b2 = dz2.colwise().sum().transpose();
    Eigen::MatrixXd dh = dz2 * model.w2;
    if (use_dropout) dh = dh.cwiseProduct(keep_scaled);
    const Eigen::MatrixXd dz1 = (z1.array() > 0.0).cast<double>().matrix().cwiseProduct(dh);
    grads->w1 = dz1.transpose() * x;
    grads->b1 = dz1.colwise().sum().transpose();
  }
  return loss;
}

double evaluate_accuracy(const ClassifierModel& model, const Eigen::MatrixXd& x,
                         const std::vector<int>& labels) {
  if (x.rows() == 0) throw std::invalid_argument("empty evaluation set");
  const Eigen::MatrixXd p = forward_probabilities(model, x);
  int correct = 0;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    int best = 0;
    for (int c = 1; c < model.config.output_dim; ++c) {
      if (p(r, c) > p(r, best)) best = c;  // ties keep the lower class
    }
    if (best == labels[static_cast<std::size_t>(r)]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(p.rows());
}

ClassifierModel train_local(const ClassifierModel& model, const Eigen::MatrixXd& x,
                            const std::vector<int>& labels, int epochs, const AdamConfig& adam,
                            std::uint64_t seed, std::optional<std::uint64_t> dropout_seed) {
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (x.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("labels size mismatch");
  ClassifierModel m = model;
  if (epochs == 0 || x.rows() == 0) return m;

  RandomStream shuffle_rng(mix_seed(seed, 0x5F0FULL));
  RandomStream dropout_rng(mix_seed(dropout_seed.value_or(mix_seed(seed, 0xD04ULL)), 0xD12ULL));
  const bool use_dropout = m.config.dropout_rate > 0.0;

  Gradients g;
  Gradients mom, vel;
  mom.w1 = Eigen::MatrixXd::Zero(m.w1.rows(), m.w1.cols());
  mom.b1 = Eigen::VectorXd::Zero(m.b1.size());
  mom.w2 = Eigen::MatrixXd::Zero(m.w2.rows(), m.w2.cols());
  mom.b2 = Eigen::VectorXd::Zero(m.b2.size());
  vel = mom;

  const auto adam_update = [&](auto& w, auto& mw, auto& vw, const auto& gw, double bc1,
                               double bc2) {
    mw = adam.beta1 * mw + (1.0 - adam.beta1) * gw;
    vw = adam.beta2 * vw + (1.0 - adam.beta2) * gw.cwiseProduct(gw);
    w -= adam.learning_rate *
         (mw / bc1).cwiseQuotient(((vw / bc2).cwiseSqrt().array() + adam.epsilon).matrix());
  };

  const int n = static_cast<int>(x.rows());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  long long step = 0;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (int start = 0; start < n; start += adam.batch_size) {
      const int size = std::min(adam.batch_size, n - start);
      Eigen::MatrixXd xb(size, x.cols());
      std::vector<int> yb(static_cast<std::size_t>(size));
      for (int r = 0; r < size; ++r) {
        const int src = order[static_cast<std::size_t>(start) + static_cast<std::size_t>(r)];
        xb.row(r) = x.row(src);
        yb[static_cast<std::size_t>(r)] = labels[static_cast<std::size_t>(src)];
      }
      std::optional<Eigen::MatrixXd> mask;
      if (use_dropout) {
        Eigen::MatrixXd mm(size, m.config.hidden_dim);
        for (int r = 0; r < size; ++r) {
          for (int c = 0; c < m.config.hidden_dim; ++c) {
            mm(r, c) = dropout_rng.bernoulli(1.0 - m.config.dropout_rate) ? 1.0 : 0.0;
          }
        }
        mask = std::move(mm);
      }
      const double loss = loss_and_gradients(m, xb, yb, mask, &g);
      if (!std::isfinite(loss)) {
        std::ostringstream oss;
        oss << "training diverged: non-finite loss at epoch " << epoch << " batch offset " << start;
        throw DivergedTrainingError(oss.str());
      }
      ++step;
      const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(step));
      adam_update(m.w1, mom.w1, vel.w1, g.w1, bc1, bc2);
      adam_update(m.w2, mom.w2, vel.w2, g.w2, bc1, bc2);
      adam_update(m.b1, mom.b1, vel.b1, g.b1, bc1, bc2);
      adam_update(m.b2, mom.b2, vel.b2, g.b2, bc1, bc2);
    }
  }
  return m;
}

}  // namespace frgame
