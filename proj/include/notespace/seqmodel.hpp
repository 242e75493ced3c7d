#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "notespace/corpus.hpp"
#include "notespace/errors.hpp"
#include "notespace/rng.hpp"

namespace notespace::seqmodel {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Gate weights act on the stacked input [x_t ; h_{t-1}].
template <typename Scalar>
struct LstmParameters {
  Matrix<Scalar> w_input, w_forget, w_output, w_candidate;  // H x (D+H)
  Vector<Scalar> b_input, b_forget, b_output, b_candidate;  // H
  Matrix<Scalar> w_project;                                 // V x H
  Vector<Scalar> b_project;                                 // V
};

// Token embeddings plus the recurrent predictor they are trained with.
template <typename Scalar>
struct Model {
  Matrix<Scalar> embedding;  // V x D, row i belongs to token index i
  LstmParameters<Scalar> lstm;

  Eigen::Index vocab_size() const { return embedding.rows(); }
  Eigen::Index dim() const { return embedding.cols(); }
  Eigen::Index hidden_size() const { return lstm.b_input.size(); }
};

// Visits every tensor in a fixed canonical order. Adam state, gradient
// clipping and the checkpoint format all rely on this order.
template <typename Scalar, typename Fn>
void for_each_tensor(Model<Scalar>& m, Fn&& fn) {
  fn(m.embedding);
  fn(m.lstm.w_input);
  fn(m.lstm.b_input);
  fn(m.lstm.w_forget);
  fn(m.lstm.b_forget);
  fn(m.lstm.w_output);
  fn(m.lstm.b_output);
  fn(m.lstm.w_candidate);
  fn(m.lstm.b_candidate);
  fn(m.lstm.w_project);
  fn(m.lstm.b_project);
}

template <typename Scalar, typename Fn>
void for_each_tensor(const Model<Scalar>& m, Fn&& fn) {
  for_each_tensor(const_cast<Model<Scalar>&>(m), [&](auto& t) { fn(std::as_const(t)); });
}

// Flat views over every tensor, index-aligned across models of equal shape.
template <typename Scalar>
std::vector<Eigen::Map<Vector<Scalar>>> tensor_views(Model<Scalar>& m) {
  std::vector<Eigen::Map<Vector<Scalar>>> views;
  for_each_tensor(m, [&](auto& t) {
    views.push_back(Eigen::Map<Vector<Scalar>>(t.data(), t.size()));
  });
  return views;
}

template <typename Scalar>
Model<Scalar> zeros_like(const Model<Scalar>& m) {
  Model<Scalar> z;
  z.embedding = Matrix<Scalar>::Zero(m.embedding.rows(), m.embedding.cols());
  auto zero_gate = [&](Matrix<Scalar>& w, Vector<Scalar>& b, const Matrix<Scalar>& sw,
                       const Vector<Scalar>& sb) {
    w = Matrix<Scalar>::Zero(sw.rows(), sw.cols());
    b = Vector<Scalar>::Zero(sb.size());
  };
  zero_gate(z.lstm.w_input, z.lstm.b_input, m.lstm.w_input, m.lstm.b_input);
  zero_gate(z.lstm.w_forget, z.lstm.b_forget, m.lstm.w_forget, m.lstm.b_forget);
  zero_gate(z.lstm.w_output, z.lstm.b_output, m.lstm.w_output, m.lstm.b_output);
  zero_gate(z.lstm.w_candidate, z.lstm.b_candidate, m.lstm.w_candidate, m.lstm.b_candidate);
  zero_gate(z.lstm.w_project, z.lstm.b_project, m.lstm.w_project, m.lstm.b_project);
  return z;
}

// Deterministic init: weights uniform in [-1/sqrt(fanin), +1/sqrt(fanin)]
// filled row by row, biases zero except the forget gate at 1.
template <typename Scalar>
Model<Scalar> init_parameters(int vocab_size, int dim, int hidden, std::uint64_t seed) {
  if (vocab_size < 1 || dim < 1 || hidden < 1) {
    throw Error("vocab_size, dim and hidden must all be at least 1");
  }
  Rng rng(seed);
  auto fill = [&rng](Matrix<Scalar>& m, int rows, int cols, int fanin) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fanin));
    m.resize(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        m(r, c) = static_cast<Scalar>(rng.uniform(-bound, bound));
      }
    }
  };

  Model<Scalar> model;
  fill(model.embedding, vocab_size, dim, dim);
  const int zdim = dim + hidden;
  fill(model.lstm.w_input, hidden, zdim, zdim);
  fill(model.lstm.w_forget, hidden, zdim, zdim);
  fill(model.lstm.w_output, hidden, zdim, zdim);
  fill(model.lstm.w_candidate, hidden, zdim, zdim);
  fill(model.lstm.w_project, vocab_size, hidden, hidden);
  model.lstm.b_input = Vector<Scalar>::Zero(hidden);
  model.lstm.b_forget = Vector<Scalar>::Constant(hidden, Scalar(1));
  model.lstm.b_output = Vector<Scalar>::Zero(hidden);
  model.lstm.b_candidate = Vector<Scalar>::Zero(hidden);
  model.lstm.b_project = Vector<Scalar>::Zero(vocab_size);
  return model;
}

// Activations of one unrolled pass, kept for backpropagation.
// Column t of `logits` scores the token following position t.
template <typename Scalar>
struct ForwardCache {
  Matrix<Scalar> logits;  // V x T
  Matrix<Scalar> probs;   // V x T, softmax per column
  Matrix<Scalar> inputs;  // (D+H) x T, stacked [x_t ; h_{t-1}]
  Matrix<Scalar> gate_i, gate_f, gate_o, gate_g;  // H x T
  Matrix<Scalar> cell, cell_tanh, hidden;         // H x T
};

template <typename Scalar>
ForwardCache<Scalar> forward(const Model<Scalar>& model, std::span<const std::size_t> tokens) {
  const auto V = model.vocab_size();
  const auto D = model.dim();
  const auto H = model.hidden_size();
  const auto T = static_cast<Eigen::Index>(tokens.size());
  if (T < 1) throw SequenceTooShort("forward needs at least one token");
  for (std::size_t tok : tokens) {
    if (tok >= static_cast<std::size_t>(V)) {
      throw IndexOutOfVocabulary("token index " + std::to_string(tok) +
                                 " is outside the vocabulary of size " + std::to_string(V));
    }
  }

  ForwardCache<Scalar> cache;
  cache.logits.resize(V, T);
  cache.probs.resize(V, T);
  cache.inputs.resize(D + H, T);
  cache.gate_i.resize(H, T);
  cache.gate_f.resize(H, T);
  cache.gate_o.resize(H, T);
  cache.gate_g.resize(H, T);
  cache.cell.resize(H, T);
  cache.cell_tanh.resize(H, T);
  cache.hidden.resize(H, T);

  auto sigmoid = [](const Vector<Scalar>& a) -> Vector<Scalar> {
    return (Scalar(1) / (Scalar(1) + (-a.array()).exp())).matrix();
  };

  Vector<Scalar> h_prev = Vector<Scalar>::Zero(H);
  Vector<Scalar> c_prev = Vector<Scalar>::Zero(H);
  for (Eigen::Index t = 0; t < T; ++t) {
    cache.inputs.col(t).head(D) = model.embedding.row(static_cast<Eigen::Index>(tokens[t])).transpose();
    cache.inputs.col(t).tail(H) = h_prev;
    const auto z = cache.inputs.col(t);

    cache.gate_i.col(t) = sigmoid(model.lstm.w_input * z + model.lstm.b_input);
    cache.gate_f.col(t) = sigmoid(model.lstm.w_forget * z + model.lstm.b_forget);
    cache.gate_o.col(t) = sigmoid(model.lstm.w_output * z + model.lstm.b_output);
    cache.gate_g.col(t) = (model.lstm.w_candidate * z + model.lstm.b_candidate).array().tanh();

    cache.cell.col(t) = cache.gate_f.col(t).cwiseProduct(c_prev) +
                        cache.gate_i.col(t).cwiseProduct(cache.gate_g.col(t));
    cache.cell_tanh.col(t) = cache.cell.col(t).array().tanh();
    cache.hidden.col(t) = cache.gate_o.col(t).cwiseProduct(cache.cell_tanh.col(t));

    cache.logits.col(t) = model.lstm.w_project * cache.hidden.col(t) + model.lstm.b_project;
    const Scalar peak = cache.logits.col(t).maxCoeff();
    Vector<Scalar> ex = (cache.logits.col(t).array() - peak).exp();
    cache.probs.col(t) = ex / ex.sum();

    h_prev = cache.hidden.col(t);
    c_prev = cache.cell.col(t);
  }
  return cache;
}

template <typename Scalar>
struct LossGrad {
  Scalar loss = 0;        // mean cross entropy per prediction step
  std::size_t pairs = 0;  // number of prediction steps, T-1
  Model<Scalar> grad;
};

// Backpropagation through time over one window. Gradients are of the mean
// per-step cross entropy; embedding rows of absent tokens stay exactly zero.
template <typename Scalar>
LossGrad<Scalar> loss_and_gradients(const Model<Scalar>& model,
                                    std::span<const std::size_t> tokens) {
  const auto T = static_cast<Eigen::Index>(tokens.size());
  if (T < 2) throw SequenceTooShort("need at least two tokens to form a prediction pair");
  const auto D = model.dim();
  const auto H = model.hidden_size();

  ForwardCache<Scalar> cache = forward(model, tokens);

  LossGrad<Scalar> out;
  out.pairs = static_cast<std::size_t>(T - 1);
  out.grad = zeros_like(model);
  const Scalar inv_pairs = Scalar(1) / static_cast<Scalar>(T - 1);

  double loss_acc = 0;
  for (Eigen::Index t = 0; t + 1 < T; ++t) {
    const auto target = static_cast<Eigen::Index>(tokens[t + 1]);
    loss_acc -= std::log(static_cast<double>(cache.probs(target, t)));
  }
  out.loss = static_cast<Scalar>(loss_acc / static_cast<double>(T - 1));

  auto& g = out.grad;
  Vector<Scalar> dh_next = Vector<Scalar>::Zero(H);
  Vector<Scalar> dc_next = Vector<Scalar>::Zero(H);
  for (Eigen::Index t = T - 1; t >= 0; --t) {
    Vector<Scalar> dh = dh_next;
    if (t + 1 < T) {  // the last step predicts nothing
      Vector<Scalar> dlogits = cache.probs.col(t) * inv_pairs;
      dlogits(static_cast<Eigen::Index>(tokens[t + 1])) -= inv_pairs;
      g.lstm.w_project.noalias() += dlogits * cache.hidden.col(t).transpose();
      g.lstm.b_project += dlogits;
      dh.noalias() += model.lstm.w_project.transpose() * dlogits;
    }

    const auto i = cache.gate_i.col(t).array();
    const auto f = cache.gate_f.col(t).array();
    const auto o = cache.gate_o.col(t).array();
    const auto gg = cache.gate_g.col(t).array();
    const auto tc = cache.cell_tanh.col(t).array();

    Vector<Scalar> dc = (dh.array() * o * (Scalar(1) - tc * tc)).matrix() + dc_next;
    Vector<Scalar> da_o = (dh.array() * tc * o * (Scalar(1) - o)).matrix();
    Vector<Scalar> da_i = (dc.array() * gg * i * (Scalar(1) - i)).matrix();
    Vector<Scalar> da_g = (dc.array() * i * (Scalar(1) - gg * gg)).matrix();
    Vector<Scalar> c_prev = t > 0 ? Vector<Scalar>(cache.cell.col(t - 1))
                                  : Vector<Scalar>(Vector<Scalar>::Zero(H));
    Vector<Scalar> da_f = (dc.array() * c_prev.array() * f * (Scalar(1) - f)).matrix();
    dc_next = (dc.array() * f).matrix();

    const auto z = cache.inputs.col(t);
    g.lstm.w_input.noalias() += da_i * z.transpose();
    g.lstm.w_forget.noalias() += da_f * z.transpose();
    g.lstm.w_output.noalias() += da_o * z.transpose();
    g.lstm.w_candidate.noalias() += da_g * z.transpose();
    g.lstm.b_input += da_i;
    g.lstm.b_forget += da_f;
    g.lstm.b_output += da_o;
    g.lstm.b_candidate += da_g;

    Vector<Scalar> dz = model.lstm.w_input.transpose() * da_i;
    dz.noalias() += model.lstm.w_forget.transpose() * da_f;
    dz.noalias() += model.lstm.w_output.transpose() * da_o;
    dz.noalias() += model.lstm.w_candidate.transpose() * da_g;

    g.embedding.row(static_cast<Eigen::Index>(tokens[t])) += dz.head(D).transpose();
    dh_next = dz.tail(H);
  }
  return out;
}

struct TrainConfig {
  int embedding_dim = 128;
  int hidden_size = 128;
  int window = 32;  // prediction steps per window; a window spans window+1 tokens
  int batch_size = 16;
  int epochs = 100;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;
};

struct TrainResult {
  Model<float> model;
  std::vector<double> loss_history;  // mean per-step cross entropy, one entry per epoch
};

// Adam (beta1 0.9, beta2 0.999, eps 1e-8) over shuffled fixed-stride
// windows, global gradient norm clipped at 5. Deterministic given the seed.
TrainResult train(const corpus::TrainingCorpus& corpus, const TrainConfig& config);

}  // namespace notespace::seqmodel
