#include "notespace/seqmodel.hpp"

#include <algorithm>
#include <cmath>

namespace notespace::seqmodel {
namespace {

struct Window {
  std::size_t sequence;
  std::size_t start;
  std::size_t length;  // token count, >= 2
};

// Fixed-stride windows of config.window prediction steps. Consecutive
// windows share one token so every (x, y) pair is covered exactly once.
std::vector<Window> make_windows(const corpus::TrainingCorpus& corpus, int window) {
  std::vector<Window> out;
  const std::size_t stride = static_cast<std::size_t>(window);
  for (std::size_t s = 0; s < corpus.sequences.size(); ++s) {
    const std::size_t len = corpus.sequences[s].size();
    for (std::size_t start = 0; start + 1 < len; start += stride) {
      out.push_back({s, start, std::min(stride + 1, len - start)});
    }
  }
  return out;
}

}  // namespace

TrainResult train(const corpus::TrainingCorpus& corpus, const TrainConfig& config) {
  if (corpus.sequences.empty()) throw EmptyCorpus("cannot train on an empty corpus");
  if (config.embedding_dim < 1 || config.hidden_size < 1 || config.window < 1 ||
      config.batch_size < 1 || config.epochs < 1 || config.learning_rate <= 0) {
    throw Error("train config fields must all be positive");
  }

  const int vocab = static_cast<int>(corpus.vocabulary.size());
  Model<float> model = init_parameters<float>(vocab, config.embedding_dim,
                                              config.hidden_size, config.seed);
  Model<float> adam_m = zeros_like(model);
  Model<float> adam_v = zeros_like(model);
  Model<float> batch_grad = zeros_like(model);

  auto params = tensor_views(model);
  auto ms = tensor_views(adam_m);
  auto vs = tensor_views(adam_v);
  auto grads = tensor_views(batch_grad);

  std::vector<Window> windows = make_windows(corpus, config.window);
  if (windows.empty()) throw EmptyCorpus("corpus yields no training windows");

  Rng shuffle_rng(config.seed + 1);  // separate stream from init
  constexpr float beta1 = 0.9f;
  constexpr float beta2 = 0.999f;
  constexpr float eps = 1e-8f;
  constexpr double clip_norm = 5.0;
  long step = 0;

  TrainResult result;
  result.loss_history.reserve(config.epochs);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.shuffle(windows);
    double epoch_loss = 0;
    std::size_t epoch_pairs = 0;

    for (std::size_t first = 0; first < windows.size();
         first += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t last =
          std::min(windows.size(), first + static_cast<std::size_t>(config.batch_size));

      for (auto& g : grads) g.setZero();
      std::size_t batch_pairs = 0;
      for (std::size_t w = first; w < last; ++w) {
        const auto& win = windows[w];
        std::span<const std::size_t> tokens(corpus.sequences[win.sequence].data() + win.start,
                                            win.length);
        auto lg = loss_and_gradients(model, tokens);
        auto wgrads = tensor_views(lg.grad);
        const float weight = static_cast<float>(lg.pairs);
        for (std::size_t i = 0; i < grads.size(); ++i) grads[i] += weight * wgrads[i];
        batch_pairs += lg.pairs;
        epoch_loss += static_cast<double>(lg.loss) * static_cast<double>(lg.pairs);
        epoch_pairs += lg.pairs;
      }

      // pair-weighted mean, then clip the global norm
      const float inv_pairs = 1.0f / static_cast<float>(batch_pairs);
      double sq_norm = 0;
      for (auto& g : grads) {
        g *= inv_pairs;
        sq_norm += static_cast<double>(g.squaredNorm());
      }
      const double norm = std::sqrt(sq_norm);
      if (norm > clip_norm) {
        const float scale = static_cast<float>(clip_norm / norm);
        for (auto& g : grads) g *= scale;
      }

      ++step;
      const float ic1 = static_cast<float>(1.0 / (1.0 - std::pow(beta1, static_cast<double>(step))));
      const float ic2 = static_cast<float>(1.0 / (1.0 - std::pow(beta2, static_cast<double>(step))));
      const float lr = static_cast<float>(config.learning_rate);
      for (std::size_t i = 0; i < params.size(); ++i) {
        ms[i] = beta1 * ms[i] + (1.0f - beta1) * grads[i];
        vs[i] = (beta2 * vs[i].array() + (1.0f - beta2) * grads[i].array().square()).matrix();
        params[i].array() -= lr * (ms[i].array() * ic1) / ((vs[i].array() * ic2).sqrt() + eps);
      }
    }

    result.loss_history.push_back(epoch_loss / static_cast<double>(epoch_pairs));
  }

  result.model = std::move(model);
  return result;
}

}  // namespace notespace::seqmodel
