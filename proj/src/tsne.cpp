#include "notespace/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "notespace/rng.hpp"

namespace notespace::tsne {
namespace {

// log2 of the Shannon perplexity of the Gaussian row at bandwidth sigma
double log2_perplexity(const Eigen::VectorXd& sq_dists, double sigma) {
  const double beta = 1.0 / (2.0 * sigma * sigma);
  const double shift = sq_dists.minCoeff();
  Eigen::VectorXd weights = (-(sq_dists.array() - shift) * beta).exp();
  const double total = weights.sum();
  double entropy_nats = 0;  // -sum p ln p
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    const double p = weights[j] / total;
    if (p > 0) entropy_nats -= p * std::log(p);
  }
  return entropy_nats / std::numbers::ln2;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d2(i, i) = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).squaredNorm();
      d2(i, j) = d;
      d2(j, i) = d;
    }
  }
  return d2;
}

// Student-t similarity weights w_ij = 1 / (1 + |y_i - y_j|^2) and their sum
std::pair<Eigen::MatrixXd, double> student_weights(const Eigen::MatrixXd& y) {
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd w(n, n);
  double sum = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, i) = 0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
      w(i, j) = v;
      w(j, i) = v;
      sum += 2.0 * v;
    }
  }
  return {std::move(w), sum};
}

}  // namespace

double perplexity_search(const Eigen::VectorXd& sq_dists, double target_perplexity) {
  const Eigen::Index n = sq_dists.size();
  if (n < 1) throw DegenerateRow("distance row is empty");
  if (sq_dists.maxCoeff() <= 0.0) {
    throw DegenerateRow("all distances in the row are zero");
  }
  if (target_perplexity < 2.0 || target_perplexity > static_cast<double>(n)) {
    throw Error("target perplexity must lie in [2, V-1]");
  }

  const double target = std::log2(target_perplexity);
  double lo = 0.0;
  double hi = std::sqrt(sq_dists.maxCoeff()) + 1.0;
  while (log2_perplexity(sq_dists, hi) < target && hi < 1e12) hi *= 2.0;

  double sigma = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    sigma = 0.5 * (lo + hi);
    const double value = log2_perplexity(sq_dists, sigma);
    // keep narrowing past the entropy tolerance so the root itself is tight
    if (std::abs(value - target) < 1e-5 && (hi - lo) < 1e-12 * std::max(1.0, sigma)) {
      break;
    }
    if (value > target) hi = sigma;
    else lo = sigma;
  }
  return sigma;
}

AffinityMatrix compute_affinities(const Eigen::MatrixXd& points, double perplexity) {
  const Eigen::Index n = points.rows();
  if (n < 4) throw Error("need at least 4 points for meaningful affinities");
  if (perplexity < 2.0 || perplexity > static_cast<double>(n - 1)) {
    throw Error("perplexity must lie in [2, V-1]");
  }

  const Eigen::MatrixXd d2 = squared_distances(points);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (d2(i, j) == 0.0) {
        throw DuplicatePoints(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                              "points " + std::to_string(i) + " and " + std::to_string(j) +
                                  " coincide; affinities are undefined for duplicates");
      }
    }
  }

  Eigen::MatrixXd conditional = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd row(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) row[k++] = d2(i, j);
    }
    const double sigma = perplexity_search(row, perplexity);
    const double beta = 1.0 / (2.0 * sigma * sigma);
    const double shift = row.minCoeff();
    double total = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = std::exp(-(d2(i, j) - shift) * beta);
      conditional(i, j) = w;
      total += w;
    }
    conditional.row(i) /= total;
  }

  AffinityMatrix out;
  out.perplexity = perplexity;
  out.p = (conditional + conditional.transpose()) / (2.0 * static_cast<double>(n));
  return out;
}

double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y) {
  const auto [w, sum] = student_weights(y);
  const Eigen::Index n = p.rows();
  double kl = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || p(i, j) <= 0) continue;
      kl += p(i, j) * std::log(p(i, j) * sum / w(i, j));
    }
  }
  return kl;
}

Eigen::MatrixXd kl_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y) {
  const auto [w, sum] = student_weights(y);
  const Eigen::Index n = y.rows();
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(n, y.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double q = w(i, j) / sum;
      const double coeff = 4.0 * (p(i, j) - q) * w(i, j);
      grad.row(i) += coeff * (y.row(i) - y.row(j));
    }
  }
  return grad;
}

Projection tsne_optimize(const AffinityMatrix& affinities, int dims, const TsneConfig& config) {
  if (dims != 2 && dims != 3) {
    throw WrongDimensionality("projection dimension must be 2 or 3");
  }
  const Eigen::Index n = affinities.p.rows();

  Rng rng(config.seed);
  Eigen::MatrixXd y(n, dims);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < dims; ++c) {
      y(r, c) = config.init_stddev * rng.gaussian();
    }
  }

  const Eigen::MatrixXd exaggerated = config.early_exaggeration * affinities.p;
  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, dims);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, dims);

  Projection out;
  out.kl_history.reserve(config.iterations);
  for (int iter = 0; iter < config.iterations; ++iter) {
    const bool exaggerate = iter < config.exaggeration_iterations;
    Eigen::MatrixXd grad = kl_gradient(exaggerate ? exaggerated : affinities.p, y);
    if (!grad.allFinite()) {
      throw NonFiniteGradient(static_cast<std::size_t>(iter),
                              "non-finite t-SNE gradient at iteration " + std::to_string(iter));
    }

    const double momentum =
        iter < config.momentum_switch ? config.momentum_initial : config.momentum_final;
    // per-coordinate gains as in the reference momentum scheme: grow while
    // the gradient keeps opposing the current velocity, shrink otherwise
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < dims; ++c) {
        if ((grad(r, c) > 0.0) != (velocity(r, c) > 0.0)) gains(r, c) += 0.2;
        else gains(r, c) *= 0.8;
        gains(r, c) = std::max(gains(r, c), 0.01);
      }
    }
    velocity = momentum * velocity -
               config.learning_rate * gains.cwiseProduct(grad);
    y += velocity;
    y.rowwise() -= y.colwise().mean();  // keep the embedding centered

    out.kl_history.push_back(kl_divergence(affinities.p, y));
  }

  out.points = std::move(y);
  return out;
}

}  // namespace notespace::tsne
