#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "notespace/errors.hpp"

namespace notespace::tsne {

// Symmetric joint probabilities over point pairs: zero diagonal,
// non-negative, total sum 1.
struct AffinityMatrix {
  Eigen::MatrixXd p;
  double perplexity = 0;
};

// Bisects the Gaussian bandwidth sigma of one conditional row until its
// Shannon perplexity matches the target within 1e-5 in log2, at most 200
// iterations. `squared_distances` holds the V-1 squared distances from the
// row's point to every other point.
double perplexity_search(const Eigen::VectorXd& squared_distances, double target_perplexity);

// Conditional Gaussian rows at the requested perplexity, symmetrized as
// (p(j|i) + p(i|j)) / 2V. Identical input rows are rejected with the pair
// of offending row indices (DuplicatePoints).
AffinityMatrix compute_affinities(const Eigen::MatrixXd& points, double perplexity);

struct TsneConfig {
  int iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double momentum_initial = 0.5;
  double momentum_final = 0.8;
  int momentum_switch = 250;
  double init_stddev = 1e-2;  // Gaussian init with variance 1e-4
  std::uint64_t seed = 0;
};

struct Projection {
  Eigen::MatrixXd points;           // V x K
  std::vector<std::string> labels;  // aligned to rows, filled by the caller
  std::vector<double> kl_history;   // per iteration, against the plain P
};

// Momentum gradient descent on the Student-t low-dimensional similarities.
// Deterministic given the seed; a non-finite gradient aborts with the
// iteration index.
Projection tsne_optimize(const AffinityMatrix& affinities, int dims, const TsneConfig& config);

// sum over i != j of P_ij log(P_ij / Q_ij), with 0 log 0 = 0
double kl_divergence(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y);

// dKL/dY: 4 sum_j (P_ij - Q_ij) (y_i - y_j) / (1 + |y_i - y_j|^2)
Eigen::MatrixXd kl_gradient(const Eigen::MatrixXd& p, const Eigen::MatrixXd& y);

}  // namespace notespace::tsne
