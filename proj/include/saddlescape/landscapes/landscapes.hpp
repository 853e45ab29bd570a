// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/rng.hpp"
#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// Parameters of the four-term Muller-Brown surface plus the optional fifth
/// modification term.
struct MbParams {
  std::array<double, 4> A{-200.0, -100.0, -170.0, 15.0};
  std::array<double, 4> a{-1.0, -1.0, -6.5, 0.7};
  std::array<double, 4> b{0.0, 0.0, 11.0, 0.6};
  std::array<double, 4> c{-10.0, -10.0, -6.5, 0.7};
  std::array<double, 4> xbar{1.0, 0.0, -0.5, -1.0};
  std::array<double, 4> ybar{0.0, 0.5, 1.5, 1.0};
  // fifth term, active in the modified surface
  bool modified = false;
  double A5 = 500.0;
  double a5 = -0.1;
  double c5 = -0.1;
  double xbar5 = -0.5582;
  double ybar5 = 1.4417;
};

/// Two-dimensional Muller-Brown surface with analytic gradient and Hessian;
/// the known index-1 saddle is located by Newton iteration at construction.
EnergyLandscape mb_potential();

/// Muller-Brown surface with the additional sin(x y) Gaussian term.
EnergyLandscape modified_mb();

EnergyLandscape mb_landscape(const MbParams& p);

struct RosenbrockModParams {
  int d = 1000;
  /// Arctangent weights; s[i] = s_head for i < 5, 1 otherwise.
  double s_head = -500.0;
  /// Skips the construction-time dense eigensolve of the Hessian at the
  /// target (used by tests that do not need index/kappa metadata).
  bool classify_target = true;
};

/// d-dimensional Rosenbrock function plus quadratic-arctangent terms that
/// turn the all-ones minimum into a saddle. Analytic gradient, Hessian-vector
/// product (tridiagonal) and dense Hessian on demand.
EnergyLandscape rosenbrock_mod(const RosenbrockModParams& p);

struct Convex2Params {
  int d = 100;
  int k = 5;
};

/// Separable surface sum_i s_i a_i (exp(x_i) - x_i)/10 with a_i = 1 + 5(i-1)
/// and the first k signs flipped; the origin is an index-k saddle.
EnergyLandscape convex2(const Convex2Params& p);

struct LinearNetSpec {
  int depth = 5;                      // number of weight matrices
  std::vector<int> dims{10, 10, 10, 10, 10, 4};  // d_0 .. d_H
  int samples = 100;                  // data points m
  std::vector<int> index_set{1, 2, 3};  // 1-based subset of {1..r_max}
  std::uint64_t seed = 0;
  /// Explicit data; when absent, X and Y are drawn i.i.d. standard normal
  /// from the seed.
  std::optional<Matrix> X;
  std::optional<Matrix> Y;
};

struct LinearNetBuild {
  EnergyLandscape landscape;
  Vector w_star;                // vectorized saddle construction
  std::vector<int> layer_rows;  // d_{h}, h = 1..H
  std::vector<int> layer_cols;  // d_{h-1}
};

/// Frobenius loss of a deep linear network on seeded Gaussian data, as a
/// landscape over the row-major vectorized weights. The known saddle is the
/// closed-form construction below; its index is measured from the assembled
/// Hessian at construction.
LinearNetBuild linear_net_loss(const LinearNetSpec& spec);

/// Closed-form saddle of the deep linear network loss: the first layer maps
/// data onto the index_set eigendirections of Sigma, middle layers are
/// identities, and the last layer re-embeds the selected directions.
Vector construct_nn_saddle(const LinearNetSpec& spec);

/// Layerwise Gaussian perturbation of w_star with per-layer deviation
/// 0.5 ||W_h*||_F / sqrt(d_{h-1} d_h).
Vector layerwise_gaussian_point(const LinearNetBuild& build, Rng& rng);

/// Separable quadratic E(x) = 1/2 sum_i lambda_i x_i^2; oracle family for
/// rate and stability tests.
EnergyLandscape quadratic_landscape(const Vector& eigvals);

}  // namespace saddlescape
