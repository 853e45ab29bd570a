// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace saddlescape {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for all structured errors thrown by this library.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
class DimensionError : public Error {
  using Error::Error;
};

/// An iteration produced non-finite values.
class DivergenceError : public Error {
  using Error::Error;
};

/// A matrix expected to have full column rank does not.
class RankDeficiencyError : public Error {
  using Error::Error;
};

/// Invalid experiment configuration (bad value, unknown key, parse failure).
class ConfigError : public Error {
  using Error::Error;
};

/// A known critical point of a landscape, used as the reference target for
/// error traces and stationarity checks.
struct SaddleTarget {
  Vector x_star;
  int index_k = 0;
  /// Condition number |lambda|_max / |lambda|_min of the Hessian at x_star.
  std::optional<double> kappa;
  /// Full Hessian spectrum at x_star, ascending.
  std::optional<Vector> eigvals;
  /// Set for landscapes whose Hessian at x_star has (near-)zero eigenvalues.
  bool degenerate = false;
};

/// The k orthonormal directions tracked alongside the position, together with
/// their Rayleigh quotients (ascending after every eigensolver call).
struct SpectralFrame {
  Matrix vectors;   // dim x k, orthonormal columns
  Vector rayleigh;  // k entries

  int k() const { return static_cast<int>(vectors.cols()); }
  int dim() const { return static_cast<int>(vectors.rows()); }

  static SpectralFrame empty(int dim) {
    SpectralFrame f;
    f.vectors = Matrix::Zero(dim, 0);
    f.rayleigh = Vector::Zero(0);
    return f;
  }
};

enum class EigSolverKind { sirqit, lobpcg, dense };
enum class StopMetric { distance_to_known, grad_norm };
enum class FrameInit { random_warmup, dense_oracle };

std::string to_string(EigSolverKind k);
std::string to_string(StopMetric m);
std::string to_string(FrameInit f);
EigSolverKind eig_solver_from_string(const std::string& s);
StopMetric stop_metric_from_string(const std::string& s);
FrameInit frame_init_from_string(const std::string& s);

/// Solver settings shared by every outer iteration scheme.
struct SolverParams {
  double beta = 1e-3;       // position step size
  double gamma = 0.0;       // heavy-ball momentum, in [0, 1)
  double zeta = 0.0;        // eigenvector relaxation; 0 selects the automatic choice
  double dimer_l = 1e-3;    // dimer length for Hessian-vector approximation
  int k = 1;                // target saddle index
  double eps = 0.0;         // rate-estimate epsilon (informational)
  EigSolverKind eig_solver = EigSolverKind::sirqit;
  int eig_inner_iters = 1;
  double eig_tol = 1e-10;
  int max_iter = 60000;
  double stop_tol = 1e-6;
  StopMetric stop_metric = StopMetric::distance_to_known;
  double bb_tau = 0.5;
  std::uint64_t seed = 0;
  FrameInit init_frame = FrameInit::random_warmup;

  /// Throws ConfigError if any invariant (beta > 0, gamma in [0,1),
  /// dimer_l > 0, stop_tol > 0, ...) is violated.
  void validate() const;
};

/// Position state of one run. At iteration 0, x_prev equals x.
struct SolverState {
  Vector x;
  Vector x_prev;
  SpectralFrame frame;
  int iter = 0;
};

struct TraceRecord {
  int iter = 0;
  double err = std::numeric_limits<double>::quiet_NaN();  // NaN when no known saddle
  double grad_norm = 0.0;
  double energy = 0.0;
  std::int64_t wall_ns = 0;
};

/// Per-iteration records of a run; drives every convergence check and plot.
struct IterationTrace {
  std::vector<TraceRecord> records;
  bool diverged = false;
  bool converged = false;
};

}  // namespace saddlescape
