// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "saddlescape/stability/stability.hpp"

namespace saddlescape {

namespace {

void check_steady(const EnergyLandscape& land, const SteadyState& state, const Matrix& H, const Vector& g) {
  if (state.x.size() != land.dim()) throw DimensionError("stability: state dimension mismatch");
  if (state.V.cols() > 0 && state.V.rows() != land.dim()) throw DimensionError("stability: frame dimension mismatch");
  if (state.V.cols() > 0 &&
      (state.V.transpose() * state.V - Matrix::Identity(state.V.cols(), state.V.cols())).cwiseAbs().maxCoeff() >
          1e-8) {
    throw Error("stability: frame is not orthonormal");
  }
  if (g.norm() > 1e-8) {
    throw Error("stability: not a steady state (gradient norm " + std::to_string(g.norm()) + " > 1e-8)");
  }
  for (int i = 0; i < state.V.cols(); ++i) {
    const Vector hv = H * state.V.col(i);
    const double lam = state.V.col(i).dot(hv);
    if ((hv - lam * state.V.col(i)).norm() > 1e-8) {
      throw Error("stability: frame column " + std::to_string(i) + " is not an eigenvector to 1e-8");
    }
  }
}

}  // namespace

Matrix assemble_jacobian(const EnergyLandscape& land, const SteadyState& state, const ContinuousParams& cp) {
  if (!land.has_hessian()) throw Error("stability: landscape must provide a dense Hessian");
  const int d = land.dim();
  const int k = static_cast<int>(state.V.cols());
  const int n = d * (k + 2) + 1;
  if (n > 5000) throw Error("stability: Jacobian dimension " + std::to_string(n) + " exceeds the dense guard");

  const Matrix H = land.hessian(state.x);
  const Vector g = land.gradient(state.x);
  check_steady(land, state, H, g);

  const auto xr = 0;          // x rows
  const auto mr = d;          // m rows
  const auto vr = [d](int i) { return 2 * d + i * d; };
  const int lr = d * (k + 2);

  Matrix J = Matrix::Zero(n, n);

  // dx/dt = m
  J.block(xr, mr, d, d) = Matrix::Identity(d, d);

  // dm/dt = -alpha1 m - alpha2 (I - 2 V V^T) grad E
  Matrix PkH = H;
  if (k > 0) PkH -= 2.0 * state.V * (state.V.transpose() * H);
  J.block(mr, xr, d, d) = -cp.alpha2 * PkH;
  J.block(mr, mr, d, d) = -cp.alpha1 * Matrix::Identity(d, d);
  for (int i = 0; i < k; ++i) {
    const double vg = state.V.col(i).dot(g);
    J.block(mr, vr(i), d, d) =
        2.0 * cp.alpha2 * (vg * Matrix::Identity(d, d) + state.V.col(i) * g.transpose());
  }

  // position coupling of the frame rows: directional derivative of the
  // Hessian, taken by central differences of the analytic Hessian
  if (k > 0) {
    std::vector<Matrix> C(k, Matrix::Zero(d, d));
    Vector xp = state.x;
    for (int j = 0; j < d; ++j) {
      const double xj = state.x[j];
      const double h = 1e-6 * (1.0 + std::abs(xj));
      xp[j] = xj + h;
      const Matrix Hp = land.hessian(xp);
      xp[j] = xj - h;
      const Matrix Hm = land.hessian(xp);
      xp[j] = xj;
      const Matrix dH = (Hp - Hm) / (2.0 * h);
      for (int i = 0; i < k; ++i) C[i].col(j) = dH * state.V.col(i);
    }
    for (int i = 0; i < k; ++i) {
      // deflated projector P_{i-1} - v_i v_i^T applied from the left
      Matrix Pi = C[i];
      Pi -= state.V.col(i) * (state.V.col(i).transpose() * C[i]);
      for (int j = 0; j < i; ++j) Pi -= 2.0 * state.V.col(j) * (state.V.col(j).transpose() * C[i]);
      J.block(vr(i), xr, d, d) = -cp.zeta * Pi;
    }
  }

  // dv_i/dt = -zeta (P_{i-1} - v_i v_i^T) H v_i, in the l -> 0 limit
  for (int i = 0; i < k; ++i) {
    const Vector vi = state.V.col(i);
    const Vector Hvi = H * vi;

    Matrix Jii = H;
    Jii -= vi * (vi.transpose() * H);
    for (int j = 0; j < i; ++j) Jii -= 2.0 * state.V.col(j) * (state.V.col(j).transpose() * H);
    Jii = -cp.zeta * Jii;
    Jii += cp.zeta * (vi.dot(Hvi) * Matrix::Identity(d, d) + vi * Hvi.transpose());
    J.block(vr(i), vr(i), d, d) = Jii;

    for (int j = 0; j < i; ++j) {
      const Vector vj = state.V.col(j);
      J.block(vr(i), vr(j), d, d) = 2.0 * cp.zeta * (vj.dot(Hvi) * Matrix::Identity(d, d) + vj * Hvi.transpose());
    }
    // l-column of the v_i rows vanishes in the limit
  }

  J(lr, lr) = -1.0;
  return J;
}

SpectrumReport check_linear_stability(const EnergyLandscape& land, const SteadyState& state,
                                      const ContinuousParams& cp, double tol_margin) {
  const Matrix J = assemble_jacobian(land, state, cp);

  Eigen::EigenSolver<Matrix> es(J, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("check_linear_stability: eigensolve failed");

  SpectrumReport report;
  const auto& ev = es.eigenvalues();
  report.eigvals.reserve(ev.size());
  report.max_real = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < ev.size(); ++i) {
    report.eigvals.emplace_back(ev[i].real(), ev[i].imag());
    report.max_real = std::max(report.max_real, ev[i].real());
  }
  report.stable = report.max_real < -tol_margin;

  const int k = static_cast<int>(state.V.cols());
  if (k > 0) {
    const Matrix H = land.hessian(state.x);
    Vector ray(k);
    for (int i = 0; i < k; ++i) ray[i] = state.V.col(i).dot(H * state.V.col(i));
    report.mu_star = ray.cwiseAbs().minCoeff();
    report.hypothesis_satisfied = cp.alpha1 * cp.alpha1 <= 4.0 * cp.alpha2 * report.mu_star + 1e-12;
    std::sort(ray.data(), ray.data() + k);
    for (int i = 0; i + 1 < k; ++i) {
      if (ray[i + 1] - ray[i] < 1e-8) report.degenerate_gap_warning = true;
    }
  } else {
    report.hypothesis_satisfied = true;
  }
  return report;
}

}  // namespace saddlescape
