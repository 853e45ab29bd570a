// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>

#include "saddlescape/landscapes/landscapes.hpp"

namespace saddlescape {

namespace {

struct RosenData {
  int d;
  Vector s;
};

double rosen_energy(const RosenData& rd, const Vector& x) {
  double e = 0.0;
  for (int i = 0; i + 1 < rd.d; ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    const double u = 1.0 - x[i];
    e += 100.0 * t * t + u * u;
  }
  for (int i = 0; i < rd.d; ++i) {
    const double at = std::atan(x[i] - 1.0);
    e += rd.s[i] * at * at;
  }
  return e;
}

Vector rosen_gradient(const RosenData& rd, const Vector& x) {
  Vector g = Vector::Zero(rd.d);
  for (int i = 0; i + 1 < rd.d; ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    g[i] += -400.0 * x[i] * t - 2.0 * (1.0 - x[i]);
    g[i + 1] += 200.0 * t;
  }
  for (int i = 0; i < rd.d; ++i) {
    const double u = x[i] - 1.0;
    g[i] += rd.s[i] * 2.0 * std::atan(u) / (1.0 + u * u);
  }
  return g;
}

// tridiagonal Hessian: main diagonal and subdiagonal
void rosen_hess_bands(const RosenData& rd, const Vector& x, Vector& diag, Vector& sub) {
  diag.setZero(rd.d);
  sub.setZero(rd.d - 1);
  for (int i = 0; i + 1 < rd.d; ++i) {
    const double t = x[i + 1] - x[i] * x[i];
    diag[i] += -400.0 * t + 800.0 * x[i] * x[i] + 2.0;
    diag[i + 1] += 200.0;
    sub[i] = -400.0 * x[i];
  }
  for (int i = 0; i < rd.d; ++i) {
    const double u = x[i] - 1.0;
    const double w = 1.0 + u * u;
    diag[i] += rd.s[i] * (2.0 - 4.0 * u * std::atan(u)) / (w * w);
  }
}

}  // namespace

EnergyLandscape rosenbrock_mod(const RosenbrockModParams& p) {
  if (p.d < 2) throw Error("rosenbrock_mod: dimension must be at least 2");
  auto rd = std::make_shared<RosenData>();
  rd->d = p.d;
  rd->s = Vector::Ones(p.d);
  for (int i = 0; i < std::min(5, p.d); ++i) rd->s[i] = p.s_head;

  auto energy = [rd](const Vector& x) { return rosen_energy(*rd, x); };
  auto gradient = [rd](const Vector& x) { return rosen_gradient(*rd, x); };
  auto hessian_vec = [rd](const Vector& x, const Vector& v) {
    Vector diag, sub;
    rosen_hess_bands(*rd, x, diag, sub);
    Vector out = diag.cwiseProduct(v);
    for (int i = 0; i + 1 < rd->d; ++i) {
      out[i] += sub[i] * v[i + 1];
      out[i + 1] += sub[i] * v[i];
    }
    return out;
  };
  auto hessian = [rd](const Vector& x) {
    Vector diag, sub;
    rosen_hess_bands(*rd, x, diag, sub);
    Matrix H = Matrix::Zero(rd->d, rd->d);
    H.diagonal() = diag;
    for (int i = 0; i + 1 < rd->d; ++i) {
      H(i, i + 1) = sub[i];
      H(i + 1, i) = sub[i];
    }
    return H;
  };

  EnergyLandscape land(p.s_head == -500.0 ? "rosenbrock_i" : "rosenbrock_ii", p.d, energy, gradient);
  land.with_hessian(hessian).with_hessian_vec(hessian_vec);

  SaddleTarget t;
  t.x_star = Vector::Ones(p.d);
  if (p.classify_target) {
    // one-time spectrum of the target Hessian; runs use the banded product
    Vector diag, sub;
    rosen_hess_bands(*rd, t.x_star, diag, sub);
    Matrix H = Matrix::Zero(p.d, p.d);
    H.diagonal() = diag;
    for (int i = 0; i + 1 < p.d; ++i) {
      H(i, i + 1) = sub[i];
      H(i + 1, i) = sub[i];
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
    const Vector w = es.eigenvalues();
    t.eigvals = w;
    t.index_k = static_cast<int>((w.array() < 0.0).count());
    t.kappa = w.cwiseAbs().maxCoeff() / w.cwiseAbs().minCoeff();
  }
  land.with_known_saddle(std::move(t));
  return land;
}

}  // namespace saddlescape
