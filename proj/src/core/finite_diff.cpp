// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include "saddlescape/core/finite_diff.hpp"

#include <cmath>

namespace saddlescape {

Vector finite_diff_gradient(const EnergyLandscape& land, const Vector& x, double h) {
  if (!(h > 0.0)) throw Error("finite_diff_gradient: step must be positive");
  const int d = land.dim();
  Vector g(d);
  Vector xp = x;
  for (int i = 0; i < d; ++i) {
    const double xi = x[i];
    xp[i] = xi + h;
    const double ep = land.energy(xp);
    xp[i] = xi - h;
    const double em = land.energy(xp);
    xp[i] = xi;
    g[i] = (ep - em) / (2.0 * h);
  }
  return g;
}

Vector finite_diff_gradient_scaled(const EnergyLandscape& land, const Vector& x, double h_rel) {
  if (!(h_rel > 0.0)) throw Error("finite_diff_gradient_scaled: step must be positive");
  const int d = land.dim();
  Vector g(d);
  Vector xp = x;
  for (int i = 0; i < d; ++i) {
    const double xi = x[i];
    const double h = h_rel * (1.0 + std::abs(xi));
    xp[i] = xi + h;
    const double ep = land.energy(xp);
    xp[i] = xi - h;
    const double em = land.energy(xp);
    xp[i] = xi;
    g[i] = (ep - em) / (2.0 * h);
  }
  return g;
}

Matrix finite_diff_hessian(const EnergyLandscape& land, const Vector& x, double h) {
  if (!(h > 0.0)) throw Error("finite_diff_hessian: step must be positive");
  const int d = land.dim();
  Matrix H(d, d);
  Vector xp = x;
  for (int j = 0; j < d; ++j) {
    const double xj = x[j];
    xp[j] = xj + h;
    const Vector gp = land.gradient(xp);
    xp[j] = xj - h;
    const Vector gm = land.gradient(xp);
    xp[j] = xj;
    H.col(j) = (gp - gm) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace saddlescape
