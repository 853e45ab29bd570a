// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <memory>

#include "saddlescape/landscapes/landscapes.hpp"

namespace saddlescape {

EnergyLandscape convex2(const Convex2Params& p) {
  if (p.d <= 0 || p.k < 0 || p.k > p.d) throw Error("convex2: invalid dimensions");
  auto sa = std::make_shared<Vector>(p.d);
  for (int i = 0; i < p.d; ++i) {
    const double a = 1.0 + 5.0 * static_cast<double>(i);
    (*sa)[i] = (i < p.k ? -1.0 : 1.0) * a / 10.0;
  }

  auto energy = [sa](const Vector& x) {
    double e = 0.0;
    for (int i = 0; i < x.size(); ++i) e += (*sa)[i] * (std::exp(x[i]) - x[i]);
    return e;
  };
  auto gradient = [sa](const Vector& x) {
    Vector g(x.size());
    for (int i = 0; i < x.size(); ++i) g[i] = (*sa)[i] * (std::exp(x[i]) - 1.0);
    return g;
  };
  auto hessian = [sa](const Vector& x) {
    Matrix H = Matrix::Zero(x.size(), x.size());
    for (int i = 0; i < x.size(); ++i) H(i, i) = (*sa)[i] * std::exp(x[i]);
    return H;
  };
  auto hessian_vec = [sa](const Vector& x, const Vector& v) {
    Vector out(x.size());
    for (int i = 0; i < x.size(); ++i) out[i] = (*sa)[i] * std::exp(x[i]) * v[i];
    return out;
  };

  EnergyLandscape land("convex2", p.d, energy, gradient);
  land.with_hessian(hessian).with_hessian_vec(hessian_vec);

  SaddleTarget t;
  t.x_star = Vector::Zero(p.d);
  t.index_k = p.k;
  Vector ev = *sa;
  std::sort(ev.data(), ev.data() + ev.size());
  t.eigvals = ev;
  t.kappa = sa->cwiseAbs().maxCoeff() / sa->cwiseAbs().minCoeff();
  land.with_known_saddle(std::move(t));
  return land;
}

EnergyLandscape quadratic_landscape(const Vector& eigvals) {
  if (eigvals.size() == 0) throw Error("quadratic_landscape: empty spectrum");
  for (int i = 0; i < eigvals.size(); ++i) {
    if (eigvals[i] == 0.0) throw Error("quadratic_landscape: zero eigenvalue not allowed");
  }
  auto lam = std::make_shared<Vector>(eigvals);
  const int d = static_cast<int>(eigvals.size());

  EnergyLandscape land(
      "quadratic", d, [lam](const Vector& x) { return 0.5 * lam->cwiseProduct(x).dot(x); },
      [lam](const Vector& x) { return lam->cwiseProduct(x).eval(); });
  land.with_hessian([lam, d](const Vector&) {
    Matrix H = Matrix::Zero(d, d);
    H.diagonal() = *lam;
    return H;
  });
  land.with_hessian_vec([lam](const Vector&, const Vector& v) { return lam->cwiseProduct(v).eval(); });

  SaddleTarget t;
  t.x_star = Vector::Zero(d);
  t.index_k = static_cast<int>((eigvals.array() < 0.0).count());
  Vector ev = eigvals;
  std::sort(ev.data(), ev.data() + ev.size());
  t.eigvals = ev;
  t.kappa = eigvals.cwiseAbs().maxCoeff() / eigvals.cwiseAbs().minCoeff();
  land.with_known_saddle(std::move(t));
  return land;
}

}  // namespace saddlescape
