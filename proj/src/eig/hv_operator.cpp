// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include "saddlescape/eig/hv_operator.hpp"

#include <cmath>

namespace saddlescape {

Vector dimer_hv(const EnergyLandscape& land, const Vector& x, const Vector& v, double l) {
  if (l == 0.0) throw Error("dimer_hv: dimer length is zero (division by zero)");
  if (l < 0.0) throw Error("dimer_hv: dimer length must be positive");
  const double nv = v.norm();
  if (std::abs(nv - 1.0) > 1e-6) {
    throw Error("dimer_hv: direction must be a unit vector (norm = " + std::to_string(nv) + ")");
  }
  return (land.gradient(x + l * v) - land.gradient(x - l * v)) / (2.0 * l);
}

HvOperator HvOperator::at_point(const EnergyLandscape& land, const Vector& x, double dimer_l) {
  if (land.has_hessian_vec()) {
    return HvOperator([&land, x](const Vector& v) { return land.hessian_vec(x, v); }, Kind::analytic, land.dim());
  }
  if (!(dimer_l > 0.0)) throw Error("HvOperator: dimer length must be positive");
  auto apply = [&land, x, dimer_l](const Vector& v) -> Vector {
    const double nv = v.norm();
    if (nv == 0.0 || !std::isfinite(nv)) return Vector::Zero(v.size());
    const Vector unit = v / nv;
    return nv * (land.gradient(x + dimer_l * unit) - land.gradient(x - dimer_l * unit)) / (2.0 * dimer_l);
  };
  return HvOperator(std::move(apply), Kind::dimer, land.dim());
}

HvOperator HvOperator::from_matrix(const Matrix& H) {
  if (H.rows() != H.cols()) throw DimensionError("HvOperator::from_matrix: matrix must be square");
  return HvOperator([H](const Vector& v) { return H * v; }, Kind::analytic, static_cast<int>(H.rows()));
}

double estimate_operator_norm(const HvOperator& H, std::uint64_t seed, int steps) {
  Rng rng(seed);
  Vector b = rng.gaussian_vector(H.dim());
  double nb = b.norm();
  if (nb == 0.0) return 0.0;
  b /= nb;
  double est = 0.0;
  for (int s = 0; s < steps; ++s) {
    Vector hb = H.apply(b);
    est = hb.norm();
    if (!(est > 0.0) || !std::isfinite(est)) return std::isfinite(est) ? est : 0.0;
    b = hb / est;
  }
  return est;
}

}  // namespace saddlescape
