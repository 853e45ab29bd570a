// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/rng.hpp"
#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// Dimer approximation of the Hessian-vector product at x:
/// [grad(x + l v) - grad(x - l v)] / (2 l), exactly two gradient evaluations.
/// Requires l > 0 and v of unit norm.
Vector dimer_hv(const EnergyLandscape& land, const Vector& x, const Vector& v, double l);

/// A Hessian-vector product closure at a fixed point, either analytic or the
/// dimer approximation. The dimer closure normalizes its argument so the
/// effective dimer length stays l for any input scale.
///
/// Operators built by at_point borrow the landscape; the landscape must stay
/// alive for as long as the operator is used.
class HvOperator {
 public:
  enum class Kind { analytic, dimer };

  using Apply = std::function<Vector(const Vector&)>;

  HvOperator(Apply apply, Kind kind, int dim) : apply_(std::move(apply)), kind_(kind), dim_(dim) {}

  Vector apply(const Vector& v) const {
    if (v.size() != dim_) throw DimensionError("HvOperator: direction dimension mismatch");
    return apply_(v);
  }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Analytic hessian_vec when the landscape provides it, dimer otherwise.
  static HvOperator at_point(const EnergyLandscape& land, const Vector& x, double dimer_l);

  /// Wraps a dense symmetric matrix; test and oracle convenience.
  static HvOperator from_matrix(const Matrix& H);

 private:
  Apply apply_;
  Kind kind_;
  int dim_;
};

/// Crude operator-norm estimate from a few power-method steps (seeded).
double estimate_operator_norm(const HvOperator& H, std::uint64_t seed, int steps = 5);

}  // namespace saddlescape
