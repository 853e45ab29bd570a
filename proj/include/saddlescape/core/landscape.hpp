// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// An evaluable energy surface with gradient access and, where tractable,
/// analytic Hessian or Hessian-vector access.
///
/// Landscapes are immutable after construction and safe to share across
/// concurrent runs; every accessor is const and the stored closures capture
/// only immutable data.
class EnergyLandscape {
 public:
  using EnergyFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;
  using HessianFn = std::function<Matrix(const Vector&)>;
  using HessianVecFn = std::function<Vector(const Vector&, const Vector&)>;

  EnergyLandscape(std::string name, int dim, EnergyFn energy, GradientFn gradient)
      : name_(std::move(name)), dim_(dim), energy_(std::move(energy)), gradient_(std::move(gradient)) {
    if (dim_ <= 0) throw DimensionError("landscape dimension must be positive");
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  double energy(const Vector& x) const {
    check_point(x);
    return energy_(x);
  }

  Vector gradient(const Vector& x) const {
    check_point(x);
    return gradient_(x);
  }

  bool has_hessian() const { return static_cast<bool>(hessian_); }
  Matrix hessian(const Vector& x) const {
    if (!hessian_) throw Error("landscape '" + name_ + "' has no dense Hessian");
    check_point(x);
    return hessian_(x);
  }

  bool has_hessian_vec() const { return static_cast<bool>(hessian_vec_); }
  Vector hessian_vec(const Vector& x, const Vector& v) const {
    if (!hessian_vec_) throw Error("landscape '" + name_ + "' has no Hessian-vector product");
    check_point(x);
    if (v.size() != dim_) throw DimensionError("direction dimension mismatch");
    return hessian_vec_(x, v);
  }

  const std::optional<SaddleTarget>& known_saddle() const { return known_saddle_; }

  EnergyLandscape& with_hessian(HessianFn h) {
    hessian_ = std::move(h);
    return *this;
  }
  EnergyLandscape& with_hessian_vec(HessianVecFn hv) {
    hessian_vec_ = std::move(hv);
    return *this;
  }
  EnergyLandscape& with_known_saddle(SaddleTarget t) {
    known_saddle_ = std::move(t);
    return *this;
  }

 private:
  void check_point(const Vector& x) const {
    if (x.size() != dim_) {
      throw DimensionError("point dimension " + std::to_string(x.size()) + " does not match landscape dimension " +
                           std::to_string(dim_));
    }
  }

  std::string name_;
  int dim_;
  EnergyFn energy_;
  GradientFn gradient_;
  HessianFn hessian_;
  HessianVecFn hessian_vec_;
  std::optional<SaddleTarget> known_saddle_;
};

}  // namespace saddlescape
