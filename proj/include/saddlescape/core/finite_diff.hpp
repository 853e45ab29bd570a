// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "saddlescape/core/landscape.hpp"
#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// Central-difference gradient of the energy, fixed step h per coordinate.
Vector finite_diff_gradient(const EnergyLandscape& land, const Vector& x, double h);

/// Central-difference gradient with per-coordinate step h_rel * (1 + |x_i|).
Vector finite_diff_gradient_scaled(const EnergyLandscape& land, const Vector& x, double h_rel);

/// Central differences of the analytic gradient, symmetrized as (H + H^T)/2.
Matrix finite_diff_hessian(const EnergyLandscape& land, const Vector& x, double h);

}  // namespace saddlescape
