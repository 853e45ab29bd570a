// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace saddlescape {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Named invariant batteries behind `saddlescape verify <suite>`.
/// gradients: analytic derivatives against finite differences on every
///            benchmark, plus reflector involution/isometry.
/// dimer: quadratic exactness and the O(l^2) halving ratio.
/// eigensolvers: iterative solvers against the dense oracle, warm-start
///               monotonicity, residual consistency.
/// stability: the steady-state spectrum battery over seeded quadratics.
/// rates: reduction identity, stationarity, quadratic rate bound,
///        acceleration ordering, BB pass-through.
std::vector<PropertyResult> verify_gradients();
std::vector<PropertyResult> verify_dimer();
std::vector<PropertyResult> verify_eigensolvers();
std::vector<PropertyResult> verify_stability();
std::vector<PropertyResult> verify_rates();
std::vector<PropertyResult> verify_suite(const std::string& name);  // includes "all"

}  // namespace saddlescape
