// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "saddlescape/core/types.hpp"

namespace saddlescape {

/// Applies the reflector (I - 2 V V^T) to g as two matrix-vector products,
/// cost O(dim * k). Never forms the dim x dim projector. V may have zero
/// columns, in which case g is returned unchanged.
Vector reflect(const Vector& g, const Matrix& V);

}  // namespace saddlescape
