// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include "saddlescape/core/reflect.hpp"

namespace saddlescape {

Vector reflect(const Vector& g, const Matrix& V) {
  if (V.cols() > 0 && V.rows() != g.size()) {
    throw DimensionError("reflect: V has " + std::to_string(V.rows()) + " rows but g has " +
                         std::to_string(g.size()) + " entries");
  }
  if (V.cols() == 0) return g;
  return g - 2.0 * (V * (V.transpose() * g));
}

}  // namespace saddlescape
