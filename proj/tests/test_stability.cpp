// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "saddlescape/core/rng.hpp"
#include "saddlescape/eig/eigensolve.hpp"
#include "saddlescape/landscapes/landscapes.hpp"
#include "saddlescape/stability/stability.hpp"

using namespace saddlescape;

namespace {

// closed-form spectrum for a diagonal quadratic with eigenvalues lam and an
// axis-aligned frame on the first k directions:
//   roots of x^2 + a1 x - d_i  for d_i = -a2 |lam_i| (i <= k) resp. -a2 lam_i,
//   the frame-block eigenvalues z(lam_i + lam_j'), and -1 for the length
std::vector<std::complex<double>> closed_form_spectrum(const Vector& lam, int k, const ContinuousParams& cp) {
  std::vector<std::complex<double>> out;
  const int d = static_cast<int>(lam.size());
  for (int i = 0; i < d; ++i) {
    const double di = (i < k ? cp.alpha2 * lam[i] : -cp.alpha2 * lam[i]);
    const std::complex<double> disc(cp.alpha1 * cp.alpha1 + 4.0 * di, 0.0);
    const std::complex<double> root = std::sqrt(disc);
    out.push_back((-cp.alpha1 + root) / 2.0);
    out.push_back((-cp.alpha1 - root) / 2.0);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) out.emplace_back(cp.zeta * (lam[j] + lam[i]), 0.0);
    for (int j = i + 1; j < d; ++j) out.emplace_back(cp.zeta * (lam[i] - lam[j]), 0.0);
  }
  out.emplace_back(-1.0, 0.0);
  return out;
}

double spectrum_match(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (const auto& x : a) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double dist = std::abs(x - b[j]);
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(arg));
  }
  return worst;
}

SteadyState axis_state(int d, int k) {
  SteadyState st;
  st.x = Vector::Zero(d);
  st.V = Matrix::Identity(d, k);
  return st;
}

// full right-hand side of the continuous system, used only to cross-check the
// assembled Jacobian by finite differences
Vector vector_field(const EnergyLandscape& land, const ContinuousParams& cp, int d, int k, const Vector& y) {
  const Vector x = y.segment(0, d);
  const Vector m = y.segment(d, d);
  const double l = y[d * (k + 2)];
  Vector out(y.size());
  out.segment(0, d) = m;
  Vector pg = land.gradient(x);
  for (int i = 0; i < k; ++i) {
    const Vector vi = y.segment(2 * d + i * d, d);
    pg -= 2.0 * vi * vi.dot(land.gradient(x));
  }
  out.segment(d, d) = -cp.alpha1 * m - cp.alpha2 * pg;
  for (int i = 0; i < k; ++i) {
    const Vector vi = y.segment(2 * d + i * d, d);
    Vector hv;
    if (std::abs(l) < 1e-12) {
      hv = land.hessian(x) * vi;
    } else {
      hv = (land.gradient(x + l * vi) - land.gradient(x - l * vi)) / (2.0 * l);
    }
    Vector w = hv - vi * vi.dot(hv);
    for (int j = 0; j < i; ++j) {
      const Vector vj = y.segment(2 * d + j * d, d);
      w -= 2.0 * vj * vj.dot(hv);
    }
    out.segment(2 * d + i * d, d) = -cp.zeta * w;
  }
  out[d * (k + 2)] = -l;
  return out;
}

}  // namespace

TEST_SUITE("stability") {
  TEST_CASE("spectrum of the (-1, 2) quadratic matches the closed form") {
    Vector lam(2);
    lam << -1.0, 2.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const ContinuousParams cp;  // alpha1 = alpha2 = zeta = 1
    const SpectrumReport rep = check_linear_stability(land, axis_state(2, 1), cp);

    REQUIRE(rep.eigvals.size() == 2 * (1 + 2) + 1);
    const double worst = spectrum_match(rep.eigvals, closed_form_spectrum(lam, 1, cp));
    CHECK(worst <= 1e-8);
    CHECK(rep.max_real == doctest::Approx(-0.5).epsilon(1e-8));
    CHECK(rep.stable);
    CHECK(rep.hypothesis_satisfied);  // 1 <= 4 * 1 * 1
  }

  TEST_CASE("targeting the same landscape with k = 0 exposes a positive mode") {
    Vector lam(2);
    lam << -1.0, 2.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const SpectrumReport rep = check_linear_stability(land, axis_state(2, 0), ContinuousParams{});
    CHECK_FALSE(rep.stable);
    CHECK(rep.max_real > 0.0);
  }

  TEST_CASE("violated hypothesis keeps stability when the quadratic roots stay real-negative") {
    Vector lam(2);
    lam << -1.0, 2.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    ContinuousParams cp;
    cp.alpha1 = 10.0;  // alpha1^2 = 100 > 4 mu*
    const SpectrumReport rep = check_linear_stability(land, axis_state(2, 1), cp);
    CHECK_FALSE(rep.hypothesis_satisfied);
    CHECK(rep.stable);
  }

  TEST_CASE("an index-3 saddle targeted with k = 2 is unstable") {
    Vector lam(5);
    lam << -3.0, -2.0, -1.0, 1.5, 4.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const SpectrumReport rep = check_linear_stability(land, axis_state(5, 2), ContinuousParams{});
    CHECK_FALSE(rep.stable);
  }

  TEST_CASE("block-spectrum consistency over random diagonal quadratics") {
    Rng rng(55);
    for (int t = 0; t < 12; ++t) {
      const int d = 3 + static_cast<int>(rng.uniform() * 4);
      const int k = 1 + static_cast<int>(rng.uniform() * 2.0) % std::max(1, d - 1);
      Vector lam(d);
      for (int i = 0; i < k; ++i) lam[i] = -(0.3 + 2.0 * rng.uniform());
      for (int i = k; i < d; ++i) lam[i] = 0.3 + 2.0 * rng.uniform();
      std::sort(lam.data(), lam.data() + d);
      const EnergyLandscape land = quadratic_landscape(lam);
      ContinuousParams cp;
      cp.alpha1 = 0.5 + rng.uniform();
      cp.alpha2 = 0.5 + rng.uniform();
      cp.zeta = 0.5 + rng.uniform();
      const SpectrumReport rep = check_linear_stability(land, axis_state(d, k), cp);
      CHECK(spectrum_match(rep.eigvals, closed_form_spectrum(lam, k, cp)) <= 1e-8);
    }
  }

  TEST_CASE("assembled Jacobian matches finite differences of the vector field on quadratics") {
    Rng rng(66);
    Vector lam(4);
    lam << -2.0, -0.7, 1.2, 3.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const int d = 4, k = 2;
    const ContinuousParams cp{0.8, 1.3, 0.6};
    const Matrix J = assemble_jacobian(land, axis_state(d, k), cp);

    Vector y0 = Vector::Zero(d * (k + 2) + 1);
    for (int i = 0; i < k; ++i) y0[2 * d + i * d + i] = 1.0;  // frame columns e_1, e_2
    const int n = static_cast<int>(y0.size());
    Matrix Jfd(n, n);
    const double h = 1e-6;
    for (int j = 0; j < n; ++j) {
      Vector yp = y0, ym = y0;
      yp[j] += h;
      ym[j] -= h;
      Jfd.col(j) = (vector_field(land, cp, d, k, yp) - vector_field(land, cp, d, k, ym)) / (2.0 * h);
    }
    CHECK((J - Jfd).cwiseAbs().maxCoeff() <= 1e-6);
  }

  TEST_CASE("reduced-dimension Rosenbrock target is stable at the hypothesis boundary") {
    RosenbrockModParams p;
    p.d = 60;
    const EnergyLandscape land = rosenbrock_mod(p);
    const SaddleTarget& t = *land.known_saddle();
    REQUIRE(t.index_k == 3);
    const EigenResult frame = eigensol_dense(land.hessian(t.x_star), t.index_k);
    SteadyState st{t.x_star, frame.vectors};
    ContinuousParams cp;
    cp.alpha2 = 1.0;
    cp.zeta = 1e-3;  // keeps the frame-block spectrum within the scale of the position blocks
    const double mu_star = frame.values.cwiseAbs().minCoeff();
    cp.alpha1 = 2.0 * std::sqrt(cp.alpha2 * mu_star);
    const SpectrumReport rep = check_linear_stability(land, st, cp);
    CHECK(rep.hypothesis_satisfied);
    CHECK(rep.stable);
  }

  TEST_CASE("dimension guard rejects oversized dense eigensolves") {
    const EnergyLandscape land = quadratic_landscape(Vector::LinSpaced(2000, 1.0, 2000.0).eval());
    SteadyState st;
    st.x = Vector::Zero(2000);
    st.V = Matrix::Identity(2000, 1);
    CHECK_THROWS_AS(assemble_jacobian(land, st, ContinuousParams{}), Error);
  }

  TEST_CASE("a non-steady state is rejected") {
    Vector lam(2);
    lam << -1.0, 2.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    SteadyState st;
    st.x = Vector::Ones(2);  // gradient is far from zero here
    st.V = Matrix::Identity(2, 1);
    CHECK_THROWS_AS(assemble_jacobian(land, st, ContinuousParams{}), Error);
  }

  TEST_CASE("repeated unstable eigenvalues raise the degenerate-gap warning") {
    Vector lam(4);
    lam << -1.0, -1.0, 2.0, 3.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const SpectrumReport rep = check_linear_stability(land, axis_state(4, 2), ContinuousParams{});
    CHECK(rep.degenerate_gap_warning);
  }
}
