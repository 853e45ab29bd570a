// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "saddlescape/core/rng.hpp"
#include "saddlescape/eig/eigensolve.hpp"
#include "saddlescape/landscapes/landscapes.hpp"

using namespace saddlescape;

namespace {

EnergyLandscape quadratic_from(const Matrix& A) {
  return EnergyLandscape(
             "quad", static_cast<int>(A.rows()), [A](const Vector& x) { return 0.5 * x.dot(A * x); },
             [A](const Vector& x) { return (A * x).eval(); })
      .with_hessian([A](const Vector&) { return A; });
}

double subspace_distance(const Matrix& A, const Matrix& B) {
  const Matrix D = A * A.transpose() - B * B.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(D, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("eigensolvers") {
  TEST_CASE("dimer product is exact on quadratics") {
    Rng rng(5);
    Matrix A = rng.gaussian_matrix(6, 6);
    A = 0.5 * (A + A.transpose()).eval();
    const EnergyLandscape land = quadratic_from(A);
    const Vector x = rng.gaussian_vector(6);
    Vector v = rng.gaussian_vector(6);
    v /= v.norm();
    for (double l : {1e-1, 1e-3}) {
      const Vector hv = dimer_hv(land, x, v, l);
      CHECK((hv - A * v).norm() <= 1e-9 * std::max(1.0, (A * v).norm()));
    }
  }

  TEST_CASE("dimer error on a quartic is the hand-expanded 4 l^2") {
    const EnergyLandscape land(
        "x4", 1, [](const Vector& x) { return x[0] * x[0] * x[0] * x[0]; },
        [](const Vector& x) { return Vector::Constant(1, 4.0 * x[0] * x[0] * x[0]).eval(); });
    for (double l : {1e-1, 1e-2}) {
      const Vector hv = dimer_hv(land, Vector::Zero(1), Vector::Ones(1), l);
      CHECK(hv[0] == doctest::Approx(4.0 * l * l).epsilon(1e-12));
    }
  }

  TEST_CASE("analytic operators are linear in their argument") {
    const EnergyLandscape land = modified_mb();
    Vector x(2);
    x << 0.4, 1.2;
    const HvOperator H = HvOperator::at_point(land, x, 1e-3);
    REQUIRE(H.kind() == HvOperator::Kind::analytic);
    Rng rng(13);
    for (int t = 0; t < 20; ++t) {
      const Vector v = rng.gaussian_vector(2), w = rng.gaussian_vector(2);
      const double a = rng.gaussian(), b = rng.gaussian();
      const Vector lhs = H.apply(a * v + b * w);
      const Vector rhs = a * H.apply(v) + b * H.apply(w);
      CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
    }
  }

  TEST_CASE("dimer rejects a zero length") {
    const EnergyLandscape land = mb_potential();
    Vector x(2);
    x << 0.1, 0.2;
    Vector v(2);
    v << 1.0, 0.0;
    CHECK_THROWS_AS(dimer_hv(land, x, v, 0.0), Error);
  }

  TEST_CASE("halving the dimer length cuts the error by roughly four") {
    const EnergyLandscape land = modified_mb();
    Vector x(2);
    x << 0.35, 0.85;
    Vector v(2);
    v << 0.6, 0.8;
    const Vector exact = land.hessian(x) * v;
    const double e1 = (dimer_hv(land, x, v, 2e-2) - exact).norm();
    const double e2 = (dimer_hv(land, x, v, 1e-2) - exact).norm();
    const double ratio = e1 / e2;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }

  TEST_CASE("gram_schmidt leaves an orthonormal matrix unchanged") {
    Rng rng(9);
    const Matrix Q = gram_schmidt(rng.gaussian_matrix(8, 3));
    const Matrix Q2 = gram_schmidt(Q);
    CHECK((Q2 - Q).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((Q.transpose() * Q - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("gram_schmidt reproduces the 2x2 hand computation") {
    Matrix V(2, 2);
    V << 1.0, 1.0, 0.0, 1.0;  // columns (1,0), (1,1)
    const Matrix Q = gram_schmidt(V);
    CHECK(std::abs(std::abs(Q(0, 0)) - 1.0) <= 1e-14);
    CHECK(std::abs(Q(1, 0)) <= 1e-14);
    CHECK(std::abs(Q(0, 1)) <= 1e-14);
    CHECK(std::abs(std::abs(Q(1, 1)) - 1.0) <= 1e-14);
  }

  TEST_CASE("gram_schmidt names the rank-deficient column") {
    Matrix V(3, 2);
    V.col(0) << 1.0, 2.0, 3.0;
    V.col(1) = V.col(0);
    try {
      gram_schmidt(V);
      FAIL("expected RankDeficiencyError");
    } catch (const RankDeficiencyError& e) {
      CHECK(std::string(e.what()).find("column 1") != std::string::npos);
    }
  }

  TEST_CASE("sirqit keeps an already-invariant warm start") {
    Vector lam(3);
    lam << -2.0, -1.0, 3.0;
    const HvOperator H = HvOperator::from_matrix(Matrix(lam.asDiagonal()));
    Matrix V0 = Matrix::Identity(3, 2);
    SirqitOpts opts;
    opts.sweeps = 5;
    opts.zeta = 0.1;
    const EigenResult r = eigensol_sirqit(H, V0, opts);
    CHECK(r.values[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(r.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.residuals.maxCoeff() <= 1e-12);
    CHECK(subspace_distance(r.vectors, Matrix::Identity(3, 2)) <= 1e-12);
  }

  TEST_CASE("sirqit converges to the dense oracle from a random start") {
    Vector lam(3);
    lam << 3.0, -1.0, -2.0;
    const Matrix A = lam.asDiagonal();
    const HvOperator H = HvOperator::from_matrix(A);
    Rng rng(17);
    const Matrix V0 = gram_schmidt(rng.gaussian_matrix(3, 2));
    SirqitOpts opts;
    opts.sweeps = 200;
    opts.zeta = 0.1;
    const EigenResult r = eigensol_sirqit(H, V0, opts);
    const EigenResult oracle = eigensol_dense(A, 2);
    CHECK(subspace_distance(r.vectors, oracle.vectors) <= 1e-6);
    CHECK(r.values[0] == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.values[1] == doctest::Approx(-1.0).epsilon(1e-6));
  }

  TEST_CASE("sirqit with k = 0 applies the operator zero times") {
    int applies = 0;
    const HvOperator H([&applies](const Vector& v) { ++applies; return v; }, HvOperator::Kind::analytic, 4);
    const EigenResult r = eigensol_sirqit(H, Matrix::Zero(4, 0), SirqitOpts{});
    CHECK(r.vectors.cols() == 0);
    CHECK(applies == 0);
  }

  TEST_CASE("sirqit reports divergence for an oversized relaxation") {
    Vector lam(4);
    lam << -1e8, 1e8, 2e8, 3e8;
    const HvOperator H = HvOperator::from_matrix(Matrix(lam.asDiagonal()));
    Rng rng(23);
    const Matrix V0 = gram_schmidt(rng.gaussian_matrix(4, 2));
    SirqitOpts opts;
    opts.sweeps = 500;
    opts.zeta = 1e30;
    CHECK_THROWS_AS(eigensol_sirqit(H, V0, opts), DivergenceError);
  }

  TEST_CASE("lobpcg finds the three flipped directions of diag(1..10)") {
    Vector lam(10);
    for (int i = 0; i < 10; ++i) lam[i] = i + 1.0;
    lam[0] = -1.0;
    lam[1] = -2.0;
    lam[2] = -3.0;
    const Matrix A = lam.asDiagonal();
    Rng rng(31);
    const Matrix V0 = gram_schmidt(rng.gaussian_matrix(10, 3));
    LobpcgOpts opts;
    opts.inner_iters = 300;
    opts.tol = 1e-12;
    const EigenResult r = eigensol_lobpcg(HvOperator::from_matrix(A), V0, opts);
    CHECK(r.values[0] == doctest::Approx(-3.0).epsilon(1e-8));
    CHECK(r.values[1] == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(r.values[2] == doctest::Approx(-1.0).epsilon(1e-8));
    const EigenResult oracle = eigensol_dense(A, 3);
    CHECK(subspace_distance(r.vectors, oracle.vectors) <= 1e-8);
  }

  TEST_CASE("lobpcg converges immediately from an exact warm start") {
    Vector lam(12);
    for (int i = 0; i < 12; ++i) lam[i] = -2.0 + 0.7 * i;
    const Matrix A = lam.asDiagonal();
    const EigenResult oracle = eigensol_dense(A, 3);
    LobpcgOpts opts;
    opts.inner_iters = 50;
    opts.tol = 1e-10;
    const EigenResult r = eigensol_lobpcg(HvOperator::from_matrix(A), oracle.vectors, opts);
    CHECK(r.inner_iters_used == 1);
    CHECK(r.residuals.maxCoeff() <= 1e-12);
  }

  TEST_CASE("lobpcg sees negative curvature at the modified Rosenbrock target") {
    RosenbrockModParams p;
    p.s_head = -50000.0;
    p.classify_target = false;
    const EnergyLandscape land = rosenbrock_mod(p);
    const Vector x_star = Vector::Ones(p.d);
    const HvOperator H = HvOperator::at_point(land, x_star, 1e-3);
    Rng rng(37);
    const Matrix V0 = gram_schmidt(rng.gaussian_matrix(p.d, 1));
    LobpcgOpts opts;
    opts.inner_iters = 200;
    opts.tol = 1e-8;
    const EigenResult r = eigensol_lobpcg(H, V0, opts);
    CHECK(r.values[0] < 0.0);
  }

  TEST_CASE("dense solver on diag(5,-1)") {
    Matrix A = Matrix::Zero(2, 2);
    A(0, 0) = 5.0;
    A(1, 1) = -1.0;
    const EigenResult r = eigensol_dense(A, 1);
    CHECK(r.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(std::abs(r.vectors(1, 0)) - 1.0) <= 1e-14);
  }

  TEST_CASE("dense solver recovers the analytic convex2 spectrum") {
    const EnergyLandscape land = convex2(Convex2Params{});
    const EigenResult r = eigensol_dense(land.hessian(Vector::Zero(100)), 5);
    Vector expected(5);
    expected << -2.1, -1.6, -1.1, -0.6, -0.1;
    for (int i = 0; i < 5; ++i) CHECK(r.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  TEST_CASE("dense solver rejects asymmetric input") {
    Matrix A(2, 2);
    A << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(eigensol_dense(A, 1), Error);
  }

  TEST_CASE("result invariants: ascending values, orthonormal vectors") {
    Rng rng(41);
    Matrix A = rng.gaussian_matrix(20, 20);
    A = 0.5 * (A + A.transpose()).eval();
    const Matrix V0 = gram_schmidt(rng.gaussian_matrix(20, 4));
    LobpcgOpts opts;
    opts.inner_iters = 200;
    opts.tol = 1e-11;
    for (const EigenResult& r :
         {eigensol_lobpcg(HvOperator::from_matrix(A), V0, opts), eigensol_dense(A, 4),
          eigensol_sirqit(HvOperator::from_matrix(A), V0, SirqitOpts{2000, 0.3 / A.cwiseAbs().maxCoeff()})}) {
      for (int i = 0; i + 1 < 4; ++i) CHECK(r.values[i] <= r.values[i + 1]);
      CHECK((r.vectors.transpose() * r.vectors - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
      for (int i = 0; i < 4; ++i) {
        const double res = (A * r.vectors.col(i) - r.values[i] * r.vectors.col(i)).norm();
        CHECK(std::abs(res - r.residuals[i]) <= 1e-10);
      }
    }
  }
}
