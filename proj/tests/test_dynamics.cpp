// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "saddlescape/dyn/dynamics.hpp"
#include "saddlescape/landscapes/landscapes.hpp"

using namespace saddlescape;

namespace {

SolverState make_state(const Vector& x, const Matrix& V) {
  SolverState s;
  s.x = x;
  s.x_prev = x;
  s.frame.vectors = V;
  s.frame.rayleigh = Vector::Zero(V.cols());
  return s;
}

IterationTrace synthetic_trace(const std::vector<double>& errs) {
  IterationTrace t;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    TraceRecord r;
    r.iter = static_cast<int>(i);
    r.err = errs[i];
    t.records.push_back(r);
  }
  return t;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("hisd step matches the scalar hand computation") {
    const EnergyLandscape land = quadratic_landscape(Vector::Constant(1, -1.0));
    SolverParams p;
    p.beta = 0.1;
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    const SolverState next = hisd_step(land, make_state(Vector::Ones(1), Matrix::Ones(1, 1)), p);
    CHECK(next.x[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(next.x_prev[0] == 1.0);
    CHECK(next.iter == 1);
  }

  TEST_CASE("a run started at the saddle with the exact frame stays put") {
    Vector lam(3);
    lam << -2.0, 1.0, 4.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    SolverParams p;
    p.beta = 0.1;
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    SolverState s = make_state(Vector::Zero(3), Matrix::Identity(3, 1));
    for (int i = 0; i < 5; ++i) s = hisd_step(land, s, p);
    CHECK(s.x.norm() == 0.0);
  }

  TEST_CASE("k = 0 reduces to plain gradient descent") {
    Vector lam(2);
    lam << 1.0, 3.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    SolverParams p;
    p.beta = 0.1;
    p.k = 0;
    Vector x0(2);
    x0 << 1.0, 1.0;
    const SolverState next = hisd_step(land, make_state(x0, Matrix::Zero(2, 0)), p);
    CHECK(next.x[0] == doctest::Approx(1.0 - 0.1 * 1.0).epsilon(1e-15));
    CHECK(next.x[1] == doctest::Approx(1.0 - 0.1 * 3.0).epsilon(1e-15));
  }

  TEST_CASE("ahisd momentum term matches the scalar hand computation") {
    const EnergyLandscape land = quadratic_landscape(Vector::Constant(1, -1.0));
    SolverParams p;
    p.beta = 0.1;
    p.gamma = 0.5;
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    SolverState s = make_state(Vector::Ones(1), Matrix::Ones(1, 1));
    s.x_prev = Vector::Constant(1, 0.8);
    const SolverState next = ahisd_step(land, s, p);
    CHECK(next.x[0] == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("ahisd equals hisd when gamma vanishes or at the first iteration") {
    Vector lam(2);
    lam << -1.0, 2.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    SolverParams p;
    p.beta = 0.05;
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    Vector x0(2);
    x0 << 0.4, -0.3;
    const SolverState s = make_state(x0, Matrix::Identity(2, 1));

    SolverParams pg = p;
    pg.gamma = 0.0;
    CHECK((ahisd_step(land, s, pg).x - hisd_step(land, s, p).x).norm() == 0.0);

    pg.gamma = 0.9;  // x_prev == x, so the momentum term vanishes
    CHECK((ahisd_step(land, s, pg).x - hisd_step(land, s, p).x).norm() == 0.0);
  }

  TEST_CASE("bb step size follows the min rule") {
    Vector dx(2), g1(2);
    dx << 0.6, 0.8;
    g1 << 0.6, 0.8;  // unit gradient, dg == dx
    const Vector x0 = Vector::Zero(2);
    const Vector g0 = Vector::Zero(2);
    const BbStep s = bb_step_size(g1, g0, dx, x0, 0.5, 1.0);
    CHECK_FALSE(s.used_fallback);
    CHECK(s.value == doctest::Approx(0.5).epsilon(1e-15));  // min(0.5/1, 1)
  }

  TEST_CASE("bb curvature branch simplifies to 1/2 when dg = 2 dx") {
    Rng rng(15);
    const Vector dx = rng.gaussian_vector(4);
    const Vector x_prev = rng.gaussian_vector(4);
    const Vector g_prev = rng.gaussian_vector(4);
    const Vector g_now = g_prev + 2.0 * dx;
    Vector g_small = g_now / g_now.norm() * 1e-3;  // tau branch large
    const BbStep s = bb_step_size(g_now, g_prev, x_prev + dx, x_prev, 100.0, 1.0);
    CHECK(s.value == doctest::Approx(0.5).epsilon(1e-12));
    (void)g_small;
  }

  TEST_CASE("orthogonal displacement and gradient change give a zero step") {
    Vector dx(2), dg(2);
    dx << 1.0, 0.0;
    dg << 0.0, 1.0;
    const Vector x0 = Vector::Zero(2), g0 = Vector::Zero(2);
    const BbStep s = bb_step_size(g0 + dg, g0, x0 + dx, x0, 1e9, 1.0);
    CHECK(s.value == 0.0);
  }

  TEST_CASE("select_parameters collapses for kappa = 1") {
    const ParamChoice p = select_parameters(1.0, 1.0, 0.3);
    CHECK(p.beta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.gamma == doctest::Approx(0.09).epsilon(1e-12));
  }

  TEST_CASE("select_parameters matches the direct substitution for (1, 9)") {
    const ParamChoice p = select_parameters(1.0, 9.0, 0.1);
    CHECK(p.beta == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.gamma == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(p.kappa == doctest::Approx(9.0));
  }

  TEST_CASE("select_parameters on the convex2 spectrum") {
    const ParamChoice p = select_parameters(0.1, 49.6, 0.01);
    const double expected = std::pow(2.0 / (std::sqrt(49.6) + std::sqrt(0.1)), 2);
    CHECK(p.beta == doctest::Approx(expected).epsilon(1e-14));
    CHECK(p.beta == doctest::Approx(0.0739).epsilon(2e-3));
  }

  TEST_CASE("select_parameters rejects an eps outside the admissible range") {
    try {
      select_parameters(1.0, 9.0, 0.5);  // limit is 1/(sqrt(9)+1) = 0.25
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("1/(sqrt(kappa)+1)") != std::string::npos);
    }
  }

  TEST_CASE("hisd run with the scheduled beta decays monotonically after burn-in") {
    Vector lam(2);
    lam << -1.0, 4.0;
    const EnergyLandscape land = quadratic_landscape(lam);
    const ParamChoice pc = select_parameters(1.0, 4.0, 0.1);
    SolverParams p;
    p.beta = pc.beta;  // per-mode contraction |1 - beta h| < 1, so the error sum is monotone
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    p.max_iter = 400;
    p.stop_tol = 1e-13;
    const RunResult r = run(land, p, Vector::Ones(2), StepKind::hisd);
    CHECK(r.reason == TerminationReason::converged);
    const auto& recs = r.trace.records;
    for (std::size_t i = recs.size() / 2; i + 1 < recs.size(); ++i) {
      CHECK(recs[i + 1].err <= recs[i].err * (1.0 + 1e-9));
    }
  }

  TEST_CASE("divergence is a flagged trace outcome, not an escaping exception") {
    Vector lam(2);
    lam << -1.0, 1e8;
    const EnergyLandscape land = quadratic_landscape(lam);
    SolverParams p;
    p.beta = 1e8;  // far beyond the stability limit
    p.k = 1;
    p.eig_solver = EigSolverKind::dense;
    p.max_iter = 50;
    p.stop_tol = 1e-12;
    const RunResult r = run(land, p, Vector::Ones(2), StepKind::ahisd);
    CHECK(r.reason == TerminationReason::diverged);
    CHECK(r.trace.diverged);
    CHECK(!r.trace.records.empty());
    for (const auto& rec : r.trace.records) CHECK(std::isfinite(rec.err));
  }

  TEST_CASE("estimate_rate recovers an exact geometric sequence") {
    std::vector<double> errs;
    for (int n = 0; n < 40; ++n) errs.push_back(3.0 * std::pow(0.5, n));
    const RateEstimate est = estimate_rate(synthetic_trace(errs), 20);
    CHECK(est.theta_hat == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(est.r_squared == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("estimate_rate tolerates a small alternating perturbation") {
    std::vector<double> errs;
    for (int n = 0; n < 60; ++n) errs.push_back(std::pow(0.9, n) * (1.0 + 0.01 * (n % 2 == 0 ? 1.0 : -1.0)));
    const RateEstimate est = estimate_rate(synthetic_trace(errs), 30);
    CHECK(est.theta_hat >= 0.89);
    CHECK(est.theta_hat <= 0.91);
  }

  TEST_CASE("estimate_rate of a constant error is one") {
    const RateEstimate est = estimate_rate(synthetic_trace(std::vector<double>(30, 0.7)), 10);
    CHECK(est.theta_hat == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("estimate_rate demands enough records") {
    CHECK_THROWS_AS(estimate_rate(synthetic_trace({1.0, 0.5, 0.25}), 10), Error);
  }

  TEST_CASE("hisd_bb diverges on convex2 from the far corner") {
    const EnergyLandscape land = convex2(Convex2Params{});
    SolverParams p;
    p.beta = 0.5;
    p.bb_tau = 0.5;
    p.k = 5;
    p.eig_solver = EigSolverKind::sirqit;
    p.max_iter = 200;
    p.stop_tol = 1e-5;
    p.seed = 3;
    const RunResult r = run(land, p, Vector::Constant(100, -6.0), StepKind::hisd_bb);
    CHECK(r.reason == TerminationReason::diverged);
    CHECK(r.iterations <= 100);
  }
}
