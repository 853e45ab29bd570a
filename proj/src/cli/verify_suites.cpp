// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

#include "saddlescape/cli/verify_suites.hpp"
#include "saddlescape/core/finite_diff.hpp"
#include "saddlescape/core/reflect.hpp"
#include "saddlescape/core/rng.hpp"
#include "saddlescape/dyn/dynamics.hpp"
#include "saddlescape/eig/eigensolve.hpp"
#include "saddlescape/landscapes/landscapes.hpp"
#include "saddlescape/stability/stability.hpp"

namespace saddlescape {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void add(std::vector<PropertyResult>& out, const std::string& name, bool pass, const std::string& detail) {
  out.push_back({name, pass, detail});
}

Matrix random_orthonormal(Rng& rng, int d, int k) { return gram_schmidt(rng.gaussian_matrix(d, k)); }

double max_rel_grad_error(const EnergyLandscape& land, const std::vector<Vector>& points) {
  double worst = 0.0;
  for (const auto& x : points) {
    const Vector g = land.gradient(x);
    const Vector fd = finite_diff_gradient_scaled(land, x, 1e-5);
    const double rel = (g - fd).norm() / std::max(g.norm(), 1e-8);
    worst = std::max(worst, rel);
  }
  return worst;
}

std::vector<Vector> sample_box(Rng& rng, const Vector& lo, const Vector& hi, int count) {
  std::vector<Vector> pts;
  for (int p = 0; p < count; ++p) {
    Vector x(lo.size());
    for (int i = 0; i < lo.size(); ++i) x[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
    pts.push_back(std::move(x));
  }
  return pts;
}

double subspace_distance(const Matrix& A, const Matrix& B) {
  const Matrix D = A * A.transpose() - B * B.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(D, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<PropertyResult> verify_gradients() {
  std::vector<PropertyResult> out;
  Rng rng(2026);

  // reflector properties on random orthonormal frames
  {
    double worst_inv = 0.0, worst_norm = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int d = 2 + static_cast<int>(rng.uniform() * 30);
      const int k = std::min(d - 1, 1 + static_cast<int>(rng.uniform() * 4));
      const Matrix V = random_orthonormal(rng, d, k);
      const Vector g = rng.gaussian_vector(d);
      const Vector r = reflect(g, V);
      worst_inv = std::max(worst_inv, (reflect(r, V) - g).norm() / std::max(1.0, g.norm()));
      worst_norm = std::max(worst_norm, std::abs(r.norm() - g.norm()) / std::max(1.0, g.norm()));
    }
    add(out, "reflect.involution", worst_inv <= 1e-12, "max rel deviation " + fmt(worst_inv));
    add(out, "reflect.isometry", worst_norm <= 1e-12, "max rel deviation " + fmt(worst_norm));
  }

  const int npts = 20;
  {
    const EnergyLandscape land = mb_potential();
    Vector lo(2), hi(2);
    lo << -1.5, -0.2;
    hi << 1.2, 2.0;
    const double e = max_rel_grad_error(land, sample_box(rng, lo, hi, npts));
    add(out, "gradient_fd.mb", e <= 1e-5, "max rel error " + fmt(e));
  }
  {
    const EnergyLandscape land = modified_mb();
    Vector lo(2), hi(2);
    lo << -1.5, -0.2;
    hi << 1.2, 2.2;
    const double e = max_rel_grad_error(land, sample_box(rng, lo, hi, npts));
    add(out, "gradient_fd.mmb", e <= 1e-5, "max rel error " + fmt(e));
  }
  for (double shead : {-500.0, -50000.0}) {
    RosenbrockModParams rp;
    rp.d = 1000;
    rp.s_head = shead;
    rp.classify_target = false;
    const EnergyLandscape land = rosenbrock_mod(rp);
    std::vector<Vector> pts;
    for (int p = 0; p < npts; ++p) {
      Vector n = rng.gaussian_vector(rp.d);
      pts.push_back(Vector::Ones(rp.d) + (0.5 * rng.uniform() + 0.05) * n / n.norm());
    }
    const double e = max_rel_grad_error(land, pts);
    add(out, shead == -500.0 ? "gradient_fd.rosenbrock_i" : "gradient_fd.rosenbrock_ii", e <= 1e-5,
        "max rel error " + fmt(e));
  }
  {
    const EnergyLandscape land = convex2(Convex2Params{});
    const Vector lo = Vector::Constant(100, -6.0);
    const Vector hi = Vector::Constant(100, 0.5);
    const double e = max_rel_grad_error(land, sample_box(rng, lo, hi, npts));
    add(out, "gradient_fd.convex2", e <= 1e-5, "max rel error " + fmt(e));
  }
  {
    LinearNetSpec spec;
    spec.seed = 77;
    const LinearNetBuild build = linear_net_loss(spec);
    std::vector<Vector> pts;
    for (int p = 0; p < npts; ++p) pts.push_back(layerwise_gaussian_point(build, rng));
    const double e = max_rel_grad_error(build.landscape, pts);
    add(out, "gradient_fd.linear_nn", e <= 1e-5, "max rel error " + fmt(e));

    double worst_hv = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Vector x = pts[t];
      const Vector v = rng.gaussian_vector(build.landscape.dim());
      const Matrix Hfd = finite_diff_hessian(build.landscape, x, 1e-5);
      const Vector hv = build.landscape.hessian_vec(x, v);
      worst_hv = std::max(worst_hv, (hv - Hfd * v).norm() / std::max(hv.norm(), 1e-8));
    }
    add(out, "hessian_vec_fd.linear_nn", worst_hv <= 1e-4, "max rel error " + fmt(worst_hv));
  }

  // dense Hessians against finite differences of the gradient
  {
    double worst = 0.0;
    const EnergyLandscape mmb = modified_mb();
    Vector lo(2), hi(2);
    lo << -1.0, 0.0;
    hi << 1.0, 2.0;
    for (const auto& x : sample_box(rng, lo, hi, 10)) {
      const Matrix H = mmb.hessian(x);
      const Matrix Hfd = finite_diff_hessian(mmb, x, 1e-6);
      worst = std::max(worst, (H - Hfd).cwiseAbs().maxCoeff() / std::max(1.0, H.cwiseAbs().maxCoeff()));
    }
    RosenbrockModParams rp;
    rp.d = 40;
    rp.classify_target = false;
    const EnergyLandscape ros = rosenbrock_mod(rp);
    for (int t = 0; t < 5; ++t) {
      Vector x = Vector::Ones(40) + 0.3 * rng.gaussian_vector(40);
      const Matrix H = ros.hessian(x);
      const Matrix Hfd = finite_diff_hessian(ros, x, 1e-6);
      worst = std::max(worst, (H - Hfd).cwiseAbs().maxCoeff() / std::max(1.0, H.cwiseAbs().maxCoeff()));
      const Vector v = rng.gaussian_vector(40);
      const double hv_err = (ros.hessian_vec(x, v) - H * v).norm() / std::max(1.0, (H * v).norm());
      worst = std::max(worst, hv_err > 1e-10 ? 1.0 : 0.0);
    }
    add(out, "hessian_fd.analytic", worst <= 1e-4, "max rel error " + fmt(worst));
  }
  return out;
}

std::vector<PropertyResult> verify_dimer() {
  std::vector<PropertyResult> out;
  Rng rng(7);

  // exact on quadratics for any dimer length
  {
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
      const int d = 2 + static_cast<int>(rng.uniform() * 10);
      Matrix A = rng.gaussian_matrix(d, d);
      A = 0.5 * (A + A.transpose()).eval();
      const EnergyLandscape land(
          "quad", d, [A](const Vector& x) { return 0.5 * x.dot(A * x); }, [A](const Vector& x) { return (A * x).eval(); });
      const Vector x = rng.gaussian_vector(d);
      Vector v = rng.gaussian_vector(d);
      v /= v.norm();
      for (double l : {1e-1, 1e-3}) {
        const Vector hv = dimer_hv(land, x, v, l);
        worst = std::max(worst, (hv - A * v).norm() / std::max(1.0, (A * v).norm()));
      }
    }
    add(out, "dimer.quadratic_exact", worst <= 1e-9, "max rel error " + fmt(worst));
  }

  // halving the dimer length cuts the consistency error by about 4
  {
    const EnergyLandscape land = modified_mb();
    Rng prng(11);
    int ok = 0, total = 0;
    for (int t = 0; t < 8; ++t) {
      Vector x(2);
      x << -1.0 + 2.0 * prng.uniform(), 0.0 + 2.0 * prng.uniform();
      Vector v = prng.gaussian_vector(2);
      v /= v.norm();
      const Vector exact = land.hessian(x) * v;
      const double e1 = (dimer_hv(land, x, v, 2e-2) - exact).norm();
      const double e2 = (dimer_hv(land, x, v, 1e-2) - exact).norm();
      if (e2 <= 0.0) continue;
      ++total;
      const double ratio = e1 / e2;
      if (ratio >= 3.0 && ratio <= 5.0) ++ok;
    }
    add(out, "dimer.order_l2", total > 0 && ok >= total - 1, fmt(ok) + "/" + fmt(total) + " ratios in [3,5]");
  }
  return out;
}

std::vector<PropertyResult> verify_eigensolvers() {
  std::vector<PropertyResult> out;
  Rng rng(101);

  double worst_sirqit = 0.0, worst_lobpcg = 0.0, worst_res = 0.0, mono_viol = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int d = 12 + static_cast<int>(rng.uniform() * 38);
    const int k = 2 + static_cast<int>(rng.uniform() * 2);
    // spectrum with a firm gap after the k-th value
    Vector lam(d);
    for (int i = 0; i < k; ++i) lam[i] = -2.0 + 0.25 * i;
    for (int i = k; i < d; ++i) lam[i] = 0.5 + 0.12 * (i - k) + 0.1;
    const Matrix Q = random_orthonormal(rng, d, d);
    const Matrix A = Q * lam.asDiagonal() * Q.transpose();
    const HvOperator H = HvOperator::from_matrix(A);

    const EigenResult dense = eigensol_dense(A, k);
    const Matrix V0 = random_orthonormal(rng, d, k);

    SirqitOpts so;
    so.sweeps = 4000;
    so.zeta = 0.35 / lam.cwiseAbs().maxCoeff();
    const EigenResult rs = eigensol_sirqit(H, V0, so);
    worst_sirqit = std::max(worst_sirqit, subspace_distance(rs.vectors, dense.vectors));

    LobpcgOpts lo;
    lo.inner_iters = 400;
    lo.tol = 1e-12;
    const EigenResult rl = eigensol_lobpcg(H, V0, lo);
    worst_lobpcg = std::max(worst_lobpcg, subspace_distance(rl.vectors, dense.vectors));

    for (int i = 0; i < k; ++i) {
      const double res = (A * rl.vectors.col(i) - rl.values[i] * rl.vectors.col(i)).norm();
      worst_res = std::max(worst_res, std::abs(res - rl.residuals[i]));
    }

    // repeated single Rayleigh-Ritz expansions never increase the trace
    Matrix V = V0;
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 25; ++it) {
      LobpcgOpts one;
      one.inner_iters = 1;
      one.tol = 1e-16;
      const EigenResult r = eigensol_lobpcg(H, V, one);
      const double s = r.values.sum();
      mono_viol = std::max(mono_viol, s - prev);
      prev = s;
      V = r.vectors;
    }
  }
  add(out, "eigensolvers.sirqit_subspace", worst_sirqit <= 1e-6, "max distance " + fmt(worst_sirqit));
  add(out, "eigensolvers.lobpcg_subspace", worst_lobpcg <= 1e-6, "max distance " + fmt(worst_lobpcg));
  add(out, "eigensolvers.residual_consistency", worst_res <= 1e-12, "max deviation " + fmt(worst_res));
  add(out, "eigensolvers.lobpcg_monotone", mono_viol <= 1e-12, "max trace increase " + fmt(mono_viol));
  return out;
}

std::vector<PropertyResult> verify_stability() {
  std::vector<PropertyResult> out;
  Rng rng(313);
  int correct_ok = 0, wrong_ok = 0;
  const int cases = 50;
  for (int t = 0; t < cases; ++t) {
    const int d = 3 + static_cast<int>(rng.uniform() * 6);
    const int k = 1 + static_cast<int>(rng.uniform() * std::min(3, d - 1));
    Vector lam(d);
    for (int i = 0; i < k; ++i) lam[i] = -(0.2 + 3.0 * rng.uniform());
    for (int i = k; i < d; ++i) lam[i] = 0.2 + 3.0 * rng.uniform();
    std::sort(lam.data(), lam.data() + d);
    const EnergyLandscape land = quadratic_landscape(lam);

    const Matrix H = land.hessian(Vector::Zero(d));
    ContinuousParams cp;
    cp.alpha2 = 1.0;
    cp.zeta = 0.7;

    {
      const EigenResult er = eigensol_dense(H, k);
      const double mu = er.values.cwiseAbs().minCoeff();
      cp.alpha1 = std::sqrt(2.0 * cp.alpha2 * mu);
      SteadyState st{Vector::Zero(d), er.vectors};
      if (check_linear_stability(land, st, cp).stable) ++correct_ok;
    }
    {
      const int kw = (k == 1) ? std::min(2, d - 1) : k - 1;
      const EigenResult er = eigensol_dense(H, kw);
      cp.alpha1 = 1.0;
      SteadyState st{Vector::Zero(d), er.vectors};
      if (!check_linear_stability(land, st, cp).stable) ++wrong_ok;
    }
  }
  add(out, "stability.correct_index_stable", correct_ok == cases, fmt(correct_ok) + "/" + fmt(cases));
  add(out, "stability.wrong_index_unstable", wrong_ok == cases, fmt(wrong_ok) + "/" + fmt(cases));
  return out;
}

std::vector<PropertyResult> verify_rates() {
  std::vector<PropertyResult> out;

  // ahisd with zero momentum reproduces hisd exactly
  {
    double worst = 0.0;
    bool same_len = true;
    const auto compare = [&worst, &same_len](const EnergyLandscape& land, SolverParams p, const Vector& x0) {
      p.stop_tol = 1e-13;
      const RunResult a = run(land, p, x0, StepKind::hisd);
      SolverParams pg = p;
      pg.gamma = 0.0;
      const RunResult b = run(land, pg, x0, StepKind::ahisd);
      same_len = same_len && a.trace.records.size() == b.trace.records.size();
      const std::size_t n = std::min(a.trace.records.size(), b.trace.records.size());
      for (std::size_t i = 0; i < n; ++i) {
        const double ea = a.trace.records[i].err, eb = b.trace.records[i].err;
        worst = std::max(worst, std::abs(ea - eb) / std::max(1e-30, std::abs(ea)));
      }
    };
    SolverParams p;
    p.beta = 2e-4;
    p.k = 1;
    p.zeta = 4e-5;
    p.max_iter = 250;
    p.seed = 5;
    p.init_frame = FrameInit::dense_oracle;
    Vector x0(2);
    x0 << 0.15, 1.5;
    compare(mb_potential(), p, x0);
    SolverParams pc;
    pc.beta = 0.01;
    pc.k = 5;
    pc.zeta = 0.01;
    pc.max_iter = 250;
    pc.seed = 5;
    pc.init_frame = FrameInit::dense_oracle;
    compare(convex2(Convex2Params{}), pc, Vector::Constant(100, -6.0));
    RosenbrockModParams rp;
    rp.d = 60;
    SolverParams pr;
    pr.beta = 2e-4;
    pr.k = 3;
    pr.zeta = 1.7e-4;
    pr.max_iter = 250;
    pr.seed = 5;
    pr.init_frame = FrameInit::dense_oracle;
    Rng rr(6);
    Vector n60 = rr.gaussian_vector(60);
    compare(rosenbrock_mod(rp), pr, Vector::Ones(60) + n60 / n60.norm());
    Vector lam(2);
    lam << -1.0, 3.0;
    SolverParams pq;
    pq.beta = 0.1;
    pq.k = 1;
    pq.eig_solver = EigSolverKind::dense;
    pq.max_iter = 250;
    compare(quadratic_landscape(lam), pq, Vector::Ones(2));
    add(out, "rates.gamma0_reduction", same_len && worst <= 1e-14, "max rel deviation " + fmt(worst));
  }

  // stationarity: runs started at the known saddle stay there
  {
    double worst = 0.0;
    const auto hold = [&worst](const EnergyLandscape& land, SolverParams p) {
      p.max_iter = 100;
      p.stop_tol = 1e-300;
      p.stop_metric = StopMetric::distance_to_known;
      p.init_frame = FrameInit::dense_oracle;
      const RunResult r = run(land, p, land.known_saddle()->x_star, StepKind::ahisd);
      for (const auto& rec : r.trace.records) worst = std::max(worst, rec.err);
    };
    SolverParams p;
    p.k = 1;
    p.beta = 2e-4;
    p.gamma = 0.5;
    p.zeta = 4e-5;
    hold(mb_potential(), p);
    p.beta = 1e-4;
    p.zeta = 3e-4;
    hold(modified_mb(), p);
    SolverParams pc;
    pc.k = 5;
    pc.beta = 0.01;
    pc.gamma = 0.6;
    pc.zeta = 0.01;
    hold(convex2(Convex2Params{}), pc);
    RosenbrockModParams rp;
    rp.d = 120;
    SolverParams pr;
    pr.k = rosenbrock_mod(rp).known_saddle()->index_k;
    pr.beta = 2e-4;
    pr.gamma = 0.5;
    pr.zeta = 1.5e-4;
    hold(rosenbrock_mod(rp), pr);
    Vector lam(2);
    lam << -1.0, 2.0;
    SolverParams pq;
    pq.k = 1;
    pq.beta = 0.2;
    pq.gamma = 0.3;
    pq.eig_solver = EigSolverKind::dense;
    hold(quadratic_landscape(lam), pq);
    add(out, "rates.stationarity", worst <= 1e-10, "max drift " + fmt(worst));
  }

  // Rayleigh-quotient rate bound on separable quadratics
  {
    bool all_ok = true;
    std::string detail;
    for (double kappa : {4.0, 100.0, 496.0}) {
      const double mu = kappa == 496.0 ? 0.1 : 1.0;
      const double L = kappa * mu;
      const double eps = 0.5 / (std::sqrt(kappa) + 1.0);
      const ParamChoice pc = select_parameters(mu, L, eps);
      Vector lam(2);
      lam << -mu, L;
      const EnergyLandscape land = quadratic_landscape(lam);
      SolverParams p;
      p.k = 1;
      p.beta = pc.beta;
      p.gamma = pc.gamma;
      p.eig_solver = EigSolverKind::dense;
      p.max_iter = 1000;
      p.stop_tol = 1e-320;
      // kappa = 4 contracts by sqrt(0.25) per step; start huge so the trailing
      // window stays clear of squared-norm underflow
      const double scale = kappa == 4.0 ? 1e149 : 1.0;
      const RunResult r = run(land, p, Vector::Constant(2, scale), StepKind::ahisd);
      const RateEstimate est = estimate_rate(r.trace, 200);
      const double bound = 1.0 - 2.0 / (std::sqrt(kappa) + 1.0) + 2.0 * eps + 0.02;
      if (!(est.theta_hat <= bound)) all_ok = false;
      detail += "kappa=" + fmt(kappa) + " theta=" + fmt(est.theta_hat) + " bound=" + fmt(bound) + "; ";
    }
    add(out, "rates.quadratic_bound", all_ok, detail);
  }

  // momentum from the closed-form schedule beats plain descent when kappa is large
  {
    bool ok = true;
    std::string detail;
    for (double kappa : {100.0, 496.0}) {
      const double mu = 1.0, L = kappa;
      const double eps = 0.5 / (std::sqrt(kappa) + 1.0);
      const ParamChoice pc = select_parameters(mu, L, eps);
      Vector lam(2);
      lam << -mu, L;
      const EnergyLandscape land = quadratic_landscape(lam);
      SolverParams p;
      p.k = 1;
      p.eig_solver = EigSolverKind::dense;
      p.max_iter = 1000;
      p.stop_tol = 1e-320;
      p.beta = pc.beta;
      p.gamma = pc.gamma;
      const RunResult hb = run(land, p, Vector::Ones(2), StepKind::ahisd);
      p.gamma = 0.0;
      p.beta = 2.0 / (L + mu);
      const RunResult gd = run(land, p, Vector::Ones(2), StepKind::ahisd);
      const double th = estimate_rate(hb.trace, 200).theta_hat;
      const double tg = estimate_rate(gd.trace, 200).theta_hat;
      if (!(th < tg)) ok = false;
      detail += "kappa=" + fmt(kappa) + " hb=" + fmt(th) + " gd=" + fmt(tg) + "; ";
    }
    add(out, "rates.acceleration_ordering", ok, detail);
  }

  // BB step sizes pass negative curvature through unclamped
  {
    Rng rng(99);
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
      const int d = 2 + static_cast<int>(rng.uniform() * 6);
      const Vector xp = rng.gaussian_vector(d), xn = rng.gaussian_vector(d);
      const Vector gp = rng.gaussian_vector(d), gn = rng.gaussian_vector(d);
      const double tau = 0.1 + rng.uniform();
      const BbStep s = bb_step_size(gn, gp, xn, xp, tau, 1.0);
      if (s.used_fallback) continue;
      const double curv = (xn - xp).dot(gn - gp) / (gn - gp).squaredNorm();
      const double expect = std::min(tau / gn.norm(), curv);
      if (s.value != expect) ok = false;
      if (curv < 0.0 && s.value >= 0.0) ok = false;
    }
    add(out, "rates.bb_passthrough", ok, "200 synthetic samples");
  }
  return out;
}

std::vector<PropertyResult> verify_suite(const std::string& name) {
  if (name == "gradients") return verify_gradients();
  if (name == "dimer") return verify_dimer();
  if (name == "eigensolvers") return verify_eigensolvers();
  if (name == "stability") return verify_stability();
  if (name == "rates") return verify_rates();
  if (name == "all") {
    std::vector<PropertyResult> out;
    for (const char* s : {"gradients", "dimer", "eigensolvers", "stability", "rates"}) {
      auto part = verify_suite(s);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw ConfigError("unknown verify suite '" + name +
                    "' (expected gradients, eigensolvers, dimer, stability, rates or all)");
}

}  // namespace saddlescape
