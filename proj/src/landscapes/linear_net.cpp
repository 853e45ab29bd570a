// Copyright (c) 2026 the saddlescape authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>

#include <cmath>
#include <memory>

#include "saddlescape/landscapes/landscapes.hpp"

namespace saddlescape {

namespace {

struct NetData {
  int depth = 0;
  std::vector<int> dims;
  std::vector<int> offsets;  // start of layer h (0-based) in the vectorized point
  int D = 0;
  Matrix Sxx;   // X X^T
  Matrix Syx;   // Y X^T
  Matrix SxxInv;
  double yy = 0.0;  // ||Y||_F^2
};

void validate_spec(const LinearNetSpec& spec) {
  if (spec.depth < 2) throw Error("linear_net: depth must be at least 2");
  if (static_cast<int>(spec.dims.size()) != spec.depth + 1) {
    throw Error("linear_net: dims must list d_0..d_H (depth+1 entries)");
  }
  for (int d : spec.dims) {
    if (d <= 0) throw Error("linear_net: layer dimensions must be positive");
  }
  for (int h = 1; h < spec.depth; ++h) {
    if (spec.dims[h] != spec.dims[0]) {
      throw Error("linear_net: the saddle construction requires hidden widths equal to d_0");
    }
  }
  int r_max = spec.dims[0];
  for (int d : spec.dims) r_max = std::min(r_max, d);
  const int dy = spec.dims.back();
  if (spec.index_set.empty()) throw Error("linear_net: index_set must be nonempty");
  if (static_cast<int>(spec.index_set.size()) > std::min(dy, r_max)) {
    throw Error("linear_net: index_set larger than min(d_y, r_max)");
  }
  for (int idx : spec.index_set) {
    if (idx < 1 || idx > r_max) throw Error("linear_net: index_set entries must lie in 1..r_max");
  }
  if (spec.samples <= 0) throw Error("linear_net: samples must be positive");
}

std::shared_ptr<NetData> make_data(const LinearNetSpec& spec) {
  validate_spec(spec);
  auto nd = std::make_shared<NetData>();
  nd->depth = spec.depth;
  nd->dims = spec.dims;
  nd->offsets.resize(spec.depth + 1);
  nd->offsets[0] = 0;
  for (int h = 1; h <= spec.depth; ++h) {
    nd->offsets[h] = nd->offsets[h - 1] + spec.dims[h] * spec.dims[h - 1];
  }
  nd->D = nd->offsets[spec.depth];

  Matrix X, Y;
  if (spec.X || spec.Y) {
    if (!spec.X || !spec.Y) throw Error("linear_net: X and Y must be supplied together");
    X = *spec.X;
    Y = *spec.Y;
    if (X.rows() != spec.dims[0] || Y.rows() != spec.dims.back() || X.cols() != Y.cols()) {
      throw Error("linear_net: explicit data shapes disagree with dims");
    }
  } else {
    Rng rng(spec.seed);
    X = rng.gaussian_matrix(spec.dims[0], spec.samples);
    Y = rng.gaussian_matrix(spec.dims.back(), spec.samples);
  }
  nd->Sxx = X * X.transpose();
  nd->Syx = Y * X.transpose();
  nd->yy = Y.squaredNorm();

  Eigen::SelfAdjointEigenSolver<Matrix> es(nd->Sxx);
  if (es.eigenvalues()[0] <= 1e-10 * std::max(1.0, es.eigenvalues()[es.eigenvalues().size() - 1])) {
    throw Error("linear_net: Sigma_XX is singular or near-singular");
  }
  nd->SxxInv = nd->Sxx.llt().solve(Matrix::Identity(spec.dims[0], spec.dims[0]));
  return nd;
}

using LayerMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

LayerMap layer(const NetData& nd, const Vector& w, int h) {
  // layer h in 1..depth has shape d_h x d_{h-1}, stored row-major
  return LayerMap(w.data() + nd.offsets[h - 1], nd.dims[h], nd.dims[h - 1]);
}

struct ForwardState {
  std::vector<Matrix> prefix;  // prefix[h] = W_{h-1} ... W_1, prefix[1] = I
  std::vector<Matrix> suffix;  // suffix[h] = W_H ... W_{h+1}, suffix[H] = I
  Matrix P;                    // W_H ... W_1
};

ForwardState forward(const NetData& nd, const Vector& w) {
  ForwardState fs;
  const int H = nd.depth;
  fs.prefix.resize(H + 1);
  fs.suffix.resize(H + 1);
  fs.prefix[1] = Matrix::Identity(nd.dims[0], nd.dims[0]);
  for (int h = 2; h <= H; ++h) fs.prefix[h] = layer(nd, w, h - 1) * fs.prefix[h - 1];
  fs.suffix[H] = Matrix::Identity(nd.dims[H], nd.dims[H]);
  for (int h = H - 1; h >= 1; --h) fs.suffix[h] = fs.suffix[h + 1] * layer(nd, w, h + 1);
  fs.P = layer(nd, w, H) * fs.prefix[H];
  return fs;
}

Vector pack_grads(const NetData& nd, const std::vector<Matrix>& per_layer) {
  Vector out(nd.D);
  for (int h = 1; h <= nd.depth; ++h) {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> dst(
        out.data() + nd.offsets[h - 1], nd.dims[h], nd.dims[h - 1]);
    dst = per_layer[h];
  }
  return out;
}

Vector net_gradient(const NetData& nd, const Vector& w) {
  const ForwardState fs = forward(nd, w);
  const Matrix G = 2.0 * (fs.P * nd.Sxx - nd.Syx);
  std::vector<Matrix> per(nd.depth + 1);
  for (int h = 1; h <= nd.depth; ++h) {
    per[h] = fs.suffix[h].transpose() * G * fs.prefix[h].transpose();
  }
  return pack_grads(nd, per);
}

// Directional derivative of the gradient along dw, forward mode through the
// same prefix/suffix recurrences.
Vector net_hessian_vec(const NetData& nd, const Vector& w, const Vector& dw) {
  const int H = nd.depth;
  std::vector<Matrix> prefix(H + 1), dprefix(H + 1), suffix(H + 1), dsuffix(H + 1);
  prefix[1] = Matrix::Identity(nd.dims[0], nd.dims[0]);
  dprefix[1] = Matrix::Zero(nd.dims[0], nd.dims[0]);
  for (int h = 2; h <= H; ++h) {
    prefix[h] = layer(nd, w, h - 1) * prefix[h - 1];
    dprefix[h] = layer(nd, dw, h - 1) * prefix[h - 1] + layer(nd, w, h - 1) * dprefix[h - 1];
  }
  suffix[H] = Matrix::Identity(nd.dims[H], nd.dims[H]);
  dsuffix[H] = Matrix::Zero(nd.dims[H], nd.dims[H]);
  for (int h = H - 1; h >= 1; --h) {
    suffix[h] = suffix[h + 1] * layer(nd, w, h + 1);
    dsuffix[h] = dsuffix[h + 1] * layer(nd, w, h + 1) + suffix[h + 1] * layer(nd, dw, h + 1);
  }
  const Matrix P = layer(nd, w, H) * prefix[H];
  const Matrix dP = layer(nd, dw, H) * prefix[H] + layer(nd, w, H) * dprefix[H];
  const Matrix G = 2.0 * (P * nd.Sxx - nd.Syx);
  const Matrix dG = 2.0 * (dP * nd.Sxx);

  std::vector<Matrix> per(H + 1);
  for (int h = 1; h <= H; ++h) {
    per[h] = dsuffix[h].transpose() * G * prefix[h].transpose() +
             suffix[h].transpose() * dG * prefix[h].transpose() +
             suffix[h].transpose() * G * dprefix[h].transpose();
  }
  return pack_grads(nd, per);
}

Vector saddle_point(const NetData& nd, const LinearNetSpec& spec) {
  const int dy = nd.dims.back();
  const Matrix Sig = nd.Syx * nd.SxxInv * nd.Syx.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Sig + Sig.transpose()));
  Vector lam(dy);
  Matrix U(dy, dy);
  for (int j = 0; j < dy; ++j) {  // descending order
    lam[j] = es.eigenvalues()[dy - 1 - j];
    U.col(j) = es.eigenvectors().col(dy - 1 - j);
  }
  const double lmax = lam[0];
  if (!(lam[dy - 1] > 0.0)) throw Error("linear_net: Sigma has a nonpositive eigenvalue");
  for (int j = 0; j + 1 < dy; ++j) {
    if (lam[j] - lam[j + 1] <= 1e-10 * std::max(1.0, lmax)) {
      throw Error("linear_net: Sigma eigenvalues are not distinct");
    }
  }

  const int ns = static_cast<int>(spec.index_set.size());
  Matrix US(dy, ns);
  for (int j = 0; j < ns; ++j) US.col(j) = U.col(spec.index_set[j] - 1);

  Vector w = Vector::Zero(nd.D);
  const int H = nd.depth;
  {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> W1(
        w.data() + nd.offsets[0], nd.dims[1], nd.dims[0]);
    W1.setZero();
    W1.topRows(ns) = US.transpose() * nd.Syx * nd.SxxInv;
  }
  for (int h = 2; h <= H - 1; ++h) {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Wh(
        w.data() + nd.offsets[h - 1], nd.dims[h], nd.dims[h - 1]);
    Wh.setIdentity();
  }
  {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> WH(
        w.data() + nd.offsets[H - 1], nd.dims[H], nd.dims[H - 1]);
    WH.setZero();
    WH.leftCols(ns) = US;
  }
  return w;
}

}  // namespace

Vector construct_nn_saddle(const LinearNetSpec& spec) {
  auto nd = make_data(spec);
  return saddle_point(*nd, spec);
}

LinearNetBuild linear_net_loss(const LinearNetSpec& spec) {
  auto nd = make_data(spec);
  const Vector w_star = saddle_point(*nd, spec);

  auto energy = [nd](const Vector& w) {
    const ForwardState fs = forward(*nd, w);
    return (fs.P * nd->Sxx).cwiseProduct(fs.P).sum() - 2.0 * fs.P.cwiseProduct(nd->Syx).sum() + nd->yy;
  };
  auto gradient = [nd](const Vector& w) { return net_gradient(*nd, w); };
  auto hessian_vec = [nd](const Vector& w, const Vector& v) { return net_hessian_vec(*nd, w, v); };

  EnergyLandscape land("linear_nn", nd->D, energy, gradient);
  land.with_hessian_vec(hessian_vec);

  // classify the constructed saddle from the assembled Hessian spectrum
  Matrix Hs(nd->D, nd->D);
  Vector e = Vector::Zero(nd->D);
  for (int j = 0; j < nd->D; ++j) {
    e[j] = 1.0;
    Hs.col(j) = net_hessian_vec(*nd, w_star, e);
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Hs + Hs.transpose()), Eigen::EigenvaluesOnly);
  const Vector lam = es.eigenvalues();
  const double lmax = lam.cwiseAbs().maxCoeff();

  SaddleTarget t;
  t.x_star = w_star;
  t.eigvals = lam;
  t.index_k = static_cast<int>((lam.array() < -1e-10 * lmax).count());
  t.degenerate = (lam.cwiseAbs().array() <= 1e-8 * lmax).count() > 0;
  land.with_known_saddle(std::move(t));

  LinearNetBuild build{std::move(land), w_star, {}, {}};
  for (int h = 1; h <= nd->depth; ++h) {
    build.layer_rows.push_back(nd->dims[h]);
    build.layer_cols.push_back(nd->dims[h - 1]);
  }
  return build;
}

Vector layerwise_gaussian_point(const LinearNetBuild& build, Rng& rng) {
  Vector w = build.w_star;
  int off = 0;
  for (std::size_t h = 0; h < build.layer_rows.size(); ++h) {
    const int n = build.layer_rows[h] * build.layer_cols[h];
    const double frob = w.segment(off, n).norm();
    const double sigma = 0.5 * frob / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) w[off + i] += sigma * rng.gaussian();
    off += n;
  }
  return w;
}

}  // namespace saddlescape
