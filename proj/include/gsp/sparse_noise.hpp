#pragma once

// Least-absolute-deviations recovery of band-limited signals hit by sparse,
// arbitrarily large corruption, with the accompanying recoverability checks
// and coherence bounds.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gsp/lp.hpp"
#include "gsp/random.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

struct L1Solution {
  Vector s_hat;
  double objective = 0.0;   // ||r - s_hat||_1
  int iterations = 0;
  bool certified = false;
};

/// s_hat = U_F c*, c* = argmin_c ||r - U_F c||_1. Solved as the split LP
///   min 1^T (e+ + e-)  s.t.  U_F c+ - U_F c- + e+ - e- = r,  all parts >= 0.
inline L1Solution l1_recover(const Vector& r, const SpectralBasis& basis, const FrequencySet& f) {
  const int n = basis.size();
  if (r.size() != n) throw Error(ErrorCode::DimensionMismatch, "signal length must equal vertex count");
  if (f.empty()) throw Error(ErrorCode::DimensionMismatch, "frequency set must be nonempty");
  f.check_bounds(n, "frequency");
  const Matrix uf = basis.columns(f);
  const int k = f.size();

  Matrix a(n, 2 * k + 2 * n);
  a << uf, -uf, Matrix::Identity(n, n), -Matrix::Identity(n, n);
  Vector cost = Vector::Zero(a.cols());
  cost.tail(2 * n).setOnes();
  std::vector<int> start(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) start[static_cast<std::size_t>(i)] = r(i) >= 0.0 ? 2 * k + i : 2 * k + n + i;

  const lp::Result res = lp::solve(a, r, cost, std::move(start));
  if (!res.certified) throw Error(ErrorCode::SolverFailure, "LP optimum not certified");
  const Vector c = res.x.head(k) - res.x.segment(k, k);
  L1Solution out;
  out.s_hat = uf * c;
  out.objective = (r - out.s_hat).lpNorm<1>();
  out.iterations = res.iterations;
  out.certified = res.certified;
  return out;
}

/// Vertices where |r - s_hat| exceeds tol * max(1, ||r||_inf).
inline VertexSet residual_support(const Vector& r, const Vector& s_hat, double tol = 1e-8) {
  const double cutoff = tol * std::max(1.0, r.cwiseAbs().maxCoeff());
  std::vector<int> ids;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (std::abs(r(i) - s_hat(i)) > cutoff) ids.push_back(static_cast<int>(i));
  return VertexSet(std::move(ids));
}

/// max_j sum_i |(DB)_ij| < min_j sum_i |(Dbar B)_ij|, j over the columns of
/// the n x n matrices.
inline bool null_space_condition(const ProjectorPair& p) {
  const Matrix& b = p.B();
  const Vector in = (p.mask().asDiagonal() * b).cwiseAbs().colwise().sum().transpose();
  const Vector out = ((Vector::Ones(p.size()) - p.mask()).asDiagonal() * b).cwiseAbs().colwise().sum().transpose();
  return in.maxCoeff() < out.minCoeff();
}

/// max over j in F, i in V of |U(i, j)|.
inline double coherence_mu(const SpectralBasis& basis, const FrequencySet& f) {
  if (f.empty()) throw Error(ErrorCode::DimensionMismatch, "frequency set must be nonempty");
  f.check_bounds(basis.size(), "frequency");
  return basis.columns(f).cwiseAbs().maxCoeff();
}

/// mu^2 |S| |F|, an upper bound on ||D f||_1 / ||f||_1 over band-limited f.
inline double l1_concentration_bound(double mu, int s_size, int f_size) {
  return mu * mu * static_cast<double>(s_size) * static_cast<double>(f_size);
}

/// Lower bound on |S||F| for a unit-l1 signal with ||Df||_1 >= alpha1 and
/// ||Bf||_1 >= beta1.
inline double l1_uncertainty_bound(double alpha1, double beta1, double mu) {
  return (alpha1 + beta1 - 1.0) / (mu * mu * (2.0 - beta1));
}

/// Largest integer |S| with |S| < 1 / (2 mu^2 |F|).
inline int unknown_support_bound(double mu, int f_size) {
  const double limit = 1.0 / (2.0 * mu * mu * static_cast<double>(f_size));
  return std::max(0, static_cast<int>(std::ceil(limit * (1.0 - 1e-9))) - 1);
}

/// ||D f||_1 / ||f||_1, 0 for f = 0.
inline double l1_concentration_ratio(const Vector& f, const VertexSet& s) {
  double in = 0.0;
  for (int v : s) in += std::abs(f(v));
  const double total = f.lpNorm<1>();
  return total > 0.0 ? in / total : 0.0;
}

/// Adds i.i.d. uniform [-amplitude, amplitude] noise on the vertices of s.
inline Vector corrupt(const Vector& signal, const VertexSet& s, double amplitude, Rng& rng) {
  Vector r = signal;
  for (int v : s) r(v) += rng.uniform(-amplitude, amplitude);
  return r;
}

/// Default corruption amplitude: 10x the signal RMS.
inline double default_corruption_amplitude(const Vector& signal) {
  return signal.size() ? 10.0 * signal.norm() / std::sqrt(static_cast<double>(signal.size())) : 0.0;
}

}  // namespace gsp
