#pragma once

// Maximally vertex-concentrated band-limited vectors (eigenvectors of BDB)
// and the perfect-localization test.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gsp/spectral.hpp"

namespace gsp {

/// Eigenpairs of BDB restricted to the band: columns psi_i with
/// BDB psi_i = sigma_sq(i) psi_i, sigma_sq descending in [0, 1].
///
/// All |F| band eigenvectors are kept, including those with sigma_sq = 0;
/// rank() reports the numerical rank.
struct ConcentratedBasis {
  Matrix psi;
  Vector sigma_sq;

  int size() const noexcept { return static_cast<int>(sigma_sq.size()); }
  int rank(double tol = 1e-10) const {
    return static_cast<int>((sigma_sq.array() > tol).count());
  }
};

/// Computed on the |F| x |F| matrix U_F^T D U_F = G^T G, which has the same
/// nonzero spectrum as BDB, then lifted by U_F.
inline ConcentratedBasis concentrated_basis(const ProjectorPair& p) {
  const Matrix& uf = p.band_basis();
  const auto k = uf.cols();
  if (k == 0) return {Matrix(p.size(), 0), Vector(0)};
  const Matrix reduced = uf.transpose() * p.mask().asDiagonal() * uf;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "BDB eigensolve failed");
  ConcentratedBasis cb;
  cb.sigma_sq = solver.eigenvalues().reverse().cwiseMax(0.0).cwiseMin(1.0);
  cb.psi = uf * solver.eigenvectors().rowwise().reverse();
  detail::normalize_column_signs(cb.psi);
  return cb;
}

inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

/// sigma_max(BD) = sigma_max(DB) = largest singular value of U[S, F].
inline double max_singular_bd(const ProjectorPair& p) {
  if (p.vertices().empty() || p.frequencies().empty()) return 0.0;
  const Matrix g = p.sampled_band();
  Eigen::JacobiSVD<Matrix> svd(g);
  return clamp_unit(svd.singularValues()(0));
}

/// Singular values of U[S, F] in descending order, padded with zeros to |F|.
inline Vector sampled_band_singular_values(const ProjectorPair& p) {
  const int k = p.frequencies().size();
  Vector out = Vector::Zero(k);
  if (p.vertices().empty() || k == 0) return out;
  Eigen::JacobiSVD<Matrix> svd(p.sampled_band());
  out.head(svd.singularValues().size()) = svd.singularValues();
  return out;
}

/// True iff sigma_max(BD) >= 1 - tol, i.e. some band-limited vector is (to
/// within tol) supported on S. The top psi is then the witness.
inline bool is_perfectly_localized(const ProjectorPair& p, double tol = 1e-10) {
  return max_singular_bd(p) >= 1.0 - tol;
}

}  // namespace gsp
