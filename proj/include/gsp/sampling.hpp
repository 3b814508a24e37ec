#pragma once

// Sampling conditions and reconstruction of band-limited signals from
// samples on a vertex set S: the (I - Dbar B)^{-1} inverse, the expansion on
// the concentrated basis, and frame-based recovery with an arbitrary
// band-limited frame Y. Plus noise-to-MSE predictions.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <utility>

#include "gsp/graph.hpp"
#include "gsp/localization.hpp"
#include "gsp/random.hpp"

namespace gsp {

/// Length-n vector equal to x on S and exactly zero elsewhere.
class SampledSignal {
 public:
  SampledSignal(const Vector& x, VertexSet s) : values_(Vector::Zero(x.size())), sample_set_(std::move(s)) {
    sample_set_.check_bounds(static_cast<int>(x.size()), "sample");
    for (int v : sample_set_) values_(v) = x(v);
  }

  const Vector& values() const noexcept { return values_; }
  const VertexSet& sample_set() const noexcept { return sample_set_; }

 private:
  Vector values_;
  VertexSet sample_set_;
};

inline SampledSignal sample(const Vector& x, const VertexSet& s) { return SampledSignal(x, s); }

inline constexpr double kSamplingTol = 1e-8;
inline constexpr double kRankTol = 1e-10;

/// ||B Dbar||_2 <= 1 - tol.
inline bool check_sampling_condition(const ProjectorPair& p, double tol = kSamplingTol) {
  return max_singular_bd(p.with_vertex_complement()) <= 1.0 - tol;
}

/// Numerical rank of the full n x n matrix DB.
inline int db_rank(const ProjectorPair& p, double tol = kRankTol) {
  const Matrix db = p.mask().asDiagonal() * p.B();
  Eigen::JacobiSVD<Matrix> svd(db);
  return static_cast<int>((svd.singularValues().array() > tol).count());
}

struct GMatrix {
  Matrix g;                 // |S| x |F|, g(r, c) = U(S[r], F[c])
  Vector singular_values;   // descending, padded with zeros to |F|
  bool full_column_rank = false;
};

inline GMatrix g_matrix(const SpectralBasis& basis, const VertexSet& s, const FrequencySet& f) {
  s.check_bounds(basis.size(), "vertex");
  f.check_bounds(basis.size(), "frequency");
  GMatrix out;
  out.g = detail::select_rows(basis.columns(f), s.ids());
  out.singular_values = Vector::Zero(f.size());
  if (out.g.size() > 0) {
    Eigen::JacobiSVD<Matrix> svd(out.g);
    out.singular_values.head(svd.singularValues().size()) = svd.singularValues();
  }
  out.full_column_rank = f.size() > 0 && s.size() >= f.size() && out.singular_values(f.size() - 1) > kRankTol;
  return out;
}

namespace detail {

inline void require_matching_samples(const SampledSignal& xs, const ProjectorPair& p) {
  if (xs.values().size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "sample vector length");
  if (!(xs.sample_set() == p.vertices())) throw Error(ErrorCode::DimensionMismatch, "sample set differs from projector set");
}

/// Moore-Penrose pseudo-inverse; singular values below rel_tol * sigma_max are dropped.
inline Matrix pinv(const Matrix& m, double rel_tol = 1e-10) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  Vector inv = Vector::Zero(sv.size());
  const double cutoff = sv.size() ? rel_tol * sv(0) : 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
  return svd.matrixV().leftCols(sv.size()) * inv.asDiagonal() * svd.matrixU().leftCols(sv.size()).transpose();
}

}  // namespace detail

enum class InverseMode { Direct, Neumann };

/// x_hat = (I - Dbar B)^{-1} x_S. Neumann mode iterates x <- x_S + Dbar B x,
/// which converges because ||Dbar B|| < 1 under the sampling condition.
inline Vector recover_inverse(const SampledSignal& xs, const ProjectorPair& p, InverseMode mode = InverseMode::Direct) {
  detail::require_matching_samples(xs, p);
  if (!check_sampling_condition(p)) throw Error(ErrorCode::SamplingConditionViolated, "||B Dbar|| >= 1 - 1e-8");
  const Vector& rhs = xs.values();
  if (mode == InverseMode::Direct) {
    Matrix op = -(p.Dbar() * p.B());
    op.diagonal().array() += 1.0;
    return op.partialPivLu().solve(rhs);
  }
  Vector x = rhs;
  for (int it = 0; it < 100000; ++it) {
    Vector next = rhs + p.apply_Dbar(p.apply_B(x));
    const double step = (next - x).norm();
    x = std::move(next);
    if (step <= 1e-15 * std::max(1.0, x.norm())) return x;
  }
  throw Error(ErrorCode::ConvergenceFailure, "Neumann series did not converge");
}

/// x_hat = sum_i (1 / sigma_i^2) <x_S, psi_i> psi_i over the |F| band vectors.
inline Vector recover_concentrated(const SampledSignal& xs, const ConcentratedBasis& cb) {
  if (xs.values().size() != cb.psi.rows()) throw Error(ErrorCode::DimensionMismatch, "sample vector length");
  if (cb.size() > 0 && cb.sigma_sq.minCoeff() <= kRankTol)
    throw Error(ErrorCode::SamplingConditionViolated, "a concentration eigenvalue is zero");
  const Vector coeff = (cb.psi.transpose() * xs.values()).cwiseQuotient(cb.sigma_sq);
  return cb.psi * coeff;
}

/// Frame matrix Y with band-limited columns (BY = Y) supported on S (YD = Y).
class FrameSpec {
 public:
  const Matrix& Y() const noexcept { return y_; }

  /// Max deviations from the two invariants.
  double band_residual(const ProjectorPair& p) const { return (p.B() * y_ - y_).cwiseAbs().maxCoeff(); }
  double support_residual(const ProjectorPair& p) const {
    return (y_ * p.mask().asDiagonal() - y_).cwiseAbs().maxCoeff();
  }

  friend FrameSpec make_frame(const ProjectorPair& p, const Matrix& y);

 private:
  explicit FrameSpec(Matrix y) : y_(std::move(y)) {}
  Matrix y_;
};

/// Stores the representative B Y D, which defines the same operator B Y D B.
inline FrameSpec make_frame(const ProjectorPair& p, const Matrix& y) {
  if (y.rows() != p.size() || y.cols() != p.size()) throw Error(ErrorCode::DimensionMismatch, "frame must be n x n");
  const Matrix& uf = p.band_basis();
  return FrameSpec((uf * (uf.transpose() * y)) * p.mask().asDiagonal());
}

/// Y = D; the frame {B delta_u : u in S}.
inline FrameSpec canonical_frame(const ProjectorPair& p) { return make_frame(p, p.D()); }

/// Column u (u in S) is B delta_{N(u)}, N(u) the vertices within toroidal
/// distance r1 of u. Columns off S are zero.
inline FrameSpec local_set_frame(const Graph& g, const VertexSet& s, double r1, const ProjectorPair& p) {
  if (!g.has_coordinates()) throw Error(ErrorCode::MissingCoordinates, "local-set frames need vertex positions");
  if (!(s == p.vertices())) throw Error(ErrorCode::DimensionMismatch, "frame vertex set differs from projector set");
  const auto& pts = g.coordinates();
  Matrix y = Matrix::Zero(g.size(), g.size());
  for (int u : s)
    for (int v = 0; v < g.size(); ++v)
      if (torus_distance(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]) <= r1) y(v, u) = 1.0;
  return make_frame(p, y);
}

namespace detail {

/// |F| x |F| matrix U_F^T (B Y D B) U_F = U_F^T Y U_F.
inline Matrix reduced_frame_operator(const ProjectorPair& p, const FrameSpec& spec) {
  const Matrix& uf = p.band_basis();
  return uf.transpose() * spec.Y() * p.mask().asDiagonal() * uf;
}

}  // namespace detail

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool invertible = false;
  Vector singular_values;
};

/// Tightest frame bounds: extreme singular values of B Y D B on the band.
inline FrameBounds frame_analysis(const ProjectorPair& p, const FrameSpec& spec) {
  FrameBounds out;
  if (p.frequencies().empty()) return out;
  Eigen::JacobiSVD<Matrix> svd(detail::reduced_frame_operator(p, spec));
  out.singular_values = svd.singularValues();
  out.upper = out.singular_values(0);
  out.lower = out.singular_values(out.singular_values.size() - 1);
  out.invertible = out.lower > kRankTol;
  return out;
}

/// x_hat = (B Y D B)^+ B Y x_S, computed on the band coordinates.
inline Vector recover_frame(const SampledSignal& xs, const ProjectorPair& p, const FrameSpec& spec) {
  detail::require_matching_samples(xs, p);
  if (!frame_analysis(p, spec).invertible) throw Error(ErrorCode::FrameNotInvertible, "rank(BYDB) < rank(B)");
  const Matrix& uf = p.band_basis();
  const Vector coeff = detail::pinv(detail::reduced_frame_operator(p, spec)) * (uf.transpose() * (spec.Y() * xs.values()));
  return uf * coeff;
}

/// noise_var * sum_i 1/sigma_i^2 for white noise on the samples.
inline double predicted_mse(const ConcentratedBasis& cb, double noise_var) {
  if (cb.size() > 0 && cb.sigma_sq.minCoeff() <= kRankTol)
    throw Error(ErrorCode::SamplingConditionViolated, "a concentration eigenvalue is zero");
  return noise_var * cb.sigma_sq.cwiseInverse().sum();
}

/// noise_var * sum_i 1/s_i over the nonzero singular values s_i of the
/// reduced B Y D B (the trace form of the pseudo-inverse norm). Equals
/// predicted_mse for the canonical frame. For other frames this is a
/// conditioning index of the frame operator, not the realized error; see
/// frame_noise_mse for that.
inline double predicted_mse_frame(const ProjectorPair& p, const FrameSpec& spec, double noise_var) {
  const FrameBounds fb = frame_analysis(p, spec);
  if (!fb.invertible) throw Error(ErrorCode::FrameNotInvertible, "rank(BYDB) < rank(B)");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < fb.singular_values.size(); ++i)
    if (fb.singular_values(i) > 1e-10 * fb.upper) sum += 1.0 / fb.singular_values(i);
  return noise_var * sum;
}

/// Expected ||x_hat - x||^2 of recover_frame under white sample noise:
/// noise_var * ||(B Y D B)^+ U_F^T Y||_F^2.
inline double frame_noise_mse(const ProjectorPair& p, const FrameSpec& spec, double noise_var) {
  if (!frame_analysis(p, spec).invertible) throw Error(ErrorCode::FrameNotInvertible, "rank(BYDB) < rank(B)");
  const Matrix gain = detail::pinv(detail::reduced_frame_operator(p, spec)) * (p.band_basis().transpose() * spec.Y());
  return noise_var * gain.squaredNorm();
}

enum class RecoveryMethod { Inverse, Concentrated, Frame };

struct RecoveryReport {
  Vector x_hat;
  double relative_error = 0.0;     // ||x_hat - x|| / ||x||; 0 without ground truth
  double predicted_mse = 0.0;      // per unit noise variance
  double condition = 0.0;          // sigma_min / sigma_max of the recovery operator
};

/// Runs one recovery method and collects diagnostics. A Frame recovery
/// without an explicit frame uses the canonical one.
inline RecoveryReport recover(const SampledSignal& xs, const ProjectorPair& p, RecoveryMethod method,
                              const std::optional<Vector>& truth = std::nullopt,
                              const std::optional<FrameSpec>& frame = std::nullopt) {
  RecoveryReport rep;
  if (method == RecoveryMethod::Frame) {
    const FrameSpec spec = frame ? *frame : canonical_frame(p);
    rep.x_hat = recover_frame(xs, p, spec);
    const FrameBounds fb = frame_analysis(p, spec);
    rep.condition = fb.upper > 0.0 ? fb.lower / fb.upper : 0.0;
    rep.predicted_mse = frame_noise_mse(p, spec, 1.0);
  } else {
    const ConcentratedBasis cb = concentrated_basis(p);
    rep.x_hat = method == RecoveryMethod::Inverse ? recover_inverse(xs, p) : recover_concentrated(xs, cb);
    rep.predicted_mse = predicted_mse(cb, 1.0);
    if (cb.size() > 0 && cb.sigma_sq(0) > 0.0) rep.condition = std::sqrt(cb.sigma_sq(cb.size() - 1) / cb.sigma_sq(0));
  }
  if (truth) {
    const double scale = truth->norm();
    rep.relative_error = (rep.x_hat - *truth).norm() / (scale > 0.0 ? scale : 1.0);
  }
  return rep;
}

/// U_F c with c i.i.d. standard normal.
inline Vector random_bandlimited(const ProjectorPair& p, Rng& rng) {
  Vector c(p.band_basis().cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.normal();
  return p.band_basis() * c;
}

}  // namespace gsp
