#pragma once

// Graph Fourier basis and the vertex/band projector algebra.

#include <Eigen/Dense>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/graph.hpp"

namespace gsp {

/// Sorted, duplicate-free list of 0-based ids. The tag keeps vertex and
/// frequency sets from being mixed up.
template <class Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  IndexSet(std::initializer_list<int> ids) : IndexSet(std::vector<int>(ids)) {}

  /// {0, 1, ..., count-1}.
  static IndexSet first(int count) {
    std::vector<int> ids(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) ids[static_cast<std::size_t>(i)] = i;
    return IndexSet(std::move(ids));
  }

  const std::vector<int>& ids() const noexcept { return ids_; }
  int size() const noexcept { return static_cast<int>(ids_.size()); }
  bool empty() const noexcept { return ids_.empty(); }
  int operator[](int k) const { return ids_[static_cast<std::size_t>(k)]; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  bool contains(int id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

  /// {0..n-1} minus this set.
  IndexSet complement(int n) const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(std::max(n - size(), 0)));
    for (int i = 0; i < n; ++i)
      if (!contains(i)) out.push_back(i);
    return IndexSet(std::move(out));
  }

  /// Throws IndexOutOfRange unless every id lies in [0, n).
  void check_bounds(int n, const char* what) const {
    if (!ids_.empty() && (ids_.front() < 0 || ids_.back() >= n))
      throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index outside [0, " + std::to_string(n) + ")");
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> ids_;
};

struct VertexTag {};
struct FrequencyTag {};
using VertexSet = IndexSet<VertexTag>;
using FrequencySet = IndexSet<FrequencyTag>;

namespace detail {

/// Flip each column so its first entry with |x| > 1e-12 is positive.
inline void normalize_column_signs(Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > 1e-12) {
        if (m(r, c) < 0.0) m.col(c) *= -1.0;
        break;
      }
    }
  }
}

inline Matrix select_columns(const Matrix& m, const std::vector<int>& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(cols[k]);
  return out;
}

inline Matrix select_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
  return out;
}

/// M M^T with the upper triangle mirrored, so the result is exactly symmetric.
inline Matrix symmetric_product(const Matrix& m) {
  Matrix out = m * m.transpose();
  out.triangularView<Eigen::StrictlyLower>() = out.transpose().triangularView<Eigen::StrictlyLower>();
  return out;
}

}  // namespace detail

/// Orthonormal eigenvectors (columns of U) with ascending eigenvalues xi.
struct SpectralBasis {
  Matrix U;
  Vector xi;

  int size() const noexcept { return static_cast<int>(U.rows()); }
  /// n x |F| matrix of the selected basis columns.
  Matrix columns(const FrequencySet& f) const { return detail::select_columns(U, f.ids()); }
};

/// Dense symmetric eigensolve; eigenvectors normalized to the sign
/// convention above.
inline SpectralBasis eigendecompose(const Matrix& symmetric) {
  if (symmetric.rows() != symmetric.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  SpectralBasis basis{solver.eigenvectors(), solver.eigenvalues()};
  detail::normalize_column_signs(basis.U);
  return basis;
}

inline SpectralBasis eigendecompose(const Laplacian& l) { return eigendecompose(l.matrix); }

enum class LaplacianKind { Combinatorial, Normalized };

inline SpectralBasis graph_basis(const Graph& g, LaplacianKind kind = LaplacianKind::Combinatorial) {
  return eigendecompose(kind == LaplacianKind::Combinatorial ? build_laplacian(g) : build_normalized_laplacian(g));
}

/// x_hat = U^T x.
inline Vector gft(const SpectralBasis& basis, const Vector& x) {
  if (x.size() != basis.U.rows()) throw Error(ErrorCode::DimensionMismatch, "signal length must equal vertex count");
  return basis.U.transpose() * x;
}

/// x = U x_hat.
inline Vector igft(const SpectralBasis& basis, const Vector& x_hat) {
  if (x_hat.size() != basis.U.cols()) throw Error(ErrorCode::DimensionMismatch, "spectrum length must equal vertex count");
  return basis.U * x_hat;
}

/// Vertex-limiting projector D (set S) and band-limiting projector B (set F),
/// with their complements. D is kept as a 0/1 mask; B is kept dense and in
/// factored form U_F U_F^T.
class ProjectorPair {
 public:
  ProjectorPair(const SpectralBasis& basis, VertexSet s, FrequencySet f)
      : s_(std::move(s)), f_(std::move(f)) {
    const int n = basis.size();
    s_.check_bounds(n, "vertex");
    f_.check_bounds(n, "frequency");
    mask_ = Vector::Zero(n);
    for (int v : s_) mask_(v) = 1.0;
    band_ = basis.columns(f_);
    band_complement_ = basis.columns(f_.complement(n));
    b_ = detail::symmetric_product(band_);
  }

  int size() const noexcept { return static_cast<int>(mask_.size()); }
  const VertexSet& vertices() const noexcept { return s_; }
  const FrequencySet& frequencies() const noexcept { return f_; }

  /// Diagonal of D.
  const Vector& mask() const noexcept { return mask_; }
  /// U_F, n x |F|.
  const Matrix& band_basis() const noexcept { return band_; }
  /// U_{F complement}, n x (n - |F|).
  const Matrix& band_complement_basis() const noexcept { return band_complement_; }

  Matrix D() const { return mask_.asDiagonal(); }
  Matrix Dbar() const { return (Vector::Ones(size()) - mask_).asDiagonal(); }
  const Matrix& B() const noexcept { return b_; }
  Matrix Bbar() const { return Matrix::Identity(size(), size()) - b_; }

  Vector apply_D(const Vector& x) const { return mask_.cwiseProduct(x); }
  Vector apply_Dbar(const Vector& x) const { return x - mask_.cwiseProduct(x); }
  Vector apply_B(const Vector& x) const { return band_ * (band_.transpose() * x); }

  /// |S| x |F| block U[S, F].
  Matrix sampled_band() const { return detail::select_rows(band_, s_.ids()); }

  /// Same band, vertex set replaced by its complement.
  ProjectorPair with_vertex_complement() const {
    ProjectorPair out = *this;
    out.s_ = s_.complement(size());
    out.mask_ = Vector::Ones(size()) - mask_;
    return out;
  }

  /// Same vertex set, band replaced by its complement.
  ProjectorPair with_band_complement() const {
    ProjectorPair out = *this;
    out.f_ = f_.complement(size());
    std::swap(out.band_, out.band_complement_);
    out.b_ = detail::symmetric_product(out.band_);
    return out;
  }

 private:
  VertexSet s_;
  FrequencySet f_;
  Vector mask_;
  Matrix band_;
  Matrix band_complement_;
  Matrix b_;
};

inline ProjectorPair make_projectors(const SpectralBasis& basis, VertexSet s, FrequencySet f) {
  return ProjectorPair(basis, std::move(s), std::move(f));
}

}  // namespace gsp
