#pragma once

// Dense tableau simplex for small standard-form LPs
//   min c^T x  s.t.  A x = b, x >= 0
// started from a caller-supplied feasible basis. Dantzig pricing, with a
// switch to Bland's rule after a run of degenerate pivots so the method
// always terminates.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/graph.hpp"

namespace gsp::lp {

struct Result {
  Vector x;
  Vector dual;          // y with B^T y = c_B
  double objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  bool certified = false;
  std::vector<int> basis;
};

struct Options {
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-10;
  double certificate_tol = 1e-8;
  int degenerate_run = 50;
  int max_iterations = 0;   // 0 picks 50 * (rows + cols)
};

/// `basis[i]` is the variable basic in row i; B = A[:, basis] must be
/// invertible with B^{-1} b >= 0.
inline Result solve(const Matrix& a, const Vector& b, const Vector& c, std::vector<int> basis, const Options& opt = {}) {
  const Eigen::Index m = a.rows();
  const Eigen::Index nv = a.cols();
  if (b.size() != m || c.size() != nv || static_cast<Eigen::Index>(basis.size()) != m)
    throw Error(ErrorCode::DimensionMismatch, "LP shapes disagree");

  Matrix bmat(m, m);
  for (Eigen::Index i = 0; i < m; ++i) bmat.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
  Eigen::PartialPivLU<Matrix> lu(bmat);
  Matrix tab(m, nv + 1);
  tab.leftCols(nv) = lu.solve(a);
  tab.col(nv) = lu.solve(b);

  Vector cb(m);
  for (Eigen::Index i = 0; i < m; ++i) cb(i) = c(basis[static_cast<std::size_t>(i)]);
  Eigen::RowVectorXd reduced = c.transpose() - cb.transpose() * tab.leftCols(nv);

  const int cap = opt.max_iterations > 0 ? opt.max_iterations : static_cast<int>(50 * (m + nv));
  Result res;
  int degenerate = 0;
  bool optimal = false;
  for (res.iterations = 0; res.iterations < cap; ++res.iterations) {
    const bool bland = degenerate >= opt.degenerate_run;
    Eigen::Index enter = -1;
    double best = -opt.optimality_tol;
    for (Eigen::Index j = 0; j < nv; ++j) {
      if (reduced(j) < best) {
        enter = j;
        if (bland) break;
        best = reduced(j);
      }
    }
    if (enter < 0) {
      optimal = true;
      break;
    }

    Eigen::Index leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double aij = tab(i, enter);
      if (aij <= opt.pivot_tol) continue;
      const double r = std::max(tab(i, nv), 0.0) / aij;
      if (r < ratio - 1e-14 ||
          (r <= ratio + 1e-14 && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        ratio = r;
        leave = i;
      }
    }
    if (leave < 0) throw Error(ErrorCode::SolverFailure, "LP is unbounded");
    degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;

    tab.row(leave) /= tab(leave, enter);
    for (Eigen::Index i = 0; i < m; ++i)
      if (i != leave && tab(i, enter) != 0.0) tab.row(i) -= tab(i, enter) * tab.row(leave);
    reduced -= reduced(enter) * tab.row(leave).head(nv);
    basis[static_cast<std::size_t>(leave)] = static_cast<int>(enter);
  }
  if (!optimal) throw Error(ErrorCode::SolverFailure, "simplex iteration cap reached");

  // Recompute primal and dual from the original data for accuracy.
  for (Eigen::Index i = 0; i < m; ++i) {
    bmat.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
    cb(i) = c(basis[static_cast<std::size_t>(i)]);
  }
  lu.compute(bmat);
  const Vector xb = lu.solve(b);
  res.x = Vector::Zero(nv);
  for (Eigen::Index i = 0; i < m; ++i) res.x(basis[static_cast<std::size_t>(i)]) = xb(i);
  res.dual = lu.transpose().solve(cb);
  res.objective = c.dot(res.x);
  res.dual_objective = b.dot(res.dual);

  const double scale = std::max(1.0, std::abs(res.objective));
  const double primal_infeas = std::max((a * res.x - b).cwiseAbs().maxCoeff(), std::max(-res.x.minCoeff(), 0.0));
  const double dual_infeas = std::max(-(c - a.transpose() * res.dual).minCoeff(), 0.0);
  res.certified = primal_infeas <= opt.certificate_tol * std::max(1.0, b.cwiseAbs().maxCoeff()) &&
                  dual_infeas <= opt.certificate_tol &&
                  std::abs(res.objective - res.dual_objective) <= opt.certificate_tol * scale;
  res.basis = std::move(basis);
  return res;
}

}  // namespace gsp::lp
