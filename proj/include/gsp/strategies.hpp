#pragma once

// Sampling-set selection on u_tilde = U_F^T (|F| x n; column v is the band
// slice of vertex v): greedy MinPinv / MaxVol / MaxSigMin, top-norm MaxFro,
// uniform random, and exhaustive search for small n.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsp/random.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

enum class SelectionMethod { MinPinv, MaxFro, MaxVol, MaxSigMin, Random, Exhaustive };

inline const char* to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::MinPinv: return "minpinv";
    case SelectionMethod::MaxFro: return "maxfro";
    case SelectionMethod::MaxVol: return "maxvol";
    case SelectionMethod::MaxSigMin: return "maxsigmin";
    case SelectionMethod::Random: return "random";
    case SelectionMethod::Exhaustive: return "exhaustive";
  }
  return "unknown";
}

inline std::optional<SelectionMethod> parse_selection_method(std::string_view s) {
  for (auto m : {SelectionMethod::MinPinv, SelectionMethod::MaxFro, SelectionMethod::MaxVol, SelectionMethod::MaxSigMin,
                 SelectionMethod::Random, SelectionMethod::Exhaustive})
    if (s == to_string(m)) return m;
  return std::nullopt;
}

struct SelectionResult {
  VertexSet sample_set;
  std::vector<int> order;            // vertices in pick order
  std::vector<double> score_trace;
  SelectionMethod method = SelectionMethod::Random;
};

/// Objective optimized by select_exhaustive.
enum class SetObjective { MinPinvSum, MaxVolDet, MaxSigMin };

inline constexpr double kSelectionRankTol = 1e-10;

namespace detail {

/// Singular values of u_tilde[:, cols], descending.
inline Vector column_singular_values(const Matrix& ut, const std::vector<int>& cols) {
  if (cols.empty() || ut.rows() == 0) return Vector();
  return Eigen::JacobiSVD<Matrix>(select_columns(ut, cols)).singularValues();
}

/// (numerical rank among the top K, sum of 1/sigma^2 over those).
struct PinvScore {
  int rank = 0;
  double sum = 0.0;
  bool better_than(const PinvScore& o) const {
    if (rank != o.rank) return rank > o.rank;
    return sum < o.sum * (1.0 - 1e-12);
  }
};

inline PinvScore pinv_score(const Vector& sv, int k) {
  PinvScore s;
  for (int i = 0; i < k && i < sv.size(); ++i) {
    if (sv(i) <= kSelectionRankTol) break;
    ++s.rank;
    s.sum += 1.0 / (sv(i) * sv(i));
  }
  return s;
}

inline double volume(const Vector& sv, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= i < sv.size() ? sv(i) * sv(i) : 0.0;
  return v;
}

inline double kth_singular(const Vector& sv, int k) { return k >= 1 && k <= sv.size() ? sv(k - 1) : 0.0; }

inline bool strictly_greater(double a, double b) { return a > b + 1e-12 * std::abs(b); }

inline void check_count(const Matrix& ut, int m) {
  if (m < 0 || m > ut.cols()) throw Error(ErrorCode::ConfigError, "sample count must lie in [0, n]");
}

inline SelectionResult finish(std::vector<int> order, std::vector<double> trace, SelectionMethod method) {
  SelectionResult r;
  r.sample_set = VertexSet(order);
  r.order = std::move(order);
  r.score_trace = std::move(trace);
  r.method = method;
  return r;
}

enum class GreedyKind { MinPinv, MaxVol, MaxSigMin };

inline SelectionResult greedy(const Matrix& ut, int m, GreedyKind kind, SelectionMethod method) {
  check_count(ut, m);
  const int n = static_cast<int>(ut.cols());
  const int nf = static_cast<int>(ut.rows());
  std::vector<int> chosen;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<double> trace;
  for (int step = 0; step < m; ++step) {
    // MinPinv and MaxSigMin look at min(|S|+1, |F|) values of the augmented
    // set; MaxVol takes the top min(|S|+1, |F|) eigenvalues of its Gram matrix.
    const int k = std::min(step + 1, nf);
    int best = -1;
    PinvScore best_pinv;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<int> trial = chosen;
    trial.push_back(0);
    for (int j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      trial.back() = j;
      const Vector sv = column_singular_values(ut, trial);
      if (kind == GreedyKind::MinPinv) {
        const PinvScore s = pinv_score(sv, k);
        if (best < 0 || s.better_than(best_pinv)) {
          best = j;
          best_pinv = s;
        }
      } else {
        const double v = kind == GreedyKind::MaxVol ? volume(sv, k) : kth_singular(sv, k);
        if (best < 0 || strictly_greater(v, best_val)) {
          best = j;
          best_val = v;
        }
      }
    }
    chosen.push_back(best);
    used[static_cast<std::size_t>(best)] = 1;
    if (kind == GreedyKind::MinPinv)
      trace.push_back(best_pinv.rank == k ? best_pinv.sum : std::numeric_limits<double>::infinity());
    else
      trace.push_back(best_val);
  }
  return finish(std::move(chosen), std::move(trace), method);
}

}  // namespace detail

/// Sum of 1/sigma_i^2 over the top min(|S|, |F|) singular values of
/// u_tilde[:, S]; infinite when any of them is numerically zero.
inline double minpinv_objective(const Matrix& ut, const VertexSet& s) {
  const int k = std::min(s.size(), static_cast<int>(ut.rows()));
  const detail::PinvScore sc = detail::pinv_score(detail::column_singular_values(ut, s.ids()), k);
  return sc.rank == k ? sc.sum : std::numeric_limits<double>::infinity();
}

/// Product of the top min(|S|, |F|) eigenvalues of the Gram matrix.
inline double volume_objective(const Matrix& ut, const VertexSet& s) {
  return detail::volume(detail::column_singular_values(ut, s.ids()), std::min(s.size(), static_cast<int>(ut.rows())));
}

/// sigma_K of u_tilde[:, S], K = min(|S|, |F|).
inline double sigmin_objective(const Matrix& ut, const VertexSet& s) {
  return detail::kth_singular(detail::column_singular_values(ut, s.ids()),
                              std::min(s.size(), static_cast<int>(ut.rows())));
}

inline SelectionResult select_minpinv(const Matrix& ut, int m) {
  return detail::greedy(ut, m, detail::GreedyKind::MinPinv, SelectionMethod::MinPinv);
}

inline SelectionResult select_maxvol(const Matrix& ut, int m) {
  return detail::greedy(ut, m, detail::GreedyKind::MaxVol, SelectionMethod::MaxVol);
}

inline SelectionResult select_maxsigmin(const Matrix& ut, int m) {
  return detail::greedy(ut, m, detail::GreedyKind::MaxSigMin, SelectionMethod::MaxSigMin);
}

/// The m columns of largest norm. Norms equal to within the greedy
/// tolerance go to the lower id.
inline SelectionResult select_maxfro(const Matrix& ut, int m) {
  detail::check_count(ut, m);
  const Vector norms = ut.colwise().squaredNorm().transpose();
  std::vector<char> used(static_cast<std::size_t>(ut.cols()), 0);
  std::vector<int> ids;
  double total = 0.0;
  for (int step = 0; step < m; ++step) {
    int best = -1;
    for (int j = 0; j < static_cast<int>(ut.cols()); ++j)
      if (!used[static_cast<std::size_t>(j)] && (best < 0 || detail::strictly_greater(norms(j), norms(best)))) best = j;
    used[static_cast<std::size_t>(best)] = 1;
    ids.push_back(best);
    total += norms(best);
  }
  return detail::finish(std::move(ids), {total}, SelectionMethod::MaxFro);
}

inline SelectionResult select_random(int n, int m, std::uint64_t seed) {
  if (m < 0 || m > n) throw Error(ErrorCode::ConfigError, "sample count must lie in [0, n]");
  Rng rng(seed);
  return detail::finish(rng.sample_without_replacement(n, m), {0.0}, SelectionMethod::Random);
}

inline constexpr double kMaxExhaustiveSubsets = 1e6;

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

/// True optimum over all m-subsets; ties go to the lexicographically first.
inline SelectionResult select_exhaustive(const Matrix& ut, int m, SetObjective objective) {
  detail::check_count(ut, m);
  const int n = static_cast<int>(ut.cols());
  if (binomial(n, m) > kMaxExhaustiveSubsets) throw Error(ErrorCode::TooLarge, "more than 1e6 subsets");
  const int k = std::min(m, static_cast<int>(ut.rows()));
  std::vector<int> comb(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;
  std::vector<int> best = comb;
  detail::PinvScore best_pinv;
  double best_val = -std::numeric_limits<double>::infinity();
  bool first = true;
  while (true) {
    const Vector sv = detail::column_singular_values(ut, comb);
    if (objective == SetObjective::MinPinvSum) {
      const detail::PinvScore s = detail::pinv_score(sv, k);
      if (first || s.better_than(best_pinv)) {
        best_pinv = s;
        best = comb;
      }
    } else {
      const double v = objective == SetObjective::MaxVolDet ? detail::volume(sv, k) : detail::kth_singular(sv, k);
      if (first || detail::strictly_greater(v, best_val)) {
        best_val = v;
        best = comb;
      }
    }
    first = false;
    int i = m - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  double score = best_val;
  if (objective == SetObjective::MinPinvSum)
    score = best_pinv.rank == k ? best_pinv.sum : std::numeric_limits<double>::infinity();
  return detail::finish(std::move(best), {score}, SelectionMethod::Exhaustive);
}

/// Dispatch by method; Random uses `seed`, Exhaustive minimizes the MinPinv sum.
inline SelectionResult select(SelectionMethod method, const Matrix& ut, int m, std::uint64_t seed = 0) {
  switch (method) {
    case SelectionMethod::MinPinv: return select_minpinv(ut, m);
    case SelectionMethod::MaxFro: return select_maxfro(ut, m);
    case SelectionMethod::MaxVol: return select_maxvol(ut, m);
    case SelectionMethod::MaxSigMin: return select_maxsigmin(ut, m);
    case SelectionMethod::Random: return select_random(static_cast<int>(ut.cols()), m, seed);
    case SelectionMethod::Exhaustive: return select_exhaustive(ut, m, SetObjective::MinPinvSum);
  }
  throw Error(ErrorCode::ConfigError, "unknown selection method");
}

}  // namespace gsp
