#pragma once

// Shared fixtures and brute-force oracles for the test suites.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "gsp/gsp.hpp"

namespace gsp::test {

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Component count by plain BFS over the adjacency matrix.
inline int bfs_components(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++count;
    std::queue<int> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v)
        if (a(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          q.push(v);
        }
    }
  }
  return count;
}

/// Connected torus RGG; retries seeds derived from `seed`.
inline Graph connected_rgg(int n, double r0, std::uint64_t seed) {
  for (std::uint64_t k = 0;; ++k) {
    Graph g = generate_rgg_torus(n, r0, derive_seed(seed, k));
    if (bfs_components(g.adjacency()) == 1) return g;
  }
}

inline VertexSet random_vertices(int n, int m, Rng& rng) { return VertexSet(rng.sample_without_replacement(n, m)); }
inline FrequencySet random_frequencies(int n, int m, Rng& rng) {
  return FrequencySet(rng.sample_without_replacement(n, m));
}

inline Vector random_vector(int n, Rng& rng) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.normal();
  return x;
}

/// Largest singular value of a dense matrix (SVD oracle).
inline double sigma_max(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

/// Eigenvalues of a symmetric matrix, descending.
inline Vector eigenvalues_desc(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

/// min_c ||r - U c||_1 by enumerating every k-row interpolation set
/// (an LAD optimum interpolates k rows when U has full column rank).
inline double lad_bruteforce(const Vector& r, const Matrix& u) {
  const int n = static_cast<int>(u.rows());
  const int k = static_cast<int>(u.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    Matrix sub(k, k);
    Vector rhs(k);
    for (int i = 0; i < k; ++i) {
      sub.row(i) = u.row(comb[static_cast<std::size_t>(i)]);
      rhs(i) = r(comb[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Matrix> lu(sub);
    if (lu.rank() == k) best = std::min(best, (r - u * lu.solve(rhs)).lpNorm<1>());
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

/// Calls f on every m-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int m, F f) {
  std::vector<int> comb(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(comb);
    int i = m - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace gsp::test
