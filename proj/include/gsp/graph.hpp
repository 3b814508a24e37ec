#pragma once

// Undirected weighted graphs, random generators, edge-list ingestion and
// Laplacian assembly. Vertex ids are 0-based.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/random.hpp"

namespace gsp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Per-axis wrap-around distance on the unit torus [0,1)^2.
inline double torus_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  double dx = std::abs(a.x() - b.x());
  double dy = std::abs(a.y() - b.y());
  dx = std::min(dx, 1.0 - dx);
  dy = std::min(dy, 1.0 - dy);
  return std::sqrt(dx * dx + dy * dy);
}

/// Largest possible toroidal distance, attained at offset (1/2, 1/2).
inline constexpr double kMaxTorusDistance = 0.70710678118654752440;

class Graph {
 public:
  /// Validates symmetry, zero diagonal and nonnegative weights.
  explicit Graph(Matrix adjacency, std::optional<std::vector<Eigen::Vector2d>> coordinates = std::nullopt)
      : adjacency_(std::move(adjacency)), coordinates_(std::move(coordinates)) {
    const auto n = adjacency_.rows();
    if (n < 1 || adjacency_.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "adjacency must be square with n >= 1");
    if (coordinates_ && static_cast<Eigen::Index>(coordinates_->size()) != n)
      throw Error(ErrorCode::DimensionMismatch, "one coordinate per vertex required");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (adjacency_(i, i) != 0.0) throw Error(ErrorCode::SelfLoop, "nonzero adjacency diagonal");
      for (Eigen::Index j = 0; j < n; ++j) {
        if (adjacency_(i, j) < 0.0 || !std::isfinite(adjacency_(i, j)))
          throw Error(ErrorCode::ParseError, "adjacency weights must be finite and >= 0");
        if (adjacency_(i, j) != adjacency_(j, i))
          throw Error(ErrorCode::DimensionMismatch, "adjacency must be symmetric");
      }
    }
  }

  static Graph edgeless(int n) { return Graph(Matrix::Zero(n, n)); }

  int size() const noexcept { return static_cast<int>(adjacency_.rows()); }
  const Matrix& adjacency() const noexcept { return adjacency_; }
  bool has_coordinates() const noexcept { return coordinates_.has_value(); }
  const std::vector<Eigen::Vector2d>& coordinates() const {
    if (!coordinates_) throw Error(ErrorCode::MissingCoordinates, "graph has no vertex positions");
    return *coordinates_;
  }

  Vector degrees() const { return adjacency_.rowwise().sum(); }

  int edge_count() const {
    int count = 0;
    for (Eigen::Index i = 0; i < adjacency_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < adjacency_.cols(); ++j)
        if (adjacency_(i, j) > 0.0) ++count;
    return count;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
      if (adjacency_(v, j) > 0.0) out.push_back(j);
    return out;
  }

 private:
  Matrix adjacency_;
  std::optional<std::vector<Eigen::Vector2d>> coordinates_;
};

struct Laplacian {
  Matrix matrix;
  Vector degree;
};

/// Combinatorial Laplacian L = K - A.
inline Laplacian build_laplacian(const Graph& g) {
  Vector k = g.degrees();
  Matrix l = -g.adjacency();
  l.diagonal() += k;
  return {std::move(l), std::move(k)};
}

/// Symmetric normalized Laplacian K^{-1/2} L K^{-1/2}.
inline Laplacian build_normalized_laplacian(const Graph& g) {
  Laplacian lap = build_laplacian(g);
  const auto n = lap.matrix.rows();
  Vector inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lap.degree(i) <= 0.0)
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(i) + " has zero degree");
    inv_sqrt(i) = 1.0 / std::sqrt(lap.degree(i));
  }
  lap.matrix = inv_sqrt.asDiagonal() * lap.matrix * inv_sqrt.asDiagonal();
  // Exact symmetry; the product can differ in the last ulp.
  lap.matrix = (0.5 * (lap.matrix + lap.matrix.transpose())).eval();
  return lap;
}

/// Component label per vertex (labels 0.. in order of first vertex), by BFS.
inline std::vector<int> connected_components(const Graph& g) {
  const int n = g.size();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::queue<int> frontier;
    frontier.push(s);
    label[static_cast<std::size_t>(s)] = next;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w = 0; w < n; ++w) {
        if (g.adjacency()(v, w) > 0.0 && label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

inline int component_count(const Graph& g) {
  const auto labels = connected_components(g);
  return labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
}

inline bool is_connected(const Graph& g) { return component_count(g) == 1; }

/// Random geometric graph on the unit torus with unit edge weights:
/// i ~ j iff torus_distance(p_i, p_j) <= r0.
inline Graph generate_rgg_torus(int n, double r0, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::ConfigError, "rgg: n must be >= 1");
  if (!(r0 >= 0.0)) throw Error(ErrorCode::ConfigError, "rgg: r0 must be >= 0");
  Rng rng(seed);
  std::vector<Eigen::Vector2d> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    p = {x, y};
  }
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (torus_distance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]) <= r0)
        a(i, j) = a(j, i) = 1.0;
  return Graph(std::move(a), std::move(pts));
}

/// Barabasi-Albert preferential attachment. Seed: clique on m+1 vertices;
/// every later vertex links to m distinct earlier vertices chosen with
/// probability proportional to their current degree.
inline Graph generate_scale_free(int n, int m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw Error(ErrorCode::ConfigError, "scale-free: need n > m >= 1");
  Rng rng(seed);
  Matrix a = Matrix::Zero(n, n);
  // Each vertex appears once per incident edge, so a uniform draw from this
  // list is a degree-proportional draw.
  std::vector<int> endpoints;
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      a(i, j) = a(j, i) = 1.0;
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  std::vector<int> targets;
  for (int v = m + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m) {
      const int t = endpoints[static_cast<std::size_t>(rng.below(endpoints.size()))];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (int t : targets) {
      a(v, t) = a(t, v) = 1.0;
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return Graph(std::move(a));
}

/// Parses "i j [w]" lines; '#' starts a comment; LF or CRLF.
inline Graph parse_edge_list(std::istream& in) {
  std::map<std::pair<int, int>, double> edges;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (tok.size() < 2 || tok.size() > 3) throw Error(ErrorCode::ParseError, "expected 'i j [w]'" + where);
    auto parse_id = [&](const std::string& s) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(s, &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad vertex id '" + s + "'" + where);
      }
      if (used != s.size() || v < 0 || v > 10'000'000)
        throw Error(ErrorCode::ParseError, "bad vertex id '" + s + "'" + where);
      return static_cast<int>(v);
    };
    const int i = parse_id(tok[0]);
    const int j = parse_id(tok[1]);
    double w = 1.0;
    if (tok.size() == 3) {
      std::size_t used = 0;
      try {
        w = std::stod(tok[2], &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad weight '" + tok[2] + "'" + where);
      }
      if (used != tok[2].size() || !std::isfinite(w) || w <= 0.0)
        throw Error(ErrorCode::ParseError, "weight must be positive" + where);
    }
    if (i == j) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(i) + where);
    edges[{std::min(i, j), std::max(i, j)}] = w;
    max_id = std::max({max_id, i, j});
  }
  if (edges.empty()) throw Error(ErrorCode::EmptyFile, "no edges found");
  const int n = max_id + 1;
  Matrix a = Matrix::Zero(n, n);
  for (const auto& [e, w] : edges) a(e.first, e.second) = a(e.second, e.first) = w;
  return Graph(std::move(a));
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return parse_edge_list(in);
}

}  // namespace gsp
