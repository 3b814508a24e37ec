#pragma once

// Vertex/frequency uncertainty region: the four arccos constraints on
// (alpha, beta) = (||Df||, ||Bf||) for unit f, the boundary curves, vectors
// attaining the upper-right boundary, and the gamma-weighted dictionary
// (eigenvectors of gamma B + (1 - gamma) D) expressed through psi_i.

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

#include "gsp/localization.hpp"

namespace gsp {

/// Largest singular values of BD, B Dbar, Bbar D and Bbar Dbar.
struct UncertaintyCorners {
  double s_bd = 0.0;
  double s_bdc = 0.0;
  double s_bcd = 0.0;
  double s_bcdc = 0.0;
};

inline UncertaintyCorners corners(const ProjectorPair& p) {
  const ProjectorPair vc = p.with_vertex_complement();
  return {max_singular_bd(p), max_singular_bd(vc), max_singular_bd(p.with_band_complement()),
          max_singular_bd(vc.with_band_complement())};
}

inline double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

inline double complement_energy(double a) { return std::sqrt(std::max(0.0, 1.0 - a * a)); }

/// Smallest margin over the four constraints; >= 0 means admissible.
inline double admissibility_margin(double alpha, double beta, const UncertaintyCorners& c) {
  const double a = safe_acos(alpha);
  const double ac = safe_acos(complement_energy(alpha));
  const double b = safe_acos(beta);
  const double bc = safe_acos(complement_energy(beta));
  return std::min({a + b - safe_acos(c.s_bd), ac + b - safe_acos(c.s_bdc), a + bc - safe_acos(c.s_bcd),
                   ac + bc - safe_acos(c.s_bcdc)});
}

inline bool is_admissible(double alpha, double beta, const UncertaintyCorners& c, double slack = 1e-10) {
  return admissibility_margin(alpha, beta, c) >= -slack;
}

/// beta = alpha sigma + sqrt((1 - alpha^2)(1 - sigma^2)), i.e.
/// cos(acos(alpha) - acos(sigma)). Equals 1 at alpha = sigma.
inline double boundary_beta(double alpha, double sigma_max) {
  return clamp_unit(alpha * sigma_max + std::sqrt(std::max(0.0, (1.0 - alpha * alpha) * (1.0 - sigma_max * sigma_max))));
}

/// Boundary value of one corner constraint as a function of its own energy
/// variable: 1 while the constraint is slack, boundary_beta past sigma.
inline double corner_curve(double energy, double sigma) {
  return energy <= sigma ? 1.0 : boundary_beta(energy, sigma);
}

/// The four corner curves of the region at a given alpha.
struct RegionBoundary {
  double upper_right;
  double upper_left;
  double lower_right;
  double lower_left;
};

inline RegionBoundary region_boundary(double alpha, const UncertaintyCorners& c) {
  const double alpha_c = complement_energy(alpha);
  return {corner_curve(alpha, c.s_bd), corner_curve(alpha_c, c.s_bdc),
          complement_energy(corner_curve(alpha, c.s_bcd)), complement_energy(corner_curve(alpha_c, c.s_bcdc))};
}

struct ExtremalVector {
  Vector f;
  double alpha = 0.0;
  double beta = 0.0;
};

namespace detail {

inline void require_nondegenerate(double sigma) {
  if (sigma >= 1.0 - 1e-10) throw Error(ErrorCode::DegenerateSigma, "sigma_max(BD) is 1: perfectly localized vectors exist");
  if (sigma <= 1e-12) throw Error(ErrorCode::DegenerateSigma, "sigma_max(BD) is 0: band and vertex spaces are orthogonal");
}

}  // namespace detail

/// f' = p psi_1 + q D psi_1 with p = sqrt((1 - alpha^2)/(1 - sigma^2)) and
/// q = alpha/sigma - p; unit norm with ||Df'|| = alpha and ||Bf'|| on the
/// upper-right boundary.
inline ExtremalVector extremal_vector(const ConcentratedBasis& cb, const ProjectorPair& p, double alpha) {
  if (cb.size() == 0) throw Error(ErrorCode::DegenerateSigma, "empty band");
  const double sigma = std::sqrt(cb.sigma_sq(0));
  detail::require_nondegenerate(sigma);
  alpha = clamp_unit(alpha);
  const double pc = std::sqrt((1.0 - alpha * alpha) / (1.0 - sigma * sigma));
  const double qc = alpha / sigma - pc;
  const Vector psi = cb.psi.col(0);
  ExtremalVector out;
  out.f = pc * psi + qc * p.apply_D(psi);
  out.alpha = p.apply_D(out.f).norm();
  out.beta = p.apply_B(out.f).norm();
  return out;
}

/// alpha_i of the dictionary vector for eigenvalue sigma_sq of BDB.
inline double dictionary_alpha(double gamma, double sigma_sq) {
  const double root = std::sqrt((1.0 - 2.0 * gamma) * (1.0 - 2.0 * gamma) - 4.0 * gamma * (gamma - 1.0) * sigma_sq);
  return std::sqrt(std::clamp(0.5 * ((2.0 * gamma * (sigma_sq - 1.0) + 1.0) / root + 1.0), 0.0, 1.0));
}

/// Coefficients of f_i = p psi_i + q D psi_i.
struct DictionaryCoefficients {
  double alpha;
  double p;
  double q;
  double omega;
};

/// omega = (1 - gamma)(1 + p/q); when q is tiny the equivalent form
/// gamma (1 + sigma^2 q/p) is used instead.
inline DictionaryCoefficients dictionary_coefficients(double gamma, double sigma_sq) {
  const double sigma = std::sqrt(sigma_sq);
  detail::require_nondegenerate(sigma);
  DictionaryCoefficients c{};
  c.alpha = dictionary_alpha(gamma, sigma_sq);
  c.p = std::sqrt((1.0 - c.alpha * c.alpha) / (1.0 - sigma_sq));
  c.q = c.alpha / sigma - c.p;
  c.omega = std::abs(c.q) >= std::abs(c.p) ? (1.0 - gamma) * (1.0 + c.p / c.q) : gamma * (1.0 + sigma_sq * c.q / c.p);
  return c;
}

inline std::vector<double> dictionary_eigenvalues(double gamma, std::span<const double> sigma_sq) {
  std::vector<double> out;
  out.reserve(sigma_sq.size());
  for (double s2 : sigma_sq) out.push_back(dictionary_coefficients(gamma, s2).omega);
  return out;
}

struct DictionaryAtom {
  Vector f;
  double omega;
  double alpha;
  double beta;
};

inline constexpr double kMinDictionaryGamma = 1e-6;

/// The first K = rank(BD) eigenvectors of gamma B + (1 - gamma) D.
/// Perfectly localized psi_i (sigma_i = 1) are returned as is with omega = 1.
inline std::vector<DictionaryAtom> extremal_dictionary(const ProjectorPair& p, double gamma) {
  if (!(gamma >= kMinDictionaryGamma && gamma <= 1.0 - kMinDictionaryGamma))
    throw Error(ErrorCode::ConfigError, "gamma must lie in [1e-6, 1 - 1e-6]");
  const ConcentratedBasis cb = concentrated_basis(p);
  std::vector<DictionaryAtom> atoms;
  for (int i = 0; i < cb.rank(); ++i) {
    const Vector psi = cb.psi.col(i);
    const double s2 = cb.sigma_sq(i);
    DictionaryAtom atom;
    if (std::sqrt(s2) >= 1.0 - 1e-10) {
      atom.f = psi;
      atom.omega = 1.0;
    } else {
      const DictionaryCoefficients c = dictionary_coefficients(gamma, s2);
      atom.f = c.p * psi + c.q * p.apply_D(psi);
      atom.omega = c.omega;
    }
    atom.alpha = p.apply_D(atom.f).norm();
    atom.beta = p.apply_B(atom.f).norm();
    atoms.push_back(std::move(atom));
  }
  return atoms;
}

/// Angle between two real vectors, acos(<a,b> / (|a||b|)).
inline double vector_angle(const Vector& a, const Vector& b) {
  return safe_acos(a.dot(b) / (a.norm() * b.norm()));
}

}  // namespace gsp
