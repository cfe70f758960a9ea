#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "zakframe/bracket.hpp"
#include "zakframe/tolerances.hpp"

namespace zakframe {

using ZakFamily = std::vector<ZakArray>;

inline void require_family(const ZakFamily& fam) {
  if (fam.empty()) throw Error(ErrorKind::empty_family, "generator family is empty");
  for (const auto& z : fam) require_same_domain(fam.front(), z);
}

inline void require_matching(const ZakFamily& a, const ZakFamily& b) {
  require_family(a);
  require_family(b);
  if (a.size() != b.size())
    throw Error(ErrorKind::family_size_mismatch, "families have " + std::to_string(a.size()) + " and " +
                                                     std::to_string(b.size()) + " generators");
  require_same_domain(a.front(), b.front());
}

/// J_A(alpha): column t is the alpha-row of Z phi_t.
inline Matrix pre_gramian(const ZakFamily& fam, Eigen::Index alpha) {
  require_family(fam);
  Matrix j(fam.front().values.cols(), static_cast<Eigen::Index>(fam.size()));
  for (std::size_t t = 0; t < fam.size(); ++t) j.col(static_cast<Eigen::Index>(t)) = fam[t].fiber(alpha);
  return j;
}

/// G_A(alpha) = J* J, so G[t'][t] = [phi_t, phi_t'](alpha).
inline Matrix gramian(const ZakFamily& fam, Eigen::Index alpha) {
  const Matrix j = pre_gramian(fam, alpha);
  return j.adjoint() * j;
}

/// G~_{A,A'}(alpha) = J_A J_{A'}*.
inline Matrix mixed_dual_gramian(const ZakFamily& a, const ZakFamily& b, Eigen::Index alpha) {
  require_matching(a, b);
  return pre_gramian(a, alpha) * pre_gramian(b, alpha).adjoint();
}

inline Eigen::Index fiber_count(const ZakFamily& fam) { return fam.front().values.rows(); }

/// max over alpha of the largest singular value of J_A(alpha).
inline double family_scale(const ZakFamily& fam) {
  double s = 0.0;
  for (Eigen::Index a = 0; a < fiber_count(fam); ++a) s = std::max(s, linalg::operator_norm(pre_gramian(fam, a)));
  return s;
}

struct SupportSet {
  std::vector<bool> mask;
  double threshold = 0.0;

  std::size_t count() const { return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)); }
  bool operator[](std::size_t i) const { return mask[i]; }
  friend bool operator==(const SupportSet& a, const SupportSet& b) { return a.mask == b.mask; }
};

/// Omega: alpha with [phi,phi](alpha) > eps * max [phi,phi].
inline SupportSet support_set(const BracketFunction& self, double eps) {
  if (!(eps > 0 && eps < 1)) throw Error(ErrorKind::invalid_argument, "support tolerance must lie in (0, 1)");
  SupportSet s;
  double peak = 0.0;
  for (Eigen::Index a = 0; a < self.size(); ++a) peak = std::max(peak, self(a).real());
  s.threshold = eps * peak;
  s.mask.resize(static_cast<std::size_t>(self.size()));
  for (Eigen::Index a = 0; a < self.size(); ++a) s.mask[a] = peak > 0 && self(a).real() > s.threshold;
  return s;
}

inline SupportSet support_set(const ZakArray& z, double eps) { return support_set(bracket(z, z), eps); }

struct FrameBounds {
  double bessel_bound = 0.0;  // B
  double lower_bound = 0.0;   // A, on the span
  bool is_bessel = true;
  bool is_frame_for_span = true;
  bool is_riesz = false;
  std::vector<Eigen::Index> ranks;  // per alpha
};

/// Fiberwise frame bounds from the eigenvalues of G_A(alpha).
///
/// Singular values of J_A(alpha) at or below rank * (max over alpha of sigma_max)
/// count as zero. is_riesz needs rank |N| at every alpha.
inline FrameBounds frame_bounds(const ZakFamily& fam, const Tolerances& tol = {}) {
  require_family(fam);
  FrameBounds fb;
  const double scale = family_scale(fam);
  const Eigen::Index n = static_cast<Eigen::Index>(fam.size());
  double smallest = std::numeric_limits<double>::infinity();
  bool full_rank = scale > 0;
  for (Eigen::Index a = 0; a < fiber_count(fam); ++a) {
    const Eigen::VectorXd sv = linalg::singular_values(pre_gramian(fam, a));
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.rank * scale) {
        ++r;
        smallest = std::min(smallest, sv(i) * sv(i));
      }
    fb.ranks.push_back(r);
    if (r != n) full_rank = false;
  }
  fb.bessel_bound = scale * scale;
  fb.lower_bound = std::isfinite(smallest) ? smallest : 0.0;
  fb.is_riesz = full_rank;
  return fb;
}

/// Orthonormal basis of the column space of J_A(alpha). With scale <= 0 the
/// rank cut is relative to this fiber's own sigma_max.
inline linalg::RangeBasis range_function(const ZakFamily& fam, Eigen::Index alpha, double rank_tol,
                                         double scale = 0.0) {
  if (!(rank_tol > 0)) throw Error(ErrorKind::invalid_argument, "rank tolerance must be positive");
  return linalg::range_basis(pre_gramian(fam, alpha), rank_tol, scale);
}

}  // namespace zakframe
