#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zakframe/gramian.hpp"

namespace zakframe {

struct Offender {
  Eigen::Index alpha = 0;
  double residual = 0.0;
};

struct VerificationReport {
  std::string criterion;
  bool holds = false;
  double max_residual = 0.0;
  std::vector<double> fiber_residuals;
  std::vector<Offender> offenders;  // at most 5, residual descending
  Tolerances tolerances;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> flags;
  std::optional<FrameBounds> frame_bounds;
};

namespace detail {

inline VerificationReport finish_report(std::string criterion, std::vector<double> residuals, const Tolerances& tol) {
  VerificationReport r;
  r.criterion = std::move(criterion);
  r.tolerances = tol;
  r.max_residual = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  std::vector<Offender> all;
  for (std::size_t a = 0; a < residuals.size(); ++a)
    if (residuals[a] > 0) all.push_back({static_cast<Eigen::Index>(a), residuals[a]});
  std::stable_sort(all.begin(), all.end(), [](const Offender& x, const Offender& y) { return x.residual > y.residual; });
  if (all.size() > 5) all.resize(5);
  r.offenders = std::move(all);
  r.fiber_residuals = std::move(residuals);
  r.holds = r.max_residual <= tol.dual;
  return r;
}

}  // namespace detail

/// Fiber criterion for A' to be an S(A)-subspace dual of A:
/// Z phi_t'(alpha) = J_A(alpha) b_t'(alpha) with b_t'(alpha)_t = [phi_t', psi_t](alpha).
/// Per fiber the residual is max_t' |Z phi_t' - J_A b_t'| / (1 + |Z phi_t'|).
inline VerificationReport verify_subspace_dual(const ZakFamily& a, const ZakFamily& b, const Tolerances& tol = {}) {
  require_matching(a, b);
  std::vector<double> res;
  for (Eigen::Index al = 0; al < fiber_count(a); ++al) {
    const Matrix ja = pre_gramian(a, al);
    const Matrix jb = pre_gramian(b, al);
    const Matrix m = ja * jb.adjoint();
    double worst = 0.0;
    for (Eigen::Index t = 0; t < ja.cols(); ++t) {
      const Vector v = ja.col(t);
      worst = std::max(worst, (v - m * v).norm() / (1.0 + v.norm()));
    }
    res.push_back(worst);
  }
  auto r = detail::finish_report("subspace-dual", std::move(res), tol);
  r.frame_bounds = frame_bounds(a, tol);
  return r;
}

/// J_A(alpha) J_A'(alpha)* restricted to the range of J_A(alpha), relative to
/// (max_alpha |J_A|)(max_alpha |J_A'|).
inline VerificationReport verify_subspace_orthogonal(const ZakFamily& a, const ZakFamily& b,
                                                     const Tolerances& tol = {}) {
  require_matching(a, b);
  const double sa = family_scale(a);
  const double sb = family_scale(b);
  const double scale = sa * sb;
  std::vector<double> res;
  for (Eigen::Index al = 0; al < fiber_count(a); ++al) {
    if (scale == 0) {
      res.push_back(0.0);
      continue;
    }
    const Matrix q = range_function(a, al, tol.rank, sa).basis;
    res.push_back(q.cols() ? linalg::operator_norm(mixed_dual_gramian(a, b, al) * q) / scale : 0.0);
  }
  auto r = detail::finish_report("subspace-orthogonal", std::move(res), tol);
  r.frame_bounds = frame_bounds(a, tol);
  return r;
}

/// Full-space duality: J_A(alpha) J_A'(alpha)* = I at every alpha.
inline VerificationReport verify_dual_frames(const ZakFamily& a, const ZakFamily& b, const Tolerances& tol = {}) {
  require_matching(a, b);
  std::vector<double> res;
  for (Eigen::Index al = 0; al < fiber_count(a); ++al) {
    const Matrix m = mixed_dual_gramian(a, b, al);
    res.push_back(linalg::operator_norm(m - Matrix::Identity(m.rows(), m.cols())));
  }
  return detail::finish_report("dual-frames", std::move(res), tol);
}

/// Full-space orthogonality: J_A(alpha) J_A'(alpha)* = 0 at every alpha.
inline VerificationReport verify_orthogonal_pair_full(const ZakFamily& a, const ZakFamily& b,
                                                      const Tolerances& tol = {}) {
  require_matching(a, b);
  const double scale = family_scale(a) * family_scale(b);
  std::vector<double> res;
  for (Eigen::Index al = 0; al < fiber_count(a); ++al)
    res.push_back(scale > 0 ? linalg::operator_norm(mixed_dual_gramian(a, b, al)) / scale : 0.0);
  return detail::finish_report("orthogonal-full", std::move(res), tol);
}

/// Single generator: [phi, psi] = 1 on Omega_phi.
inline VerificationReport verify_dual_single(const ZakArray& phi, const ZakArray& psi, const Tolerances& tol = {}) {
  const BracketFunction b = bracket(phi, psi);
  const SupportSet omega = support_set(phi, tol.support);
  std::vector<double> res(static_cast<std::size_t>(b.size()), 0.0);
  for (Eigen::Index a = 0; a < b.size(); ++a)
    if (omega[a]) res[a] = std::abs(b(a) - 1.0);
  auto r = detail::finish_report("dual-single", std::move(res), tol);
  r.metrics["support_size"] = static_cast<double>(omega.count());
  return r;
}

/// Single generator: [phi, psi] = 0 on Omega_phi, relative to max|Z phi| max|Z psi|.
/// Also reports whether the bracket vanishes on all of Gamma-hat.
inline VerificationReport verify_orthogonal_single(const ZakArray& phi, const ZakArray& psi,
                                                   const Tolerances& tol = {}) {
  const BracketFunction b = bracket(phi, psi);
  const SupportSet omega = support_set(phi, tol.support);
  const double scale = std::sqrt(bracket(phi, phi).values.real().maxCoeff() *
                                 bracket(psi, psi).values.real().maxCoeff());
  std::vector<double> res(static_cast<std::size_t>(b.size()), 0.0);
  double global = 0.0;
  for (Eigen::Index a = 0; a < b.size(); ++a) {
    const double v = scale > 0 ? std::abs(b(a)) / scale : 0.0;
    global = std::max(global, v);
    if (omega[a]) res[a] = v;
  }
  auto r = detail::finish_report("orthogonal-single", std::move(res), tol);
  r.metrics["global_residual"] = global;
  r.flags["vanishes_globally"] = global <= tol.dual;
  return r;
}

struct DualConstruction {
  Signal dual;
  bool unique = false;
};

/// Z psi~ = Z psi / conj([phi, psi]) on Omega_phi and 0 elsewhere, so that
/// [phi, psi~] = 1 on Omega_phi.
inline DualConstruction construct_dual(const Signal& phi, const Signal& psi, const ZakDomainPtr& domain,
                                       const Tolerances& tol = {}) {
  const ZakArray zphi = zak_forward(phi, domain);
  const ZakArray zpsi = zak_forward(psi, domain);
  const BracketFunction b = bracket(zphi, zpsi);
  const SupportSet omega_phi = support_set(zphi, tol.support);
  const SupportSet omega_psi = support_set(zpsi, tol.support);
  ZakArray out{domain, Matrix::Zero(zpsi.values.rows(), zpsi.values.cols())};
  for (Eigen::Index a = 0; a < b.size(); ++a) {
    if (!omega_phi[a]) continue;
    if (std::abs(b(a)) < tol.lower)
      throw Error(ErrorKind::not_bounded_below, "|[phi,psi]| = " + std::to_string(std::abs(b(a))) +
                                                    " below the lower bound at alpha " + std::to_string(a));
    out.values.row(a) = zpsi.values.row(a) / std::conj(b(a));
  }
  return {zak_inverse(out), omega_phi == omega_psi};
}

/// Z psi = Z phi / [phi, phi]; requires [phi, phi] >= lower everywhere.
inline Signal construct_biorthogonal(const Signal& phi, const ZakDomainPtr& domain, const Tolerances& tol = {}) {
  const ZakArray zphi = zak_forward(phi, domain);
  const BracketFunction b = bracket(zphi, zphi);
  ZakArray out{domain, zphi.values};
  for (Eigen::Index a = 0; a < b.size(); ++a) {
    const double v = b(a).real();
    if (v < tol.lower)
      throw Error(ErrorKind::not_bounded_below, "[phi,phi] = " + std::to_string(v) +
                                                    " below the lower bound at alpha " + std::to_string(a));
    out.values.row(a) /= v;
  }
  return zak_inverse(out);
}

/// Both routes: the bracket [phi, psi] = 1 everywhere, and the direct table
/// <L_gamma phi, L_gamma' psi> = delta.
inline VerificationReport verify_biorthogonal(const Signal& phi, const Signal& psi, const ZakDomainPtr& domain,
                                              const Tolerances& tol = {}) {
  const ZakArray zphi = zak_forward(phi, domain);
  const ZakArray zpsi = zak_forward(psi, domain);
  const BracketFunction b = bracket(zphi, zpsi);
  std::vector<double> res(static_cast<std::size_t>(b.size()));
  for (Eigen::Index a = 0; a < b.size(); ++a) res[a] = std::abs(b(a) - 1.0);

  const Subgroup& sub = domain->sub;
  double table = 0.0;
  std::vector<Signal> tphi, tpsi;
  for (int g : sub.elements) {
    tphi.push_back(translate(phi, g));
    tpsi.push_back(translate(psi, g));
  }
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = 0; j < sub.size(); ++j)
      table = std::max(table, std::abs(inner(tphi[i], tpsi[j]) - (i == j ? 1.0 : 0.0)));

  auto r = detail::finish_report("biorthogonal", std::move(res), tol);
  r.metrics["bracket_residual"] = r.max_residual;
  r.metrics["table_residual"] = table;
  r.holds = r.max_residual <= tol.dual && table <= tol.dual;
  const auto fb = frame_bounds(ZakFamily{zphi}, tol);
  r.flags["linearly_independent"] = fb.is_riesz;
  r.flags["bracket_route"] = r.max_residual <= tol.dual;
  r.flags["table_route"] = table <= tol.dual;
  r.frame_bounds = fb;
  return r;
}

struct DecompositionCoefficients {
  Matrix coefficients;                // rows alpha, column t: m_t(alpha)
  std::vector<double> fiber_residuals;  // |J_A m - Z f| per alpha
  double residual = 0.0;              // signal-domain distance from f to its fit
  bool member = false;
};

/// Per-fiber least squares J_A(alpha) m(alpha) ~ Z f(alpha). A single generator
/// uses m = [f, phi] / [phi, phi] on Omega_phi and 0 elsewhere.
inline DecompositionCoefficients decompose(const ZakArray& zf, const ZakFamily& fam, const Tolerances& tol = {}) {
  require_family(fam);
  require_same_domain(zf, fam.front());
  const Eigen::Index n = static_cast<Eigen::Index>(fam.size());
  DecompositionCoefficients d;
  d.coefficients = Matrix::Zero(fiber_count(fam), n);
  const double scale = family_scale(fam);
  std::optional<SupportSet> omega;
  std::optional<BracketFunction> fphi, phiphi;
  if (n == 1) {
    omega = support_set(fam.front(), tol.support);
    fphi = bracket(zf, fam.front());
    phiphi = bracket(fam.front(), fam.front());
  }
  double total = 0.0;
  for (Eigen::Index a = 0; a < fiber_count(fam); ++a) {
    const Matrix j = pre_gramian(fam, a);
    const Vector z = zf.fiber(a);
    Vector m;
    if (n == 1) {
      m = Vector::Zero(1);
      if ((*omega)[a]) m(0) = (*fphi)(a) / (*phiphi)(a).real();
    } else {
      m = scale > 0 ? Vector(linalg::pseudo_inverse(j, tol.rank, scale) * z) : Vector(Vector::Zero(n));
    }
    d.coefficients.row(a) = m.transpose();
    const double r = (j * m - z).norm();
    d.fiber_residuals.push_back(r);
    total += r * r;
  }
  d.residual = std::sqrt(total / zf.domain->gamma_order());
  const double fnorm = std::sqrt(zf.values.squaredNorm() / zf.domain->gamma_order());
  d.member = d.residual <= tol.dual * std::max(1.0, fnorm);
  return d;
}

/// h must be constant on every right coset Gamma x.
inline void require_periodic(const Vector& h, const CosetTable& cosets) {
  for (const auto& c : cosets.cosets)
    for (int x : c)
      if (h(x) != h(c.front()))
        throw Error(ErrorKind::not_periodic, "h(" + std::to_string(c.front()) + ") != h(" + std::to_string(x) + ")");
}

inline GeneratorFamily periodic_multiply(const Vector& h, const GeneratorFamily& fam, const ZakDomain& domain) {
  require_periodic(h, domain.cosets);
  GeneratorFamily out;
  out.reserve(fam.size());
  for (const auto& f : fam) out.push_back(multiply(f, h));
  return out;
}

struct SupplementaryChecks {
  bool product_vanishes = false;      // [phi,phi][psi,psi] = 0 everywhere
  bool zak_supports_disjoint = false; // supp Z phi and supp Z psi meet in no alpha
  bool support_matches_omega = false; // alpha-support of Z phi equals Omega_phi
  bool orthogonal = false;            // verify_orthogonal_single(phi, psi)
  bool implication_holds = false;     // (product_vanishes or disjoint) implies orthogonal
};

inline SupplementaryChecks supplementary_checks(const ZakArray& phi, const ZakArray& psi, const Tolerances& tol = {}) {
  SupplementaryChecks s;
  const BracketFunction pp = bracket(phi, phi);
  const BracketFunction qq = bracket(psi, psi);
  const double peak_p = pp.values.real().maxCoeff();
  const double peak_q = qq.values.real().maxCoeff();
  double prod = 0.0;
  for (Eigen::Index a = 0; a < pp.size(); ++a) prod = std::max(prod, pp(a).real() * qq(a).real());
  s.product_vanishes = prod <= tol.support * peak_p * peak_q;

  const SupportSet omega_phi = support_set(pp, tol.support);
  const double zp = phi.values.cwiseAbs().maxCoeff();
  const double zq = psi.values.cwiseAbs().maxCoeff();
  std::vector<bool> zsupp_phi(static_cast<std::size_t>(pp.size())), zsupp_psi(zsupp_phi.size());
  for (Eigen::Index a = 0; a < pp.size(); ++a)
    for (Eigen::Index c = 0; c < phi.values.cols(); ++c) {
      if (std::abs(phi.values(a, c)) > std::sqrt(tol.support) * zp) zsupp_phi[a] = true;
      if (std::abs(psi.values(a, c)) > std::sqrt(tol.support) * zq) zsupp_psi[a] = true;
    }
  s.zak_supports_disjoint = true;
  for (std::size_t a = 0; a < zsupp_phi.size(); ++a)
    if (zsupp_phi[a] && zsupp_psi[a]) s.zak_supports_disjoint = false;
  s.support_matches_omega = zsupp_phi == omega_phi.mask;
  s.orthogonal = verify_orthogonal_single(phi, psi, tol).holds;
  s.implication_holds = !(s.product_vanishes || s.zak_supports_disjoint) || s.orthogonal;
  return s;
}

}  // namespace zakframe
