#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zakframe/duality.hpp"

namespace zakframe {

/// Gabor system on an abelian G: generators E_omega phi_t for omega in Lambda-perp,
/// ordered t-major, omega-minor, translated by Lambda.
struct GaborSystem {
  GeneratorFamily base;
  GeneratorFamily expanded;
  ZakDomainPtr domain;     // (G, Lambda)
  Annihilator ann;
};

inline GaborSystem gabor_expand(const GeneratorFamily& fam, const Subgroup& lambda) {
  if (!lambda.group->is_abelian()) throw Error(ErrorKind::abelian_required, "Gabor systems need an abelian group");
  if (fam.empty()) throw Error(ErrorKind::empty_family, "generator family is empty");
  GaborSystem g{fam, {}, make_zak_domain(lambda), annihilator(lambda.group, lambda)};
  for (const auto& f : fam)
    for (int w : g.ann.perp) g.expanded.push_back(modulate(f, g.ann.dual, w));
  return g;
}

/// max over t, omega of |[E_omega phi_t, E_omega psi_t] - [phi_t, psi_t]|,
/// divided by 1 + max |[phi_t, psi_t]|.
inline double gabor_bracket_invariance(const GaborSystem& a, const GaborSystem& b) {
  const std::size_t m = a.ann.perp.size();
  double worst = 0.0;
  double size = 0.0;
  for (std::size_t t = 0; t < a.base.size(); ++t) {
    const BracketFunction ref = bracket(a.base[t], b.base[t], a.domain);
    size = std::max(size, ref.values.cwiseAbs().maxCoeff());
    for (std::size_t w = 0; w < m; ++w) {
      const BracketFunction mod = bracket(a.expanded[t * m + w], b.expanded[t * m + w], a.domain);
      worst = std::max(worst, (mod.values - ref.values).cwiseAbs().maxCoeff());
    }
  }
  return worst / (1.0 + size);
}

namespace detail {

inline VerificationReport gabor_report(VerificationReport r, const GaborSystem& a, const GaborSystem& b) {
  const double inv = gabor_bracket_invariance(a, b);
  r.metrics["bracket_invariance"] = inv;
  r.flags["gabor_reduction"] = true;
  r.flags["bracket_invariance"] = inv <= 1e-12;
  return r;
}

}  // namespace detail

inline VerificationReport verify_gabor_dual(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& lambda,
                                            const Tolerances& tol = {}) {
  if (a.size() != b.size()) throw Error(ErrorKind::family_size_mismatch, "families differ in size");
  const GaborSystem ga = gabor_expand(a, lambda);
  const GaborSystem gb = gabor_expand(b, lambda);
  auto r = verify_subspace_dual(zak_family(ga.expanded, ga.domain), zak_family(gb.expanded, ga.domain), tol);
  r.criterion = "gabor-dual";
  return detail::gabor_report(std::move(r), ga, gb);
}

inline VerificationReport verify_gabor_orthogonal(const GeneratorFamily& a, const GeneratorFamily& b,
                                                  const Subgroup& lambda, const Tolerances& tol = {}) {
  if (a.size() != b.size()) throw Error(ErrorKind::family_size_mismatch, "families differ in size");
  const GaborSystem ga = gabor_expand(a, lambda);
  const GaborSystem gb = gabor_expand(b, lambda);
  auto r = verify_subspace_orthogonal(zak_family(ga.expanded, ga.domain), zak_family(gb.expanded, ga.domain), tol);
  r.criterion = "gabor-orthogonal";
  return detail::gabor_report(std::move(r), ga, gb);
}

/// A Gabor dual family: Z psi_t(beta, c) = Z phi_t(beta, c) / (|Lambda-perp| sum_t |Z phi_t(beta, c)|^2)
/// where the denominator is nonzero, else 0.
inline GeneratorFamily gabor_dual_family(const GeneratorFamily& fam, const Subgroup& lambda, const Tolerances& tol = {}) {
  if (fam.empty()) throw Error(ErrorKind::empty_family, "generator family is empty");
  const GaborSystem g = gabor_expand(fam, lambda);
  const auto z = zak_family(fam, g.domain);
  const double m = static_cast<double>(g.ann.perp.size());
  Eigen::MatrixXd energy = Eigen::MatrixXd::Zero(z.front().values.rows(), z.front().values.cols());
  for (const auto& zt : z) energy += zt.values.cwiseAbs2();
  const double cut = tol.support * energy.maxCoeff();
  GeneratorFamily out;
  for (const auto& zt : z) {
    ZakArray w{g.domain, Matrix::Zero(zt.values.rows(), zt.values.cols())};
    for (Eigen::Index a = 0; a < energy.rows(); ++a)
      for (Eigen::Index c = 0; c < energy.cols(); ++c)
        if (energy(a, c) > cut && energy(a, c) > 0) w.values(a, c) = zt.values(a, c) / (m * energy(a, c));
    out.push_back(zak_inverse(w));
  }
  return out;
}

/// The canonical fundamental domain of Lambda: the coset representatives.
inline std::vector<int> fundamental_domain(const Subgroup& lambda) { return coset_partition(lambda).section; }

inline Signal mask_to_domain(const Signal& f, const std::vector<int>& domain) {
  Signal out = zero_signal(f.group);
  for (int x : domain) out.values(x) = f.values(x);
  return out;
}

/// B_N = (phi_1 chi) * ... * (phi_N chi), chi the indicator of the fundamental
/// domain, computed by multiplying unnormalized DFTs.
inline Signal spline_generator(const GeneratorFamily& weights, const Subgroup& lambda) {
  if (weights.empty()) throw Error(ErrorKind::invalid_argument, "spline order must be at least 1");
  if (!lambda.group->is_abelian()) throw Error(ErrorKind::abelian_required, "splines need an abelian group");
  const CharacterTable dual = group_dual(lambda.group);
  const auto dom = fundamental_domain(lambda);
  Vector spectrum = Vector::Ones(static_cast<Eigen::Index>(dual.size()));
  for (const auto& w : weights) spectrum = spectrum.cwiseProduct(dft(mask_to_domain(w, dom), dual, false));
  return inverse_dft(spectrum, dual, false);
}

/// The product formula for [B_N, B'_N]_T on the fiber rows:
/// (|Lambda| / |G|) sum_xi prod_j (phi_j chi)^(omega_r xi) conj((psi_j chi)^(omega_r xi)),
/// with ^ the unnormalized DFT.
inline Vector spline_bracket_formula(const GeneratorFamily& phis, const GeneratorFamily& psis, const FiberDomain& d) {
  if (phis.size() != psis.size()) throw Error(ErrorKind::family_size_mismatch, "spline orders differ");
  const auto dom = fundamental_domain(d.lambda);
  const CharacterTable& dual = d.ann.dual;
  Vector prod = Vector::Ones(static_cast<Eigen::Index>(dual.size()));
  for (std::size_t j = 0; j < phis.size(); ++j)
    prod = prod.cwiseProduct(dft(mask_to_domain(phis[j], dom), dual, false)
                                 .cwiseProduct(dft(mask_to_domain(psis[j], dom), dual, false).conjugate()));
  const double weight = static_cast<double>(d.lambda.size()) / static_cast<double>(d.group->order());
  Vector out(d.rows());
  for (Eigen::Index r = 0; r < d.rows(); ++r) {
    Complex acc = 0.0;
    for (int xi : d.ann.perp) acc += prod(dual.product(d.ann.theta[r], xi));
    out(r) = weight * acc;
  }
  return out;
}

}  // namespace zakframe
