#pragma once

#include <vector>

#include "zakframe/zak.hpp"

namespace zakframe {

/// [psi, phi] as a function on Gamma-hat (zak variant) or on the rows of a
/// fiber array, i.e. G-hat / Lambda-perp (fiberization variant).
struct BracketFunction {
  enum class Variant { zak, fiberization };
  Variant variant = Variant::zak;
  Vector values;

  Eigen::Index size() const { return values.size(); }
  Complex operator()(Eigen::Index i) const { return values(i); }
};

inline void require_same_domain(const ZakArray& a, const ZakArray& b) {
  if (a.domain != b.domain && !(same_group(a.domain->group, b.domain->group) &&
                                a.domain->sub == b.domain->sub &&
                                a.domain->cosets.section == b.domain->cosets.section))
    throw Error(ErrorKind::structure_mismatch, "Zak arrays come from different domains");
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols())
    throw Error(ErrorKind::shape_mismatch, "Zak arrays have different shapes");
}

/// [psi, phi](alpha) = sum_c Z psi(alpha, c) conj(Z phi(alpha, c)).
inline BracketFunction bracket(const ZakArray& zpsi, const ZakArray& zphi) {
  require_same_domain(zpsi, zphi);
  return {BracketFunction::Variant::zak, zpsi.values.cwiseProduct(zphi.values.conjugate()).rowwise().sum()};
}

inline BracketFunction bracket(const Signal& psi, const Signal& phi, const ZakDomainPtr& domain) {
  return bracket(zak_forward(psi, domain), zak_forward(phi, domain));
}

/// [psi, phi]_T(r) = |Lambda| sum_xi T psi(r, xi) conj(T phi(r, xi)).
///
/// The |Lambda| weight makes [psi, phi]_T(r) coincide with the Zak bracket
/// [psi, phi](omega_r restricted to Lambda) for the pair (G, Lambda).
inline BracketFunction bracket_fiberization(const FiberArray& tpsi, const FiberArray& tphi) {
  if (tpsi.values.rows() != tphi.values.rows() || tpsi.values.cols() != tphi.values.cols())
    throw Error(ErrorKind::shape_mismatch, "fiber arrays have different shapes");
  if (!same_group(tpsi.domain->group, tphi.domain->group) || !(tpsi.domain->lambda == tphi.domain->lambda))
    throw Error(ErrorKind::structure_mismatch, "fiber arrays come from different domains");
  const double weight = static_cast<double>(tpsi.domain->lambda.size());
  return {BracketFunction::Variant::fiberization,
          weight * tpsi.values.cwiseProduct(tphi.values.conjugate()).rowwise().sum()};
}

/// Reorders a fiberization bracket onto Lambda-hat via omega_r -> omega_r restricted to Lambda.
inline Vector fiber_bracket_on_dual(const BracketFunction& b, const FiberDomain& d) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(d.lambda_hat.size()));
  for (Eigen::Index r = 0; r < b.size(); ++r) out(d.restriction[r]) = b(r);
  return out;
}

/// (M_phi psi)(gamma) = <psi, L_gamma phi>, in subgroup element order.
inline Vector matrix_element(const Signal& psi, const Signal& phi, const Subgroup& sub) {
  require_same_group(psi, phi);
  if (!same_group(psi.group, sub.group)) throw Error(ErrorKind::structure_mismatch, "subgroup of another group");
  Vector out(static_cast<Eigen::Index>(sub.size()));
  for (std::size_t k = 0; k < sub.size(); ++k) out(static_cast<Eigen::Index>(k)) = inner(psi, translate(phi, sub.elements[k]));
  return out;
}

/// sum_gamma m(gamma) conj(alpha(gamma)) for every character alpha.
inline Vector dtft(const Vector& m, const CharacterTable& chars) {
  if (static_cast<std::size_t>(m.size()) != chars.elements.size())
    throw Error(ErrorKind::shape_mismatch, "sequence length does not match the subgroup");
  return chars.matrix().conjugate() * m;
}

}  // namespace zakframe
