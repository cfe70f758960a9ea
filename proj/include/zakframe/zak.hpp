#pragma once

#include <memory>
#include <vector>

#include "zakframe/characters.hpp"
#include "zakframe/signal.hpp"

#define ZAKFRAME_HAS_ZAK 1

namespace zakframe {

/// Everything the Zak transform for the pair (G, Gamma) needs: cosets with a
/// section and the characters of Gamma.
struct ZakDomain {
  GroupPtr group;
  Subgroup sub;
  CosetTable cosets;
  CharacterTable chars;

  Eigen::Index rows() const { return static_cast<Eigen::Index>(chars.size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(cosets.count()); }
  double gamma_order() const { return static_cast<double>(sub.size()); }
};

using ZakDomainPtr = std::shared_ptr<const ZakDomain>;

inline ZakDomainPtr make_zak_domain(const Subgroup& sub) {
  return std::make_shared<const ZakDomain>(ZakDomain{sub.group, sub, coset_partition(sub), dual_group(sub)});
}

inline ZakDomainPtr make_zak_domain(const Subgroup& sub, const std::vector<int>& section) {
  return std::make_shared<const ZakDomain>(ZakDomain{sub.group, sub, coset_partition(sub, section), dual_group(sub)});
}

/// Rows are characters of Gamma, columns are right cosets.
struct ZakArray {
  ZakDomainPtr domain;
  Matrix values;

  Vector fiber(Eigen::Index alpha) const { return values.row(alpha).transpose(); }
};

inline void require_domain(const Signal& f, const ZakDomain& d) {
  if (!same_group(f.group, d.group))
    throw Error(ErrorKind::structure_mismatch, "signal and Zak domain use different groups");
}

/// Z(alpha, c) = sum_gamma f(gamma Xi_c) conj(alpha(gamma)).
inline ZakArray zak_forward(const Signal& f, const ZakDomainPtr& domain) {
  const ZakDomain& d = *domain;
  require_domain(f, d);
  const Eigen::Index ng = static_cast<Eigen::Index>(d.sub.size());
  Matrix samples(ng, d.cols());
  for (Eigen::Index c = 0; c < d.cols(); ++c)
    for (Eigen::Index k = 0; k < ng; ++k)
      samples(k, c) = f.values(d.cosets.element(d.sub, static_cast<int>(k), static_cast<int>(c)));
  return ZakArray{domain, d.chars.matrix().conjugate() * samples};
}

/// f(gamma Xi_c) = (1/|Gamma|) sum_alpha Z(alpha, c) alpha(gamma).
inline Signal zak_inverse(const ZakArray& z) {
  const ZakDomain& d = *z.domain;
  if (z.values.rows() != d.rows() || z.values.cols() != d.cols())
    throw Error(ErrorKind::shape_mismatch, "Zak array shape does not match its domain");
  const Matrix samples = d.chars.matrix().transpose() * z.values / d.gamma_order();
  Signal f = zero_signal(d.group);
  for (Eigen::Index c = 0; c < d.cols(); ++c)
    for (Eigen::Index k = 0; k < samples.rows(); ++k)
      f.values(d.cosets.element(d.sub, static_cast<int>(k), static_cast<int>(c))) = samples(k, c);
  return f;
}

inline std::vector<ZakArray> zak_family(const GeneratorFamily& family, const ZakDomainPtr& domain) {
  std::vector<ZakArray> out;
  out.reserve(family.size());
  for (const auto& f : family) out.push_back(zak_forward(f, domain));
  return out;
}

/// Data for the fiberization map on an abelian group G with subgroup Lambda.
struct FiberDomain {
  GroupPtr group;
  Subgroup lambda;
  Annihilator ann;
  CharacterTable lambda_hat;
  std::vector<int> restriction;  // fiber row r -> index of omega_r|Lambda in lambda_hat

  Eigen::Index rows() const { return static_cast<Eigen::Index>(ann.theta.size()); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(ann.perp.size()); }
};

using FiberDomainPtr = std::shared_ptr<const FiberDomain>;

inline FiberDomainPtr make_fiber_domain(const Subgroup& lambda) {
  FiberDomain d{lambda.group, lambda, annihilator(lambda.group, lambda), dual_group(lambda), {}};
  d.restriction = restriction_map(d.ann, d.lambda_hat);
  return std::make_shared<const FiberDomain>(std::move(d));
}

/// Rows are the cosets omega Lambda-perp (by Theta), columns xi in Lambda-perp.
struct FiberArray {
  FiberDomainPtr domain;
  Matrix values;
};

/// T f(omega_r Lambda-perp)(xi) = fhat(omega_r xi), fhat the unitary DFT on G.
inline FiberArray fiberize(const Signal& f, const FiberDomainPtr& domain) {
  const FiberDomain& d = *domain;
  if (!same_group(f.group, d.group))
    throw Error(ErrorKind::structure_mismatch, "signal and fiber domain use different groups");
  const Vector fhat = dft(f, d.ann.dual);
  Matrix m(d.rows(), d.cols());
  for (Eigen::Index r = 0; r < d.rows(); ++r)
    for (Eigen::Index s = 0; s < d.cols(); ++s) m(r, s) = fhat(d.ann.dual.product(d.ann.theta[r], d.ann.perp[s]));
  return FiberArray{domain, m};
}

inline Signal inverse_fiberize(const FiberArray& t) {
  const FiberDomain& d = *t.domain;
  if (t.values.rows() != d.rows() || t.values.cols() != d.cols())
    throw Error(ErrorKind::shape_mismatch, "fiber array shape does not match its domain");
  Vector fhat(static_cast<Eigen::Index>(d.ann.dual.size()));
  for (Eigen::Index r = 0; r < d.rows(); ++r)
    for (Eigen::Index s = 0; s < d.cols(); ++s)
      fhat(d.ann.dual.product(d.ann.theta[r], d.ann.perp[s])) = t.values(r, s);
  return inverse_dft(fhat, d.ann.dual);
}

}  // namespace zakframe
