#pragma once

#include <string>
#include <vector>

#include "zakframe/duality.hpp"
#include "zakframe/oracle.hpp"

namespace zakframe {

/// N component families on G packed into one family on G x Z_N. The element
/// (x, n) has index x * N + n and Gamma acts through Gamma x {0}.
struct SuperFamily {
  int components = 1;
  std::vector<GeneratorFamily> parts;  // parts[n][t]
  GroupPtr base;
  GroupPtr packed_group;
  Subgroup packed_sub;                 // Gamma x {0}
  GeneratorFamily packed;              // packed[t]
};

inline GroupPtr super_group(const GroupPtr& g, int n) { return direct_product_cyclic(g, n); }

inline Subgroup super_subgroup(const Subgroup& sub, const GroupPtr& packed_group, int n) {
  if (!sub.strides.empty() && packed_group->kind() == Group::Kind::product) {
    auto strides = sub.strides;
    strides.push_back(n);
    return make_subgroup_strides(packed_group, std::move(strides));
  }
  std::vector<int> gens;
  for (int g : sub.elements) gens.push_back(g * n);
  return make_subgroup_generators(packed_group, gens);
}

inline Signal super_pack_signal(const std::vector<Signal>& parts, const GroupPtr& packed_group) {
  const int n = static_cast<int>(parts.size());
  Signal out = zero_signal(packed_group);
  for (int k = 0; k < n; ++k)
    for (Eigen::Index x = 0; x < parts[k].values.size(); ++x) out.values(x * n + k) = parts[k].values(x);
  return out;
}

inline Signal super_component(const Signal& packed, const GroupPtr& base, int n, int k) {
  Signal out = zero_signal(base);
  for (Eigen::Index x = 0; x < out.values.size(); ++x) out.values(x) = packed.values(x * n + k);
  return out;
}

inline SuperFamily super_pack(const std::vector<GeneratorFamily>& parts, const Subgroup& sub) {
  if (parts.empty()) throw Error(ErrorKind::invalid_argument, "need at least one component");
  const std::size_t size = parts.front().size();
  if (size == 0) throw Error(ErrorKind::empty_family, "component families are empty");
  for (const auto& p : parts) {
    if (p.size() != size) throw Error(ErrorKind::structure_mismatch, "components have different index sets");
    for (const auto& f : p)
      if (!same_group(f.group, sub.group)) throw Error(ErrorKind::structure_mismatch, "component on another group");
  }
  SuperFamily s;
  s.components = static_cast<int>(parts.size());
  s.parts = parts;
  s.base = sub.group;
  s.packed_group = super_group(sub.group, s.components);
  s.packed_sub = super_subgroup(sub, s.packed_group, s.components);
  for (std::size_t t = 0; t < size; ++t) {
    std::vector<Signal> slice;
    for (const auto& p : parts) slice.push_back(p[t]);
    s.packed.push_back(super_pack_signal(slice, s.packed_group));
  }
  return s;
}

/// L_gamma acting on every component at once.
inline Signal super_translate(const Signal& packed, int gamma, int n) { return translate(packed, gamma * n); }

/// Diagonal projector onto component k of L2(G x Z_N).
inline Matrix super_projector(const GroupPtr& base, int n, int k) {
  const Eigen::Index size = static_cast<Eigen::Index>(base->order()) * n;
  Matrix p = Matrix::Zero(size, size);
  for (Eigen::Index x = 0; x < static_cast<Eigen::Index>(base->order()); ++x) p(x * n + k, x * n + k) = 1.0;
  return p;
}

/// Super dual frames, two ways. Componentwise: J_n J'_n* = I for every n and
/// J_{n1} J'_{n2}* = 0 for n1 != n2. Packed: the oracle dual-frame check on G x Z_N.
inline VerificationReport verify_super_dual(const SuperFamily& f, const SuperFamily& g, const Subgroup& sub,
                                            const Tolerances& tol = {}) {
  if (f.components != g.components || f.packed.size() != g.packed.size())
    throw Error(ErrorKind::structure_mismatch, "super families differ in shape");
  const auto domain = make_zak_domain(sub);
  std::vector<ZakFamily> zf, zg;
  for (int n = 0; n < f.components; ++n) {
    zf.push_back(zak_family(f.parts[n], domain));
    zg.push_back(zak_family(g.parts[n], domain));
  }
  std::vector<double> res(static_cast<std::size_t>(domain->rows()), 0.0);
  double component = 0.0;
  double cross = 0.0;
  for (Eigen::Index a = 0; a < domain->rows(); ++a)
    for (int n1 = 0; n1 < f.components; ++n1)
      for (int n2 = 0; n2 < f.components; ++n2) {
        const Matrix m = mixed_dual_gramian(zf[n1], zg[n2], a);
        const double r = n1 == n2 ? linalg::operator_norm(m - Matrix::Identity(m.rows(), m.cols()))
                                  : linalg::operator_norm(m);
        res[a] = std::max(res[a], r);
        (n1 == n2 ? component : cross) = std::max(n1 == n2 ? component : cross, r);
      }
  auto r = detail::finish_report("super-dual", std::move(res), tol);
  const oracle::Result packed = oracle::check_dual_frame(f.packed, g.packed, f.packed_sub, tol);
  r.metrics["component_residual"] = component;
  r.metrics["cross_residual"] = cross;
  r.metrics["packed_oracle_residual"] = packed.residual;
  r.flags["components_dual"] = component <= tol.dual;
  r.flags["cross_orthogonal"] = cross <= tol.dual;
  r.flags["fiber_route"] = r.holds;
  r.flags["packed_route"] = packed.holds;
  r.flags["routes_agree"] = r.holds == packed.holds;
  r.holds = r.holds && packed.holds;
  return r;
}

}  // namespace zakframe
