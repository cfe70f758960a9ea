#pragma once

// Dense signal-domain ground truth. Only group arithmetic, signals and dense
// linear algebra are used here.

#include <string>
#include <vector>

#include "zakframe/linalg.hpp"
#include "zakframe/signal.hpp"
#include "zakframe/subgroup.hpp"
#include "zakframe/tolerances.hpp"

namespace zakframe::oracle {

struct Result {
  bool holds = false;
  double residual = 0.0;
};

/// |G| x (|Gamma| |N|); column t * |Gamma| + k is L_{gamma_k} phi_t.
inline Matrix synthesis_matrix(const GeneratorFamily& fam, const Subgroup& sub, const Limits& limits = default_limits()) {
  if (fam.empty()) throw Error(ErrorKind::empty_family, "generator family is empty");
  const std::size_t n = sub.group->order();
  if (n * sub.size() * fam.size() > limits.max_oracle_entries)
    throw Error(ErrorKind::size_limit, "synthesis matrix exceeds " + std::to_string(limits.max_oracle_entries) + " entries");
  const Eigen::Index ng = static_cast<Eigen::Index>(sub.size());
  Matrix syn(static_cast<Eigen::Index>(n), ng * static_cast<Eigen::Index>(fam.size()));
  for (std::size_t t = 0; t < fam.size(); ++t) {
    if (!same_group(fam[t].group, sub.group))
      throw Error(ErrorKind::structure_mismatch, "generator " + std::to_string(t) + " lives on another group");
    for (Eigen::Index k = 0; k < ng; ++k)
      syn.col(static_cast<Eigen::Index>(t) * ng + k) = translate(fam[t], sub.elements[k]).values;
  }
  return syn;
}

/// <f, L_gamma phi_t> in synthesis column order.
inline Vector analysis(const Matrix& syn, const Signal& f) { return syn.adjoint() * f.values; }

/// f -> sum_{t,gamma} <f, L_gamma psi_t> L_gamma phi_t.
inline Matrix mixed_operator(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& sub) {
  if (a.size() != b.size())
    throw Error(ErrorKind::family_size_mismatch, "families have " + std::to_string(a.size()) + " and " +
                                                     std::to_string(b.size()) + " generators");
  return synthesis_matrix(a, sub) * synthesis_matrix(b, sub).adjoint();
}

inline Matrix span_basis(const GeneratorFamily& fam, const Subgroup& sub, double rank_tol) {
  return linalg::range_basis(synthesis_matrix(fam, sub), rank_tol).basis;
}

/// Orthogonal projector onto span{L_gamma phi_t}.
inline Matrix span_projector(const GeneratorFamily& fam, const Subgroup& sub, double rank_tol = 1e-10) {
  return linalg::projector(span_basis(fam, sub, rank_tol));
}

/// |(S - I) P| with S the mixed operator and P the projector onto the span of A.
inline Result check_reproducing(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& sub,
                                const Tolerances& tol = {}) {
  const Matrix s = mixed_operator(a, b, sub);
  const Matrix q = span_basis(a, sub, tol.rank);
  const double r = q.cols() ? linalg::operator_norm((s - Matrix::Identity(s.rows(), s.cols())) * q) : 0.0;
  return {r <= tol.oracle, r};
}

/// |S P| / (|Syn_A| |Syn_A'|).
inline Result check_orthogonal_oracle(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& sub,
                                      const Tolerances& tol = {}) {
  const Matrix sa = synthesis_matrix(a, sub);
  const Matrix sb = synthesis_matrix(b, sub);
  if (a.size() != b.size()) throw Error(ErrorKind::family_size_mismatch, "family sizes differ");
  const double scale = linalg::operator_norm(sa) * linalg::operator_norm(sb);
  if (scale == 0) return {true, 0.0};
  const Matrix q = linalg::range_basis(sa, tol.rank).basis;
  const double r = q.cols() ? linalg::operator_norm(sa * (sb.adjoint() * q)) / scale : 0.0;
  return {r <= tol.oracle, r};
}

/// Dual frames for all of L2(G): |S - I|.
inline Result check_dual_frame(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& sub,
                               const Tolerances& tol = {}) {
  const Matrix s = mixed_operator(a, b, sub);
  const double r = linalg::operator_norm(s - Matrix::Identity(s.rows(), s.cols()));
  return {r <= tol.oracle, r};
}

/// Orthogonality on all of L2(G): |S| / (|Syn_A| |Syn_A'|).
inline Result check_orthogonal_full(const GeneratorFamily& a, const GeneratorFamily& b, const Subgroup& sub,
                                    const Tolerances& tol = {}) {
  const Matrix sa = synthesis_matrix(a, sub);
  const Matrix sb = synthesis_matrix(b, sub);
  const double scale = linalg::operator_norm(sa) * linalg::operator_norm(sb);
  const double r = scale > 0 ? linalg::operator_norm(sa * sb.adjoint()) / scale : 0.0;
  return {r <= tol.oracle, r};
}

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  Eigen::Index rank = 0;
};

/// Extreme nonzero eigenvalues of the frame operator Syn Syn*.
inline Bounds frame_bounds_oracle(const GeneratorFamily& fam, const Subgroup& sub, double rank_tol = 1e-10) {
  const Matrix syn = synthesis_matrix(fam, sub);
  const Eigen::VectorXd sv = linalg::singular_values(syn);
  Bounds b;
  b.upper = sv.size() ? sv(0) * sv(0) : 0.0;
  const double cut = rank_tol * (sv.size() ? sv(0) : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut && sv(i) > 0) {
      b.lower = sv(i) * sv(i);
      ++b.rank;
    }
  return b;
}

/// T[i][j] = <L_{gamma_i} phi, L_{gamma_j} psi>.
inline Matrix biortho_table(const Signal& phi, const Signal& psi, const Subgroup& sub) {
  const Eigen::Index n = static_cast<Eigen::Index>(sub.size());
  Matrix t(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Signal a = translate(phi, sub.elements[i]);
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = inner(a, translate(psi, sub.elements[j]));
  }
  return t;
}

}  // namespace zakframe::oracle
