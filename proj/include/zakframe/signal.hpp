#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zakframe/characters.hpp"
#include "zakframe/linalg.hpp"

namespace zakframe {

/// A complex function on a finite group, indexed by element index.
struct Signal {
  GroupPtr group;
  Vector values;

  Signal() = default;
  Signal(GroupPtr g, Vector v) : group(std::move(g)), values(std::move(v)) {
    if (static_cast<std::size_t>(values.size()) != group->order())
      throw Error(ErrorKind::shape_mismatch, "signal length " + std::to_string(values.size()) +
                                                 " does not match group order " + std::to_string(group->order()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
      if (!std::isfinite(values(i).real()) || !std::isfinite(values(i).imag()))
        throw Error(ErrorKind::invalid_argument, "signal entry " + std::to_string(i) + " is not finite");
  }

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  double norm() const { return values.norm(); }
};

using GeneratorFamily = std::vector<Signal>;

inline Signal zero_signal(const GroupPtr& g) { return Signal(g, Vector::Zero(static_cast<Eigen::Index>(g->order()))); }

inline Signal delta(const GroupPtr& g, int x) {
  Signal s = zero_signal(g);
  s.values(x) = 1.0;
  return s;
}

inline void require_same_group(const Signal& a, const Signal& b) {
  if (!same_group(a.group, b.group)) throw Error(ErrorKind::structure_mismatch, "signals live on different groups");
}

/// <f, g> = sum_x f(x) conj(g(x)).
inline Complex inner(const Signal& f, const Signal& g) {
  require_same_group(f, g);
  return g.values.dot(f.values);
}

/// (L_eta f)(x) = f(eta^{-1} x).
inline Signal translate(const Signal& f, int eta) {
  const Group& g = *f.group;
  if (!g.contains(eta)) throw Error(ErrorKind::invalid_argument, "translation by a non-element");
  Signal out = zero_signal(f.group);
  const int inv = g.inverse(eta);
  for (int x = 0; x < static_cast<int>(g.order()); ++x) out.values(x) = f.values(g.multiply(inv, x));
  return out;
}

/// (E_omega f)(x) = omega(x) f(x), omega an index into `dual` (the dual of G).
inline Signal modulate(const Signal& f, const CharacterTable& dual, int omega) {
  if (!f.group->is_abelian()) throw Error(ErrorKind::abelian_required, "modulation needs an abelian group");
  if (!same_group(f.group, dual.group) || dual.elements.size() != f.size())
    throw Error(ErrorKind::structure_mismatch, "character table is not the dual of the signal's group");
  if (omega < 0 || static_cast<std::size_t>(omega) >= dual.size())
    throw Error(ErrorKind::invalid_argument, "character index out of range");
  Signal out = f;
  for (int x = 0; x < static_cast<int>(f.size()); ++x) out.values(x) *= dual.at(omega, x);
  return out;
}

/// Pointwise product with an arbitrary function on G.
inline Signal multiply(const Signal& f, const Vector& h) {
  if (h.size() != f.values.size()) throw Error(ErrorKind::shape_mismatch, "multiplier length mismatch");
  return Signal(f.group, f.values.cwiseProduct(h));
}

/// (f * g)(x) = sum_y f(y) g(y^{-1} x).
inline Signal convolve(const Signal& f, const Signal& h) {
  require_same_group(f, h);
  const Group& g = *f.group;
  const int n = static_cast<int>(g.order());
  Signal out = zero_signal(f.group);
  for (int y = 0; y < n; ++y) {
    if (f.values(y) == Complex(0.0)) continue;
    const int yi = g.inverse(y);
    for (int x = 0; x < n; ++x) out.values(x) += f.values(y) * h.values(g.multiply(yi, x));
  }
  return out;
}

/// Fourier transform over the dual table: fhat(omega) = scale * sum_x f(x) conj(omega(x)).
inline Vector dft(const Signal& f, const CharacterTable& dual, bool unitary = true) {
  if (!same_group(f.group, dual.group) || dual.elements.size() != f.size())
    throw Error(ErrorKind::structure_mismatch, "character table is not the dual of the signal's group");
  const double scale = unitary ? 1.0 / std::sqrt(static_cast<double>(f.size())) : 1.0;
  Vector out(static_cast<Eigen::Index>(dual.size()));
  for (std::size_t w = 0; w < dual.size(); ++w) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < dual.elements.size(); ++k)
      acc += f.values(dual.elements[k]) * std::conj(dual.value(static_cast<int>(w), static_cast<int>(k)));
    out(static_cast<Eigen::Index>(w)) = scale * acc;
  }
  return out;
}

/// Inverse of `dft` with the matching normalization.
inline Signal inverse_dft(const Vector& fhat, const CharacterTable& dual, bool unitary = true) {
  const std::size_t n = dual.elements.size();
  if (static_cast<std::size_t>(fhat.size()) != dual.size())
    throw Error(ErrorKind::shape_mismatch, "spectrum length does not match the dual group");
  const double scale = unitary ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0 / static_cast<double>(n);
  Signal out = zero_signal(dual.group);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (std::size_t w = 0; w < dual.size(); ++w)
      acc += fhat(static_cast<Eigen::Index>(w)) * dual.value(static_cast<int>(w), static_cast<int>(k));
    out.values(dual.elements[k]) = scale * acc;
  }
  return out;
}

}  // namespace zakframe
