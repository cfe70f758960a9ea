#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "zakframe/linalg.hpp"
#include "zakframe/subgroup.hpp"

namespace zakframe {

/// Characters of a finite abelian group H (a subgroup of some G, possibly G itself).
///
/// H is decomposed as a direct product of cyclic factors <g_1> x ... x <g_r> of
/// orders n_1..n_r. Character j (mixed-radix digits j_1..j_r) takes the value
/// exp(2 pi i sum_i j_i a_i / n_i) on h = g_1^{a_1} ... g_r^{a_r}. Values are
/// stored as integer phases modulo the exponent L = lcm(n_i), so equality tests
/// between characters are exact.
struct CharacterTable {
  GroupPtr group;
  std::vector<int> elements;        // elements of H, indices in G (column order)
  std::vector<int> generators;      // g_i as G-indices
  std::vector<int> factor_orders;   // n_i
  int exponent = 1;                 // L
  std::vector<std::vector<int>> phase;  // phase[j][k]: alpha_j(h_k) = exp(2 pi i phase / L)
  std::vector<int> column_of;       // G-index -> column, or -1

  std::size_t size() const noexcept { return phase.size(); }
  Complex value(int j, int k) const { return linalg::unit_root(phase[j][k], exponent); }
  /// alpha_j evaluated at the G-element x (which must lie in H).
  Complex at(int j, int x) const { return value(j, column_of[x]); }

  Matrix matrix() const {
    Matrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(elements.size()));
    for (std::size_t j = 0; j < size(); ++j)
      for (std::size_t k = 0; k < elements.size(); ++k) m(j, k) = value(static_cast<int>(j), static_cast<int>(k));
    return m;
  }

  /// Index of the character whose phase on each generator is given by digits j_i.
  int index_from_digits(const std::vector<int>& digits) const {
    int j = 0;
    for (std::size_t i = 0; i < factor_orders.size(); ++i) j = j * factor_orders[i] + digits[i];
    return j;
  }

  /// Index of the character with value exp(2 pi i p / den) at g_i, i.e. phases of
  /// another table restricted to H. Returns -1 if no character matches.
  int find(const std::vector<long long>& generator_phase, long long den) const {
    std::vector<int> digits(factor_orders.size());
    for (std::size_t i = 0; i < factor_orders.size(); ++i) {
      const long long num = generator_phase[i] * factor_orders[i];
      if (num % den != 0) return -1;
      digits[i] = static_cast<int>(((num / den) % factor_orders[i] + factor_orders[i]) % factor_orders[i]);
    }
    return index_from_digits(digits);
  }

  int conjugate(int j) const {
    std::vector<long long> p(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) p[i] = exponent - phase[j][column_of[generators[i]]];
    return find(p, exponent);
  }

  int product(int a, int b) const {
    std::vector<long long> p(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const int k = column_of[generators[i]];
      p[i] = phase[a][k] + phase[b][k];
    }
    return find(p, exponent);
  }

  int trivial() const { return 0; }
};

namespace detail {

inline std::vector<int> subgroup_closure(const Group& g, const std::vector<int>& gens) {
  auto out = closure(g, gens);
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy cyclic decomposition with backtracking: repeatedly add the element of
/// largest order (smallest index on ties) whose cyclic group meets the current
/// span trivially.
inline bool decompose(const Group& g, const std::vector<int>& elements, std::vector<int>& gens,
                      std::vector<int>& span) {
  if (span.size() == elements.size()) return true;
  std::vector<char> in_span(g.order(), 0);
  for (int x : span) in_span[x] = 1;
  std::vector<std::pair<int, int>> candidates;
  for (int x : elements)
    if (!in_span[x]) candidates.emplace_back(-g.element_order(x), x);
  std::sort(candidates.begin(), candidates.end());
  const std::size_t need = elements.size() / span.size();
  for (auto [neg_order, x] : candidates) {
    const int ord = -neg_order;
    if (need % static_cast<std::size_t>(ord) != 0) continue;
    bool trivial = true;
    for (int y = x; y != g.identity() && trivial; y = g.multiply(y, x)) trivial = !in_span[y];
    if (!trivial) continue;
    gens.push_back(x);
    auto saved = span;
    auto next_gens = gens;
    span = subgroup_closure(g, next_gens);
    if (decompose(g, elements, gens, span)) return true;
    gens.pop_back();
    span = std::move(saved);
  }
  return false;
}

inline CharacterTable build_table(const GroupPtr& g, std::vector<int> elements, std::vector<int> gens) {
  CharacterTable t;
  t.group = g;
  t.elements = std::move(elements);
  t.generators = std::move(gens);
  for (int x : t.generators) t.factor_orders.push_back(g->element_order(x));
  t.exponent = 1;
  for (int n : t.factor_orders) t.exponent = std::lcm(t.exponent, n);
  t.column_of.assign(g->order(), -1);
  for (std::size_t k = 0; k < t.elements.size(); ++k) t.column_of[t.elements[k]] = static_cast<int>(k);

  // coordinates a(h) of every element in the decomposition
  const std::size_t r = t.generators.size();
  std::vector<std::vector<int>> coords(t.elements.size(), std::vector<int>(r, 0));
  std::vector<int> a(r, 0);
  std::size_t total = 1;
  for (int n : t.factor_orders) total *= static_cast<std::size_t>(n);
  if (total != t.elements.size())
    throw Error(ErrorKind::invalid_group, "cyclic decomposition does not cover the subgroup");
  for (std::size_t idx = 0; idx < total; ++idx) {
    int h = g->identity();
    for (std::size_t i = 0; i < r; ++i)
      for (int p = 0; p < a[i]; ++p) h = g->multiply(h, t.generators[i]);
    coords[t.column_of[h]] = a;
    for (std::size_t i = r; i-- > 0;) {
      if (++a[i] < t.factor_orders[i]) break;
      a[i] = 0;
    }
  }

  t.phase.assign(total, std::vector<int>(t.elements.size(), 0));
  std::vector<int> j(r, 0);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t k = 0; k < t.elements.size(); ++k) {
      long long p = 0;
      for (std::size_t i = 0; i < r; ++i)
        p += static_cast<long long>(j[i]) * coords[k][i] * (t.exponent / t.factor_orders[i]);
      t.phase[row][k] = static_cast<int>(p % t.exponent);
    }
    for (std::size_t i = r; i-- > 0;) {
      if (++j[i] < t.factor_orders[i]) break;
      j[i] = 0;
    }
  }
  return t;
}

inline std::vector<int> find_generators(const Group& g, const std::vector<int>& elements) {
  std::vector<int> gens;
  std::vector<int> span{g.identity()};
  if (!decompose(g, elements, gens, span))
    throw Error(ErrorKind::invalid_group, "no cyclic decomposition found");
  return gens;
}

}  // namespace detail

/// The dual group of an abelian subgroup, columns in subgroup element order.
inline CharacterTable dual_group(const Subgroup& sub) {
  const Group& g = *sub.group;
  std::vector<int> gens;
  if (!sub.strides.empty()) {
    const auto& orders = g.orders();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (sub.strides[i] == orders[i]) continue;
      std::vector<int> d(orders.size(), 0);
      d[i] = sub.strides[i];
      gens.push_back(g.encode(d));
    }
  } else {
    gens = detail::find_generators(g, sub.elements);
  }
  return detail::build_table(sub.group, sub.elements, std::move(gens));
}

/// The dual group of an abelian G. For product groups the natural table
/// omega_k(x) = exp(2 pi i sum_i k_i x_i / N_i) with k in mixed-radix order.
inline CharacterTable group_dual(const GroupPtr& g) {
  if (!g->is_abelian()) throw Error(ErrorKind::abelian_required, "dual group of a non-abelian group");
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> gens;
  if (g->kind() == Group::Kind::product) {
    const auto& orders = g->orders();
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == 1) continue;
      std::vector<int> d(orders.size(), 0);
      d[i] = 1;
      gens.push_back(g->encode(d));
    }
  } else {
    gens = detail::find_generators(*g, all);
  }
  return detail::build_table(g, std::move(all), std::move(gens));
}

/// Lambda-perp inside G-hat together with a section Theta of G-hat / Lambda-perp.
struct Annihilator {
  CharacterTable dual;            // G-hat
  std::vector<int> perp;          // indices into dual, ascending
  std::vector<int> theta;         // minimal character index per coset of G-hat / Lambda-perp
  std::vector<int> coset_of;      // character -> index into theta
  std::vector<int> perp_index;    // character -> position in perp, or -1
};

inline Annihilator annihilator(const GroupPtr& g, const Subgroup& sub) {
  if (!g->is_abelian()) throw Error(ErrorKind::abelian_required, "annihilator needs an abelian group");
  if (!same_group(g, sub.group)) throw Error(ErrorKind::structure_mismatch, "subgroup of another group");
  Annihilator a;
  a.dual = group_dual(g);
  const int n = static_cast<int>(a.dual.size());
  a.perp_index.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    bool trivial = true;
    for (int x : sub.elements)
      if (a.dual.phase[j][a.dual.column_of[x]] != 0) {
        trivial = false;
        break;
      }
    if (trivial) {
      a.perp_index[j] = static_cast<int>(a.perp.size());
      a.perp.push_back(j);
    }
  }
  a.coset_of.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    if (a.coset_of[j] >= 0) continue;
    const int c = static_cast<int>(a.theta.size());
    a.theta.push_back(j);
    for (int xi : a.perp) a.coset_of[a.dual.product(j, xi)] = c;
  }
  return a;
}

/// For each Theta representative omega_r, the index in `lambda_hat` of omega_r restricted to Lambda.
inline std::vector<int> restriction_map(const Annihilator& a, const CharacterTable& lambda_hat) {
  std::vector<int> out;
  out.reserve(a.theta.size());
  for (int w : a.theta) {
    std::vector<long long> p;
    for (int gen : lambda_hat.generators) p.push_back(a.dual.phase[w][a.dual.column_of[gen]]);
    const int idx = lambda_hat.find(p, a.dual.exponent);
    if (idx < 0) throw Error(ErrorKind::structure_mismatch, "restriction is not a character of the subgroup");
    out.push_back(idx);
  }
  return out;
}

}  // namespace zakframe
