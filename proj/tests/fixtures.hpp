#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <random>
#include <vector>

#include "zakframe/zak.hpp"

namespace fixtures {

using namespace zakframe;

inline Signal sig(const GroupPtr& g, std::initializer_list<Complex> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) x(i++) = c;
  return Signal(g, x);
}

inline Signal random_signal(const GroupPtr& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector x(static_cast<Eigen::Index>(g->order()));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(n(rng), n(rng));
  return Signal(g, x);
}

using Perm = std::vector<int>;

/// Closure of a set of permutations under composition, sorted, with the
/// Cayley table (a*b)(i) = a(b(i)).
struct PermGroup {
  std::vector<Perm> elements;
  std::vector<std::vector<int>> table;
  int index(const Perm& p) const {
    return static_cast<int>(std::lower_bound(elements.begin(), elements.end(), p) - elements.begin());
  }
};

inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline PermGroup perm_group(const std::vector<Perm>& gens) {
  const std::size_t d = gens.front().size();
  Perm id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);
  std::vector<Perm> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Perm p = compose(out[i], g);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  PermGroup pg{out, {}};
  pg.table.assign(out.size(), std::vector<int>(out.size()));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = 0; b < out.size(); ++b) pg.table[a][b] = pg.index(compose(out[a], out[b]));
  return pg;
}

inline PermGroup sym3() { return perm_group({{1, 0, 2}, {1, 2, 0}}); }

}  // namespace fixtures
