#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "zakframe/group.hpp"

namespace zakframe {

/// Cayley group of the permutation group generated by `gens`, elements sorted
/// lexicographically (identity first), product (a*b)(i) = a(b(i)).
inline GroupPtr permutation_group(const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) throw Error(ErrorKind::invalid_argument, "no generating permutations");
  const std::size_t d = gens.front().size();
  std::vector<int> id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);
  for (const auto& g : gens) {
    std::vector<int> s = g;
    std::sort(s.begin(), s.end());
    if (s != id) throw Error(ErrorKind::invalid_argument, "generator is not a permutation of 0.." + std::to_string(d - 1));
  }
  auto compose = [d](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = a[b[i]];
    return c;
  };
  std::vector<std::vector<int>> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      auto p = compose(out[i], g);
      if (std::find(out.begin(), out.end(), p) == out.end()) {
        if (out.size() >= default_limits().max_cayley_order)
          throw Error(ErrorKind::size_limit, "permutation group exceeds the Cayley order cap");
        out.push_back(std::move(p));
      }
    }
  std::sort(out.begin(), out.end());
  auto index = [&](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(out.begin(), out.end(), p) - out.begin());
  };
  std::vector<std::vector<int>> table(out.size(), std::vector<int>(out.size()));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = 0; b < out.size(); ++b) table[a][b] = index(compose(out[a], out[b]));
  return make_cayley_group(std::move(table));
}

/// Quaternion group: index 4*s + u for sign s in {+,-} and unit u in {1, i, j, k}.
inline GroupPtr quaternion_group() {
  // unit products u*v = sign * unit, for u, v in {1, i, j, k}
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int neg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int ua = a % 4, ub = b % 4;
      const int s = (a / 4 + b / 4 + neg[ua][ub]) % 2;
      table[a][b] = 4 * s + unit[ua][ub];
    }
  return make_cayley_group(std::move(table));
}

inline const std::vector<std::string>& named_groups() {
  static const std::vector<std::string> names{"S3", "D4", "Q8", "D6", "A4", "S4"};
  return names;
}

inline GroupPtr named_group(const std::string& name) {
  if (name == "S3") return permutation_group({{1, 0, 2}, {1, 2, 0}});
  if (name == "D4") return permutation_group({{1, 2, 3, 0}, {3, 2, 1, 0}});
  if (name == "Q8") return quaternion_group();
  if (name == "D6") return permutation_group({{1, 2, 3, 4, 5, 0}, {0, 5, 4, 3, 2, 1}});
  if (name == "A4") return permutation_group({{1, 2, 0, 3}, {1, 0, 3, 2}});
  if (name == "S4") return permutation_group({{1, 0, 2, 3}, {1, 2, 3, 0}});
  throw Error(ErrorKind::invalid_argument, "unknown named group '" + name + "'");
}

}  // namespace zakframe
