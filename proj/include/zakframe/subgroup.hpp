#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "zakframe/group.hpp"

namespace zakframe {

/// An abelian subgroup of a finite group, as a sorted list of element indices.
struct Subgroup {
  GroupPtr group;
  std::vector<int> elements;  // sorted ascending
  std::vector<int> strides;   // stride vector when built from strides, else empty
  std::vector<int> position;  // element -> index into `elements`, or -1

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(int x) const { return position[x] >= 0; }
  int index_of(int x) const { return position[x]; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return same_group(a.group, b.group) && a.elements == b.elements;
  }
};

namespace detail {

inline Subgroup finish_subgroup(const GroupPtr& g, std::vector<int> elements, std::vector<int> strides) {
  std::sort(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      const int a = elements[i];
      const int b = elements[j];
      if (g->multiply(a, b) != g->multiply(b, a))
        throw Error(ErrorKind::not_abelian, "elements " + std::to_string(a) + " and " +
                                                std::to_string(b) + " do not commute");
    }
  Subgroup s;
  s.group = g;
  s.strides = std::move(strides);
  s.position.assign(g->order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) s.position[elements[i]] = static_cast<int>(i);
  s.elements = std::move(elements);
  return s;
}

/// Closure of a generator list under multiplication.
inline std::vector<int> closure(const Group& g, std::span<const int> generators) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> out{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : generators) {
      const int y = g.multiply(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

}  // namespace detail

/// Stride sublattice s_1 Z x ... x s_d Z of a product group.
inline Subgroup make_subgroup_strides(const GroupPtr& g, std::vector<int> strides) {
  if (g->kind() != Group::Kind::product)
    throw Error(ErrorKind::invalid_stride, "stride subgroups need a product group");
  const auto& orders = g->orders();
  if (strides.size() != orders.size())
    throw Error(ErrorKind::invalid_stride, "expected " + std::to_string(orders.size()) + " strides, got " +
                                               std::to_string(strides.size()));
  for (std::size_t i = 0; i < strides.size(); ++i)
    if (strides[i] < 1 || orders[i] % strides[i] != 0)
      throw Error(ErrorKind::invalid_stride, "stride " + std::to_string(strides[i]) +
                                                 " does not divide order " + std::to_string(orders[i]));
  std::vector<int> elements;
  for (int x = 0; x < static_cast<int>(g->order()); ++x) {
    const auto d = g->digits(x);
    bool in = true;
    for (std::size_t i = 0; i < d.size() && in; ++i) in = d[i] % strides[i] == 0;
    if (in) elements.push_back(x);
  }
  return detail::finish_subgroup(g, std::move(elements), std::move(strides));
}

inline Subgroup make_subgroup_generators(const GroupPtr& g, const std::vector<int>& generators) {
  for (int s : generators)
    if (!g->contains(s))
      throw Error(ErrorKind::invalid_argument, "generator " + std::to_string(s) + " is not an element");
  return detail::finish_subgroup(g, detail::closure(*g, generators), {});
}

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return detail::finish_subgroup(g, std::move(all), {});
}

inline Subgroup trivial_subgroup(const GroupPtr& g) {
  return detail::finish_subgroup(g, {g->identity()}, {});
}

/// Right cosets Gamma x with a section Xi and the factorization x = gamma * Xi(Gamma x).
struct CosetTable {
  std::vector<std::vector<int>> cosets;  // each sorted ascending
  std::vector<int> section;              // coset -> representative
  std::vector<int> coset_of;             // element -> coset index
  std::vector<int> gamma_of;             // element -> index of gamma in Subgroup::elements

  std::size_t count() const noexcept { return cosets.size(); }
  /// Element gamma * Xi(c), with gamma given by its index in the subgroup.
  int element(const Subgroup& sub, int gamma_index, int coset) const {
    return sub.group->multiply(sub.elements[gamma_index], section[coset]);
  }
};

namespace detail {

inline CosetTable build_cosets(const Group& g, const Subgroup& sub, const std::vector<int>* section) {
  const int n = static_cast<int>(g.order());
  CosetTable t;
  t.coset_of.assign(n, -1);
  t.gamma_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (t.coset_of[x] >= 0) continue;
    const int c = static_cast<int>(t.cosets.size());
    std::vector<int> members;
    members.reserve(sub.size());
    for (int gamma : sub.elements) {
      const int y = g.multiply(gamma, x);
      t.coset_of[y] = c;
      members.push_back(y);
    }
    std::sort(members.begin(), members.end());
    t.section.push_back(members.front());
    t.cosets.push_back(std::move(members));
  }
  if (section) {
    if (section->size() != t.cosets.size())
      throw Error(ErrorKind::invalid_argument, "section must list one representative per coset");
    for (std::size_t c = 0; c < t.cosets.size(); ++c) {
      const int rep = (*section)[c];
      if (rep < 0 || rep >= n || t.coset_of[rep] != static_cast<int>(c))
        throw Error(ErrorKind::invalid_argument, "representative " + std::to_string(rep) +
                                                     " is not in coset " + std::to_string(c));
      t.section[c] = rep;
    }
  }
  for (int x = 0; x < n; ++x) {
    const int gamma = g.multiply(x, g.inverse(t.section[t.coset_of[x]]));
    t.gamma_of[x] = sub.index_of(gamma);
  }
  return t;
}

}  // namespace detail

/// Cosets ordered by minimal element; Xi = minimal element of each coset.
inline CosetTable coset_partition(const Subgroup& sub) {
  return detail::build_cosets(*sub.group, sub, nullptr);
}

/// Same partition and ordering, with a caller-chosen section.
inline CosetTable coset_partition(const Subgroup& sub, const std::vector<int>& section) {
  return detail::build_cosets(*sub.group, sub, &section);
}

}  // namespace zakframe
