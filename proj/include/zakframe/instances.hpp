#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zakframe/gabor.hpp"
#include "zakframe/io.hpp"
#include "zakframe/super.hpp"

namespace zakframe::instances {

using Rng = std::mt19937_64;

struct RandomInstance {
  std::string recipe;
  io::GroupSpec group_spec;
  io::SubgroupSpec sub_spec;
  GroupPtr group;
  Subgroup sub;
  GeneratorFamily a, b;

  io::InstanceSpec spec(std::uint64_t seed) const {
    io::InstanceSpec s;
    s.group = group_spec;
    s.subgroup = sub_spec;
    s.family = io::family_refs(a);
    s.dual = io::family_refs(b);
    s.seed = seed;
    return s;
  }
};

enum class Relation { generic, dual, orthogonal };

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double unit(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline Signal random_signal(const GroupPtr& g, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector x(static_cast<Eigen::Index>(g->order()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double re = n(rng);
    x(i) = Complex(re, n(rng));
  }
  return Signal(g, x);
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      m(i, j) = Complex(re, n(rng));
    }
  return m;
}

inline const std::vector<std::vector<int>>& abelian_pool() {
  static const std::vector<std::vector<int>> pool{
      {4}, {6}, {8}, {9}, {12}, {16}, {2, 2}, {2, 4}, {3, 3}, {4, 4}, {2, 6}, {3, 6}, {4, 6}, {6, 6},
      {2, 8}, {4, 8}, {8, 8}, {2, 2, 2}, {2, 2, 4}, {3, 4}, {5, 5}, {2, 16}, {4, 12}, {2, 2, 8}, {32}, {64}};
  return pool;
}

inline io::GroupSpec random_group_spec(Rng& rng, bool allow_nonabelian) {
  io::GroupSpec s;
  if (allow_nonabelian && unit(rng) < 0.25) {
    s.kind = "named";
    s.name = named_groups()[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(named_groups().size()) - 1))];
    return s;
  }
  const auto& pool = abelian_pool();
  s.orders = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
  return s;
}

/// Random abelian subgroup of order at most `max_order`.
inline io::SubgroupSpec random_subgroup_spec(Rng& rng, const GroupPtr& g, std::size_t max_order) {
  io::SubgroupSpec s;
  if (g->kind() == Group::Kind::product) {
    for (;;) {
      std::vector<int> strides;
      std::size_t order = 1;
      for (int n : g->orders()) {
        std::vector<int> divs;
        for (int d = 1; d <= n; ++d)
          if (n % d == 0) divs.push_back(d);
        const int d = divs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(divs.size()) - 1))];
        strides.push_back(d);
        order *= static_cast<std::size_t>(n / d);
      }
      if (order <= max_order) {
        s.strides = strides;
        return s;
      }
    }
  }
  const int n = static_cast<int>(g->order());
  const int x = uniform(rng, 0, n - 1);
  const int y = uniform(rng, 0, n - 1);
  std::vector<int> gens{x};
  if (unit(rng) < 0.3 && g->multiply(x, y) == g->multiply(y, x)) {
    gens.push_back(y);
    if (make_subgroup_generators(g, gens).size() > max_order) gens.pop_back();
  }
  s.generators = gens;
  return s;
}

/// Generator matrices J_B(alpha) built from J_A(alpha): the canonical dual
/// pinv(J)* plus `extra` times a random part orthogonal to ran J (dual), only
/// that orthogonal part (orthogonal), or random (generic).
inline GeneratorFamily related_family(const GeneratorFamily& a, const ZakDomainPtr& dom, Relation rel, double extra,
                                      Rng& rng, double rank_tol = 1e-10) {
  if (rel == Relation::generic) {
    GeneratorFamily out;
    for (std::size_t t = 0; t < a.size(); ++t) out.push_back(random_signal(a.front().group, rng));
    return out;
  }
  const ZakFamily za = zak_family(a, dom);
  const double scale = family_scale(za);
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  std::vector<ZakArray> zb(a.size(), ZakArray{dom, Matrix::Zero(dom->rows(), dom->cols())});
  for (Eigen::Index al = 0; al < dom->rows(); ++al) {
    const Matrix j = pre_gramian(za, al);
    const auto range = linalg::range_basis(j, rank_tol, scale);
    Matrix q = random_matrix(j.rows(), n, rng);
    q -= range.basis * (range.basis.adjoint() * q);
    Matrix jb = extra * q;
    if (rel == Relation::dual) jb += linalg::pseudo_inverse(j, rank_tol, scale).adjoint();
    for (Eigen::Index t = 0; t < n; ++t) zb[static_cast<std::size_t>(t)].values.row(al) = jb.col(t).transpose();
  }
  GeneratorFamily out;
  for (const auto& z : zb) out.push_back(zak_inverse(z));
  return out;
}

/// Generators with structure: duplicated (rank-deficient) members, zeroed
/// fibers (support holes), a zero member, or a badly conditioned member.
inline GeneratorFamily shaped_family(const GroupPtr& g, const ZakDomainPtr& dom, int n, const std::string& shape,
                                     Rng& rng) {
  GeneratorFamily fam;
  for (int t = 0; t < n; ++t) fam.push_back(random_signal(g, rng));
  if (shape == "duplicate" && n >= 2) {
    fam[static_cast<std::size_t>(n - 1)] = Signal(g, fam[0].values * Complex(0.5, -1.5));
  } else if (shape == "holes") {
    for (auto& f : fam) {
      ZakArray z = zak_forward(f, dom);
      for (Eigen::Index al = 0; al < dom->rows(); ++al)
        if (unit(rng) < 0.5) z.values.row(al).setZero();
      f = zak_inverse(z);
    }
  } else if (shape == "zero") {
    fam[static_cast<std::size_t>(uniform(rng, 0, n - 1))] = zero_signal(g);
  } else if (shape == "conditioned") {
    fam[static_cast<std::size_t>(uniform(rng, 0, n - 1))].values *= 1e-4;
  }
  return fam;
}

inline void perturb(GeneratorFamily& fam, double size, Rng& rng) {
  for (auto& f : fam) {
    const Signal e = random_signal(f.group, rng);
    f.values += e.values * (size * (1.0 + f.values.norm()) / e.values.norm());
  }
}

struct Config {
  std::size_t max_subgroup = 16;
  int max_family = 4;
  bool allow_nonabelian = true;
};

/// A seeded random instance with the requested relation between A and B.
inline RandomInstance random_instance(std::uint64_t seed, Relation rel, const Config& cfg = {}) {
  Rng rng(seed);
  RandomInstance r;
  r.group_spec = random_group_spec(rng, cfg.allow_nonabelian);
  r.group = io::build_group(r.group_spec);
  r.sub_spec = random_subgroup_spec(rng, r.group, cfg.max_subgroup);
  r.sub = io::build_subgroup(r.group, r.sub_spec);
  const auto dom = make_zak_domain(r.sub);
  const int n = uniform(rng, 1, cfg.max_family);
  static const char* shapes[] = {"plain", "plain", "duplicate", "holes", "zero"};
  const std::string shape = shapes[uniform(rng, 0, 4)];
  r.a = shaped_family(r.group, dom, n, shape, rng);
  const double extra = unit(rng) < 0.5 ? 0.0 : 1.0;
  r.b = related_family(r.a, dom, rel, extra, rng);
  r.recipe = std::string(rel == Relation::dual ? "dual" : rel == Relation::orthogonal ? "orthogonal" : "generic") +
             "/" + shape;
  return r;
}

inline const std::vector<std::string>& adversarial_recipes() {
  static const std::vector<std::string> names{
      "dual+1e-2tol",   "dual+1e2tol",   "orthogonal+1e-2tol", "orthogonal+1e2tol", "dual/conditioned",
      "dual/duplicate", "dual/holes",    "dual/nonabelian",    "dual/zero",         "dual/large-complement",
      "orthogonal/holes", "generic/duplicate"};
  return names;
}

/// Near-threshold and structurally degenerate instances, cycling through
/// adversarial_recipes() by `index`.
inline RandomInstance adversarial_instance(std::uint64_t seed, std::size_t index, double tol = 1e-8) {
  const auto& names = adversarial_recipes();
  const std::string recipe = names[index % names.size()];
  Rng rng(seed);
  RandomInstance r;
  r.recipe = recipe;
  r.group_spec = random_group_spec(rng, false);
  if (recipe == "dual/nonabelian") {
    r.group_spec = io::GroupSpec{"named", {}, {}, named_groups()[index % named_groups().size()]};
  }
  r.group = io::build_group(r.group_spec);
  r.sub_spec = random_subgroup_spec(rng, r.group, 16);
  r.sub = io::build_subgroup(r.group, r.sub_spec);
  const auto dom = make_zak_domain(r.sub);
  const int n = uniform(rng, 2, 4);
  std::string shape = "plain";
  for (const char* s : {"conditioned", "duplicate", "holes", "zero"})
    if (recipe.find(s) != std::string::npos) shape = s;
  r.a = shaped_family(r.group, dom, n, shape, rng);
  const bool ortho = recipe.rfind("orthogonal", 0) == 0;
  const Relation rel = recipe.rfind("generic", 0) == 0 ? Relation::generic : ortho ? Relation::orthogonal : Relation::dual;
  const double extra = recipe == "dual/large-complement" ? 1e3 : (ortho ? 1.0 : 0.0);
  r.b = related_family(r.a, dom, rel, extra, rng);
  if (recipe.find("+1e-2tol") != std::string::npos) perturb(r.b, 1e-2 * tol, rng);
  if (recipe.find("+1e2tol") != std::string::npos) perturb(r.b, 1e2 * tol, rng);
  return r;
}

// ---------------------------------------------------------------- Gabor and super

struct GaborInstance {
  GroupPtr group;
  Subgroup lambda;
  GeneratorFamily a, b;
  bool constructed = false;
};

inline GaborInstance random_gabor_instance(std::uint64_t seed) {
  Rng rng(seed);
  GaborInstance r;
  r.group = io::build_group(random_group_spec(rng, false));
  r.lambda = io::build_subgroup(r.group, random_subgroup_spec(rng, r.group, 16));
  const int n = uniform(rng, 1, 3);
  for (int t = 0; t < n; ++t) r.a.push_back(random_signal(r.group, rng));
  r.constructed = unit(rng) < 0.5;
  if (r.constructed) {
    r.b = gabor_dual_family(r.a, r.lambda);
  } else {
    for (int t = 0; t < n; ++t) r.b.push_back(random_signal(r.group, rng));
  }
  return r;
}

struct SuperInstance {
  GroupPtr base;
  Subgroup sub;
  int components = 2;
  std::vector<GeneratorFamily> a, b;
  std::string recipe;
};

/// Random super instance with N in {2, 3}. Packed fibers have N * |cosets| rows;
/// the "dual" recipe uses enough generators for a full-row-rank packed
/// pre-Gramian and takes its canonical dual.
inline SuperInstance random_super_instance(std::uint64_t seed) {
  Rng rng(seed);
  SuperInstance r;
  r.components = uniform(rng, 2, 3);
  static const std::vector<std::vector<int>> bases{{2}, {3}, {4}, {6}, {2, 2}, {8}};
  r.base = make_product_group(bases[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(bases.size()) - 1))]);
  // Gamma of index at most 2 keeps the packed fibers small
  std::vector<int> strides(r.base->orders().size(), 1);
  if (unit(rng) < 0.5 && r.base->orders().back() % 2 == 0) strides.back() = 2;
  r.sub = make_subgroup_strides(r.base, strides);
  const int rows = r.components * static_cast<int>(r.base->order() / r.sub.size());
  const double u = unit(rng);
  r.recipe = u < 0.5 ? "dual" : u < 0.75 ? "dual+perturbed" : "generic";
  const int n = r.recipe == "generic" ? uniform(rng, 1, rows + 1) : rows + uniform(rng, 0, 1);
  r.a.assign(static_cast<std::size_t>(r.components), {});
  for (auto& part : r.a)
    for (int t = 0; t < n; ++t) part.push_back(random_signal(r.base, rng));
  const SuperFamily packed = super_pack(r.a, r.sub);
  GeneratorFamily pb;
  if (r.recipe == "generic") {
    for (int t = 0; t < n; ++t) pb.push_back(random_signal(packed.packed_group, rng));
  } else {
    pb = related_family(packed.packed, make_zak_domain(packed.packed_sub), Relation::dual, 0.0, rng);
    if (r.recipe == "dual+perturbed") perturb(pb, 1e-3, rng);
  }
  r.b.assign(static_cast<std::size_t>(r.components), {});
  for (int k = 0; k < r.components; ++k)
    for (const auto& f : pb) r.b[static_cast<std::size_t>(k)].push_back(super_component(f, r.base, r.components, k));
  return r;
}

}  // namespace zakframe::instances
