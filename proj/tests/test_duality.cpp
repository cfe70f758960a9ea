#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "zakframe/duality.hpp"
#include "zakframe/oracle.hpp"

using namespace zakframe;
using fixtures::sig;

namespace {

struct Z4 {
  GroupPtr g = make_product_group({4});
  Subgroup gamma = make_subgroup_strides(g, {2});
  ZakDomainPtr dom = make_zak_domain(gamma);
  ZakArray z(const Signal& f) const { return zak_forward(f, dom); }
  ZakFamily fam(const GeneratorFamily& f) const { return zak_family(f, dom); }
  Signal d(int x) const { return delta(g, x); }
};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::io_error;
}

}  // namespace

TEST(SubspaceDual, SelfDualDelta) {
  Z4 z;
  EXPECT_TRUE(verify_subspace_dual(z.fam({z.d(0)}), z.fam({z.d(0)})).holds);
}

TEST(SubspaceDual, TwoPointWithHalfDelta) {
  Z4 z;
  const GeneratorFamily a{sig(z.g, {1, 0, 1, 0})}, b{sig(z.g, {0.5, 0, 0, 0})};
  const auto r = verify_subspace_dual(z.fam(a), z.fam(b));
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.max_residual, 1e-15);
  EXPECT_TRUE(oracle::check_reproducing(a, b, z.gamma).holds);
}

TEST(SubspaceDual, TwoPointWithDeltaFails) {
  Z4 z;
  const GeneratorFamily a{sig(z.g, {1, 0, 1, 0})}, b{z.d(0)};
  const auto r = verify_subspace_dual(z.fam(a), z.fam(b));
  EXPECT_FALSE(r.holds);
  // |v - 2v| / (1 + |v|) with |v| = 2 at alpha_0
  EXPECT_NEAR(r.max_residual, 2.0 / 3.0, 1e-14);
  ASSERT_FALSE(r.offenders.empty());
  EXPECT_EQ(r.offenders.front().alpha, 0);
  const auto o = oracle::check_reproducing(a, b, z.gamma);
  EXPECT_FALSE(o.holds);
  EXPECT_NEAR(o.residual, 1.0, 1e-12);
}

TEST(SubspaceDual, SizeMismatch) {
  Z4 z;
  EXPECT_EQ(kind_of([&] { verify_subspace_dual(z.fam({z.d(0)}), z.fam({z.d(0), z.d(1)})); }),
            ErrorKind::family_size_mismatch);
}

TEST(SubspaceOrthogonal, Examples) {
  Z4 z;
  EXPECT_TRUE(verify_subspace_orthogonal(z.fam({z.d(0)}), z.fam({z.d(1)})).holds);
  EXPECT_FALSE(verify_subspace_orthogonal(z.fam({z.d(0)}), z.fam({z.d(0)})).holds);
}

TEST(SubspaceOrthogonal, ComplementaryIndicatorPair) {
  const auto g = make_product_group({16});
  const auto lam = make_subgroup_strides(g, {4});
  auto fd = make_fiber_domain(lam);
  auto zd = make_zak_domain(lam);
  // eta_1 on the fiber column xi = 0, eta_2 on xi = 4: both sets tile G-hat under Lambda-perp
  FiberArray t1{fd, Matrix::Zero(4, 4)}, t2{fd, Matrix::Zero(4, 4)};
  t1.values.col(0).setConstant(0.5);
  t2.values.col(1).setConstant(0.5);
  const Signal e1 = inverse_fiberize(t1), e2 = inverse_fiberize(t2);
  const auto b11 = bracket_fiberization(fiberize(e1, fd), fiberize(e1, fd));
  const auto b21 = bracket_fiberization(fiberize(e2, fd), fiberize(e1, fd));
  for (Eigen::Index r = 0; r < 4; ++r) {
    EXPECT_NEAR(std::abs(b11(r) - 1.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(b21(r)), 0, 1e-12);
  }
  EXPECT_TRUE(verify_subspace_orthogonal(zak_family({e1}, zd), zak_family({e2}, zd)).holds);
  EXPECT_TRUE(verify_subspace_orthogonal(zak_family({e2}, zd), zak_family({e1}, zd)).holds);
}

TEST(SingleGenerator, Examples) {
  Z4 z;
  EXPECT_TRUE(verify_dual_single(z.z(sig(z.g, {1, 0, 1, 0})), z.z(sig(z.g, {0.5, 0, 0, 0}))).holds);
  const auto o = verify_orthogonal_single(z.z(z.d(0)), z.z(z.d(1)));
  EXPECT_TRUE(o.holds);
  EXPECT_TRUE(o.flags.at("vanishes_globally"));
  EXPECT_TRUE(verify_dual_single(z.z(z.d(0)), z.z(z.d(0))).holds);
  EXPECT_FALSE(verify_orthogonal_single(z.z(z.d(0)), z.z(z.d(0))).holds);
}

TEST(ConstructDual, Delta) {
  Z4 z;
  const auto c = construct_dual(z.d(0), z.d(0), z.dom);
  EXPECT_LT((c.dual.values - z.d(0).values).norm(), 1e-15);
  EXPECT_TRUE(c.unique);
}

TEST(ConstructDual, TwoPointWithDelta) {
  Z4 z;
  const Signal phi = sig(z.g, {1, 0, 1, 0});
  // [phi, delta_0] = (2, 0): division on Omega_phi = {alpha_0} only
  const Vector b = bracket(z.z(phi), z.z(z.d(0))).values;
  EXPECT_NEAR(std::abs(b(0) - 2.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(b(1)), 0, 1e-15);
  const auto c = construct_dual(phi, z.d(0), z.dom);
  EXPECT_LT((c.dual.values - sig(z.g, {0.25, 0, 0.25, 0}).values).norm(), 1e-15);
  EXPECT_FALSE(c.unique);
  EXPECT_TRUE(verify_dual_single(z.z(phi), z.z(c.dual)).holds);
  EXPECT_TRUE(oracle::check_reproducing({phi}, {c.dual}, z.gamma).holds);
}

TEST(ConstructDual, NotBoundedBelow) {
  Z4 z;
  try {
    construct_dual(sig(z.g, {1, 0, 1, 0}), sig(z.g, {0, 1, 0, -1}), z.dom);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_bounded_below);
    EXPECT_NE(std::string(e.what()).find("alpha 0"), std::string::npos);
  }
}

TEST(ConstructDual, ComplexBracketNeedsConjugate) {
  Z4 z;
  const Signal phi = sig(z.g, {1, Complex(0, 1), Complex(0.5, 0.25), 2});
  const Signal psi = sig(z.g, {Complex(0.3, -1), 1, 0.2, Complex(0, 0.7)});
  const auto c = construct_dual(phi, psi, z.dom);
  const auto r = verify_dual_single(z.z(phi), z.z(c.dual));
  EXPECT_TRUE(r.holds) << r.max_residual;
  EXPECT_TRUE(oracle::check_reproducing({phi}, {c.dual}, z.gamma).holds);
}

TEST(Biorthogonal, Construct) {
  Z4 z;
  EXPECT_LT((construct_biorthogonal(z.d(0), z.dom).values - z.d(0).values).norm(), 1e-15);
  EXPECT_LT((construct_biorthogonal(sig(z.g, {2, 0, 0, 0}), z.dom).values - sig(z.g, {0.5, 0, 0, 0}).values).norm(),
            1e-15);
  const Signal phi = sig(z.g, {1, 0.5, 0, 0});
  const Signal psi = construct_biorthogonal(phi, z.dom);
  EXPECT_LT((oracle::biortho_table(phi, psi, z.gamma) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_TRUE(verify_biorthogonal(phi, psi, z.dom).holds);
  EXPECT_EQ(kind_of([&] { construct_biorthogonal(sig(z.g, {1, 0, 1, 0}), z.dom); }), ErrorKind::not_bounded_below);
}

TEST(Biorthogonal, Verify) {
  Z4 z;
  const auto ok = verify_biorthogonal(z.d(0), z.d(0), z.dom);
  EXPECT_TRUE(ok.holds);
  EXPECT_TRUE(ok.flags.at("linearly_independent"));
  for (const Signal& psi : {z.d(0), z.d(1), sig(z.g, {1, 2, 3, 4})}) {
    const auto r = verify_biorthogonal(sig(z.g, {1, 0, 1, 0}), psi, z.dom);
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(r.flags.at("linearly_independent"));
  }
}

TEST(Decompose, Examples) {
  Z4 z;
  const auto fam = z.fam({z.d(0)});
  const auto d1 = decompose(z.z(translate(z.d(0), 2)), fam);
  EXPECT_NEAR(std::abs(d1.coefficients(0, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(d1.coefficients(1, 0) + 1.0), 0, 1e-15);
  EXPECT_NEAR(d1.residual, 0.0, 1e-15);
  EXPECT_TRUE(d1.member);
  const auto d2 = decompose(z.z(z.d(1)), fam);
  EXPECT_NEAR(d2.residual, 1.0, 1e-14);
  EXPECT_FALSE(d2.member);
  const Signal phi = sig(z.g, {1, 2, Complex(0, 1), -1});
  const auto d3 = decompose(z.z(Signal(z.g, 3.0 * phi.values)), z.fam({phi}));
  for (Eigen::Index a = 0; a < 2; ++a) EXPECT_NEAR(std::abs(d3.coefficients(a, 0) - 3.0), 0, 1e-14);
}

TEST(Decompose, MultiGeneratorMembership) {
  std::mt19937_64 rng(9);
  const auto g = make_product_group({12});
  const auto sub = make_subgroup_strides(g, {3});
  auto dom = make_zak_domain(sub);
  const GeneratorFamily fam{fixtures::random_signal(g, rng), fixtures::random_signal(g, rng)};
  const Signal f(g, oracle::synthesis_matrix(fam, sub) * fixtures::random_signal(make_product_group({8}), rng).values);
  EXPECT_TRUE(decompose(zak_forward(f, dom), zak_family(fam, dom)).member);
}

TEST(PeriodicMultiply, Examples) {
  Z4 z;
  const GeneratorFamily b{z.d(1)};
  EXPECT_EQ(periodic_multiply(Vector::Ones(4), b, *z.dom)[0].values, b[0].values);
  const Vector h = (Vector(4) << 1, -1, 1, -1).finished();
  const auto hb = periodic_multiply(h, b, *z.dom);
  EXPECT_TRUE(verify_subspace_orthogonal(z.fam({z.d(0)}), z.fam(b)).holds);
  EXPECT_TRUE(verify_subspace_orthogonal(z.fam({z.d(0)}), z.fam(hb)).holds);
  EXPECT_EQ(kind_of([&] { periodic_multiply(z.d(0).values, b, *z.dom); }), ErrorKind::not_periodic);
}

TEST(PeriodicMultiply, SubspaceOrthogonalityIsNotPreserved) {
  // Fibers (1,1)/sqrt2 and (1,-1)/sqrt2 are orthogonal; h = +-1 on the two cosets
  // maps the second onto the first.
  Z4 z;
  const double s = 1.0 / std::sqrt(2.0);
  const Signal phi = zak_inverse(ZakArray{z.dom, (Matrix(2, 2) << s, s, s, s).finished()});
  const Signal psi = zak_inverse(ZakArray{z.dom, (Matrix(2, 2) << s, -s, s, -s).finished()});
  const Vector h = (Vector(4) << 1, -1, 1, -1).finished();
  const auto hpsi = periodic_multiply(h, {psi}, *z.dom);
  EXPECT_TRUE(verify_subspace_orthogonal(z.fam({phi}), z.fam({psi})).holds);
  EXPECT_FALSE(verify_subspace_orthogonal(z.fam({phi}), z.fam(hpsi)).holds);
  EXPECT_FALSE(oracle::check_orthogonal_oracle({phi}, hpsi, z.gamma).holds);
}

TEST(PeriodicMultiply, FullOrthogonalityIsPreserved) {
  std::mt19937_64 rng(17);
  const auto g = make_product_group({4, 6});
  const auto sub = make_subgroup_strides(g, {2, 3});
  auto dom = make_zak_domain(sub);
  std::normal_distribution<double> n;
  auto rnd = [&](Eigen::Index r, Eigen::Index c) {
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(n(rng), n(rng));
    return m;
  };
  for (int rep = 0; rep < 20; ++rep) {
    // J_A = X V1*, J_B = Y V2* with [V1 V2] unitary, so J_A J_B* = 0
    const Eigen::Index cosets = dom->cols();
    std::vector<Matrix> ja, jb;
    for (Eigen::Index a = 0; a < dom->rows(); ++a) {
      Eigen::HouseholderQR<Matrix> qr(rnd(3, 3));
      const Matrix v = qr.householderQ();
      ja.push_back(rnd(cosets, 2) * v.leftCols(2).adjoint());
      jb.push_back(rnd(cosets, 1) * v.rightCols(1).adjoint());
    }
    GeneratorFamily fa, fb;
    for (Eigen::Index t = 0; t < 3; ++t) {
      ZakArray za{dom, Matrix(dom->rows(), cosets)}, zb{dom, Matrix(dom->rows(), cosets)};
      for (Eigen::Index a = 0; a < dom->rows(); ++a) {
        za.values.row(a) = ja[a].col(t).transpose();
        zb.values.row(a) = jb[a].col(t).transpose();
      }
      fa.push_back(zak_inverse(za));
      fb.push_back(zak_inverse(zb));
    }
    Vector h(24);
    const auto& ct = dom->cosets;
    std::vector<Complex> level;
    for (std::size_t c = 0; c < ct.count(); ++c) level.emplace_back(n(rng), n(rng));
    for (int x = 0; x < 24; ++x) h(x) = level[ct.coset_of[x]];
    const auto hb = periodic_multiply(h, fb, *dom);
    EXPECT_TRUE(verify_orthogonal_pair_full(zak_family(fa, dom), zak_family(fb, dom)).holds);
    EXPECT_TRUE(verify_subspace_orthogonal(zak_family(fa, dom), zak_family(hb, dom)).holds);
    EXPECT_TRUE(oracle::check_orthogonal_oracle(fa, hb, sub).holds);
  }
}

TEST(Supplementary, Examples) {
  Z4 z;
  const auto s = supplementary_checks(z.z(sig(z.g, {1, 0, 1, 0})), z.z(sig(z.g, {0, 1, 0, -1})));
  EXPECT_TRUE(s.product_vanishes);
  EXPECT_TRUE(s.orthogonal);
  EXPECT_TRUE(s.implication_holds);
  const auto t = supplementary_checks(z.z(z.d(0)), z.z(z.d(0)));
  EXPECT_FALSE(t.product_vanishes);
  EXPECT_FALSE(t.zak_supports_disjoint);
  EXPECT_TRUE(t.implication_holds);
}

TEST(Supplementary, SupportMatchesOmega) {
  std::mt19937_64 rng(4);
  const auto g = make_product_group({4, 6});
  auto dom = make_zak_domain(make_subgroup_strides(g, {2, 3}));
  for (int rep = 0; rep < 50; ++rep) {
    Signal f = fixtures::random_signal(g, rng);
    if (rep % 2) {
      // kill a few fibers so the support is a proper subset
      ZakArray z = zak_forward(f, dom);
      z.values.row(rep % dom->rows()).setZero();
      z.values.row((rep + 3) % dom->rows()).setZero();
      f = zak_inverse(z);
    }
    const auto s = supplementary_checks(zak_forward(f, dom), zak_forward(fixtures::random_signal(g, rng), dom));
    EXPECT_TRUE(s.support_matches_omega);
  }
}

TEST(Invariants, SingleVersusMulti) {
  std::mt19937_64 rng(12);
  const auto g = make_product_group({12});
  const auto sub = make_subgroup_strides(g, {3});
  auto dom = make_zak_domain(sub);
  for (int rep = 0; rep < 30; ++rep) {
    const Signal phi = fixtures::random_signal(g, rng);
    const Signal psi = rep % 2 ? construct_dual(phi, fixtures::random_signal(g, rng), dom).dual
                               : fixtures::random_signal(g, rng);
    const auto zp = zak_forward(phi, dom), zq = zak_forward(psi, dom);
    EXPECT_EQ(verify_dual_single(zp, zq).holds, verify_subspace_dual({zp}, {zq}).holds);
    EXPECT_EQ(verify_dual_single(zp, zq).holds, rep % 2 == 1);
  }
}

TEST(Invariants, OrthogonalSymmetry) {
  std::mt19937_64 rng(13);
  const auto g = make_product_group({12});
  auto dom = make_zak_domain(make_subgroup_strides(g, {3}));
  for (int rep = 0; rep < 30; ++rep) {
    ZakArray zp = zak_forward(fixtures::random_signal(g, rng), dom);
    ZakArray zq = zak_forward(fixtures::random_signal(g, rng), dom);
    // make the fibers of psi orthogonal to those of phi
    for (Eigen::Index a = 0; a < zp.values.rows(); ++a) {
      const Vector v = zp.fiber(a);
      Vector w = zq.fiber(a);
      w -= v * (v.dot(w) / v.squaredNorm());
      zq.values.row(a) = w.transpose();
    }
    const auto fw = verify_orthogonal_single(zp, zq);
    ASSERT_TRUE(fw.holds);
    EXPECT_TRUE(verify_orthogonal_single(zq, zp).holds);
    EXPECT_TRUE(fw.flags.at("vanishes_globally"));
  }
}

TEST(Invariants, RieszBiorthogonalIsDual) {
  std::mt19937_64 rng(14);
  const auto g = make_product_group({4, 6});
  const auto sub = make_subgroup_strides(g, {2, 2});
  auto dom = make_zak_domain(sub);
  for (int rep = 0; rep < 20; ++rep) {
    const Signal phi = fixtures::random_signal(g, rng);
    const auto zp = zak_forward(phi, dom);
    if (!frame_bounds({zp}).is_riesz) continue;
    const Signal psi = construct_biorthogonal(phi, dom);
    ASSERT_TRUE(verify_biorthogonal(phi, psi, dom).holds);
    EXPECT_TRUE(verify_subspace_dual({zp}, {zak_forward(psi, dom)}).holds);
  }
}

TEST(Invariants, GramianCriterionOnEqualSpans) {
  std::mt19937_64 rng(15);
  const auto g = make_product_group({4, 6});
  const auto sub = make_subgroup_strides(g, {2, 3});
  auto dom = make_zak_domain(sub);
  std::normal_distribution<double> n;
  for (int rep = 0; rep < 20; ++rep) {
    // J_A = U X*, J_B = U Y* share the column space U; orthogonal iff X* Y = 0
    const bool orth = rep % 2 == 0;
    GeneratorFamily fa, fb;
    std::vector<Matrix> ja, jb;
    for (Eigen::Index a = 0; a < dom->rows(); ++a) {
      Matrix u(dom->cols(), 1), x(2, 1), y(2, 1);
      for (auto* m : {&u, &x, &y})
        for (Eigen::Index i = 0; i < m->size(); ++i) (*m)(i) = Complex(n(rng), n(rng));
      if (orth) y = (Matrix(2, 1) << -std::conj(x(1)), std::conj(x(0))).finished();
      ja.push_back(u * x.adjoint());
      jb.push_back(u * y.adjoint());
    }
    for (Eigen::Index t = 0; t < 2; ++t) {
      ZakArray za{dom, Matrix(dom->rows(), dom->cols())}, zb = za;
      for (Eigen::Index a = 0; a < dom->rows(); ++a) {
        za.values.row(a) = ja[a].col(t).transpose();
        zb.values.row(a) = jb[a].col(t).transpose();
      }
      fa.push_back(zak_inverse(za));
      fb.push_back(zak_inverse(zb));
    }
    const auto za = zak_family(fa, dom), zb = zak_family(fb, dom);
    double gg = 0;
    for (Eigen::Index a = 0; a < dom->rows(); ++a) gg = std::max(gg, (gramian(za, a) * gramian(zb, a)).norm());
    const bool both = verify_subspace_orthogonal(za, zb).holds && verify_subspace_orthogonal(zb, za).holds;
    EXPECT_EQ(gg < 1e-9, both);
    EXPECT_EQ(both, orth);
  }
}
