#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "zakframe/gramian.hpp"
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
};

void expect_vec(const Vector& v, std::initializer_list<Complex> e, double tol = 1e-14) {
  ASSERT_EQ(v.size(), static_cast<Eigen::Index>(e.size()));
  Eigen::Index i = 0;
  for (auto x : e) {
    EXPECT_NEAR(std::abs(v(i) - x), 0, tol) << "entry " << i;
    ++i;
  }
}

/// Random instance on Z4 x Z6 with Gamma of order 6.
struct Rand {
  std::mt19937_64 rng{2024};
  GroupPtr g = make_product_group({4, 6});
  Subgroup gamma = make_subgroup_strides(g, {2, 2});
  ZakDomainPtr dom = make_zak_domain(gamma);
  Signal next() { return fixtures::random_signal(g, rng); }
};

}  // namespace

TEST(Bracket, Examples) {
  Z4 z;
  expect_vec(bracket(z.z(delta(z.g, 0)), z.z(delta(z.g, 0))).values, {1, 1});
  expect_vec(bracket(z.z(delta(z.g, 0)), z.z(delta(z.g, 1))).values, {0, 0});
  const Signal phi = sig(z.g, {1, 0, 1, 0});
  expect_vec(bracket(z.z(phi), z.z(phi)).values, {4, 0});
}

TEST(Bracket, FiberizationOfIndicator) {
  const auto g = make_product_group({16});
  const auto lam = make_subgroup_strides(g, {4});
  auto fd = make_fiber_domain(lam);
  // a unit bracket needs fiber entries 1/sqrt|Lambda| under the |Lambda|-weighted bracket
  FiberArray t{fd, Matrix::Zero(fd->rows(), fd->cols())};
  t.values.col(0).setConstant(1.0 / std::sqrt(4.0));
  const Signal eta = inverse_fiberize(t);
  const BracketFunction b = bracket_fiberization(fiberize(eta, fd), fiberize(eta, fd));
  for (Eigen::Index r = 0; r < b.size(); ++r) EXPECT_NEAR(std::abs(b(r) - 1.0), 0, 1e-12);
}

TEST(MatrixElement, Examples) {
  Z4 z;
  expect_vec(matrix_element(delta(z.g, 0), delta(z.g, 0), z.gamma), {1, 0});
  expect_vec(matrix_element(delta(z.g, 2), delta(z.g, 0), z.gamma), {0, 1});
}

TEST(MatrixElement, DtftIsBracket) {
  Rand r;
  for (int rep = 0; rep < 50; ++rep) {
    const Signal psi = r.next(), phi = r.next();
    const Vector lhs = dtft(matrix_element(psi, phi, r.gamma), r.dom->chars);
    const Vector rhs = bracket(psi, phi, r.dom).values;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * (1 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(Gramian, PreGramianExamples) {
  Z4 z;
  const Matrix j = pre_gramian(z.fam({delta(z.g, 0)}), 0);
  EXPECT_EQ(j, (Matrix(2, 1) << 1, 0).finished());
  const auto two = z.fam({delta(z.g, 0), delta(z.g, 1)});
  for (Eigen::Index a = 0; a < 2; ++a) EXPECT_LT((pre_gramian(two, a) - Matrix::Identity(2, 2)).norm(), 1e-15);
  try {
    pre_gramian(ZakFamily{}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::empty_family);
  }
}

TEST(Gramian, GramianAndMixedExamples) {
  Z4 z;
  const auto a = z.fam({delta(z.g, 0)});
  const auto b = z.fam({delta(z.g, 1)});
  for (Eigen::Index al = 0; al < 2; ++al) {
    EXPECT_NEAR(std::abs(gramian(a, al)(0, 0) - 1.0), 0, 1e-15);
    const Matrix m = mixed_dual_gramian(a, b, al);
    const Matrix expected = (Matrix(2, 2) << 0, 1, 0, 0).finished();
    EXPECT_LT((m - expected).norm(), 1e-15);
  }
  try {
    mixed_dual_gramian(a, z.fam({delta(z.g, 0), delta(z.g, 1)}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::family_size_mismatch);
  }
}

TEST(Gramian, EntriesAreBrackets) {
  Rand r;
  for (int rep = 0; rep < 10; ++rep) {
    GeneratorFamily f{r.next(), r.next(), r.next()};
    const auto zf = zak_family(f, r.dom);
    for (Eigen::Index a = 0; a < r.dom->rows(); ++a) {
      const Matrix gm = gramian(zf, a);
      EXPECT_LT((gm - gm.adjoint()).norm(), 1e-12 * gm.norm());
      EXPECT_GE(linalg::hermitian_eigenvalues(gm)(0), -1e-10 * gm.norm());
      for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t tp = 0; tp < 3; ++tp)
          EXPECT_NEAR(std::abs(gm(tp, t) - bracket(zf[t], zf[tp])(a)), 0, 1e-12 * (1 + gm.norm()));
    }
  }
}

TEST(Gramian, CauchySchwarz) {
  Rand r;
  for (int rep = 0; rep < 30; ++rep) {
    const auto zp = zak_forward(r.next(), r.dom), zq = zak_forward(r.next(), r.dom);
    const Vector pq = bracket(zp, zq).values, pp = bracket(zp, zp).values, qq = bracket(zq, zq).values;
    for (Eigen::Index a = 0; a < pq.size(); ++a)
      EXPECT_LE(std::norm(pq(a)), pp(a).real() * qq(a).real() * (1 + 1e-12) + 1e-12);
  }
}

TEST(Gramian, ParsevalTransfer) {
  Rand r;
  for (int rep = 0; rep < 30; ++rep) {
    const Signal f = r.next(), g = r.next(), phi = r.next(), psi = r.next();
    Complex lhs = 0;
    for (int gamma : r.gamma.elements) lhs += inner(f, translate(phi, gamma)) * inner(translate(psi, gamma), g);
    const Vector fphi = bracket(f, phi, r.dom).values, psig = bracket(psi, g, r.dom).values;
    const Complex rhs = fphi.cwiseProduct(psig).sum() / double(r.gamma.size());
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * (1 + std::abs(lhs)));
  }
}

TEST(Gramian, OperatorTransformIdentities) {
  Rand r;
  std::normal_distribution<double> n;
  for (int rep = 0; rep < 10; ++rep) {
    GeneratorFamily a{r.next(), r.next()}, b{r.next(), r.next()};
    const auto za = zak_family(a, r.dom), zb = zak_family(b, r.dom);
    const Matrix syn = oracle::synthesis_matrix(a, r.gamma);
    // synthesis of coefficient sequences h_t(gamma)
    Vector h(syn.cols());
    for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = Complex(n(r.rng), n(r.rng));
    const ZakArray zs = zak_forward(Signal(r.g, syn * h), r.dom);
    const Eigen::Index ng = static_cast<Eigen::Index>(r.gamma.size());
    for (Eigen::Index al = 0; al < r.dom->rows(); ++al) {
      Vector hhat(2);
      for (Eigen::Index t = 0; t < 2; ++t) hhat(t) = dtft(h.segment(t * ng, ng), r.dom->chars)(al);
      EXPECT_LT((zs.fiber(al) - pre_gramian(za, al) * hhat).norm(), 1e-9 * (1 + zs.values.norm()));
    }
    const Signal f = r.next();
    const ZakArray zf = zak_forward(f, r.dom);
    const ZakArray zm = zak_forward(Signal(r.g, oracle::mixed_operator(a, b, r.gamma) * f.values), r.dom);
    for (Eigen::Index al = 0; al < r.dom->rows(); ++al)
      EXPECT_LT((zm.fiber(al) - mixed_dual_gramian(za, zb, al) * zf.fiber(al)).norm(), 1e-9 * (1 + zm.values.norm()));
  }
}

TEST(Support, Examples) {
  Z4 z;
  const SupportSet s = support_set(z.z(sig(z.g, {1, 0, 1, 0})), 1e-10);
  EXPECT_EQ(s.mask, (std::vector<bool>{true, false}));
  EXPECT_EQ(support_set(z.z(delta(z.g, 0)), 1e-10).count(), 2u);
  EXPECT_EQ(support_set(z.z(zero_signal(z.g)), 1e-10).count(), 0u);
}

TEST(FrameBounds, Orthonormal) {
  Z4 z;
  const FrameBounds fb = frame_bounds(z.fam({delta(z.g, 0)}));
  EXPECT_NEAR(fb.bessel_bound, 1.0, 1e-14);
  EXPECT_NEAR(fb.lower_bound, 1.0, 1e-14);
  EXPECT_TRUE(fb.is_riesz);
  EXPECT_TRUE(fb.is_bessel);
}

TEST(FrameBounds, TwoPointGenerator) {
  Z4 z;
  const FrameBounds fb = frame_bounds(z.fam({sig(z.g, {1, 0, 1, 0})}));
  EXPECT_NEAR(fb.bessel_bound, 4.0, 1e-13);
  EXPECT_NEAR(fb.lower_bound, 4.0, 1e-13);
  EXPECT_TRUE(fb.is_frame_for_span);
  // the translates coincide up to the shift, so they are not linearly independent
  EXPECT_FALSE(fb.is_riesz);
  EXPECT_EQ(fb.ranks, (std::vector<Eigen::Index>{1, 0}));
}

TEST(FrameBounds, ZeroGeneratorColumn) {
  Z4 z;
  const FrameBounds fb = frame_bounds(z.fam({delta(z.g, 0), zero_signal(z.g)}));
  EXPECT_NEAR(fb.bessel_bound, 1.0, 1e-14);
  EXPECT_FALSE(fb.is_riesz);
}

TEST(RangeFunction, Examples) {
  Z4 z;
  for (Eigen::Index a = 0; a < 2; ++a) {
    const auto r = range_function(z.fam({delta(z.g, 0)}), a, 1e-10);
    EXPECT_EQ(r.rank, 1);
    EXPECT_NEAR(std::abs(std::abs(r.basis(0, 0)) - 1.0), 0, 1e-14);
    EXPECT_EQ(range_function(z.fam({delta(z.g, 0), delta(z.g, 1)}), a, 1e-10).rank, 2);
  }
  const auto fam = z.fam({sig(z.g, {1, 0, 1, 0})});
  EXPECT_EQ(range_function(fam, 0, 1e-10).rank, 1);
  EXPECT_EQ(range_function(fam, 1, 1e-10).rank, 0);
}
