// Two indicator generators on Z16 with Lambda = 4Z16: eta2 is a subspace dual
// of eta1 but not the other way round.
#include <cstdio>

#include "zakframe.hpp"

using namespace zakframe;

int main() {
  const auto g = make_product_group({16});
  const auto lam = make_subgroup_strides(g, {4});
  const auto fd = make_fiber_domain(lam);
  const auto zd = make_zak_domain(lam);

  auto indicator = [&](std::initializer_list<int> rows) {
    FiberArray t{fd, Matrix::Zero(fd->rows(), fd->cols())};
    for (int r : rows) t.values(r, 0) = 0.5;
    return inverse_fiberize(t);
  };
  const Signal eta1 = indicator({0, 1}), eta2 = indicator({0, 1, 2, 3});

  const auto b = bracket(eta2, eta1, zd);
  std::printf("[eta2, eta1] =");
  for (Eigen::Index a = 0; a < b.values.size(); ++a) std::printf(" %+.3f", b.values(a).real());
  std::printf("\n");

  const auto fwd = verify_dual_single(zak_forward(eta1, zd), zak_forward(eta2, zd));
  const auto bwd = verify_dual_single(zak_forward(eta2, zd), zak_forward(eta1, zd));
  std::printf("eta2 dual to eta1: %s (residual %.2e)\n", fwd.holds ? "yes" : "no", fwd.max_residual);
  std::printf("eta1 dual to eta2: %s (residual %.2e)\n", bwd.holds ? "yes" : "no", bwd.max_residual);
}
