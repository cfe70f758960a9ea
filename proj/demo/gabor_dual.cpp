// Canonical Gabor dual of a random window on Z12 with Lambda = 3Z12.
#include <cstdio>

#include "zakframe.hpp"

using namespace zakframe;

int main() {
  const auto g = make_product_group({12});
  const auto lam = make_subgroup_strides(g, {3});

  instances::Rng rng(11);
  const GeneratorFamily window{instances::random_signal(g, rng)};
  const GeneratorFamily dual = gabor_dual_family(window, lam);

  const auto fiber = verify_gabor_dual(window, dual, lam);
  const auto a = gabor_expand(window, lam), b = gabor_expand(dual, lam);
  const auto direct = oracle::check_reproducing(a.expanded, b.expanded, lam);
  std::printf("expanded system: %zu generators\n", a.expanded.size());
  std::printf("fiber check %s (%.2e), direct check %s (%.2e)\n", fiber.holds ? "holds" : "fails", fiber.max_residual,
              direct.holds ? "holds" : "fails", direct.residual);
}
