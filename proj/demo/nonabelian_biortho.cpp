// Biorthogonal partner of a random generator under the rotations of S3.
#include <cstdio>

#include "zakframe.hpp"

using namespace zakframe;

int main() {
  const auto g = named_group("S3");
  const auto sub = make_subgroup_generators(g, {3});
  const auto dom = make_zak_domain(sub);

  instances::Rng rng(7);
  const Signal phi = instances::random_signal(g, rng);
  const Signal psi = construct_biorthogonal(phi, dom);

  const Matrix table = oracle::biortho_table(phi, psi, sub);
  std::printf("<L_g phi, L_h psi> over the rotation subgroup:\n");
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.cols(); ++j) std::printf(" %+.3f%+.3fi", table(i, j).real(), table(i, j).imag());
    std::printf("\n");
  }
  const auto fb = frame_bounds(zak_family({phi}, dom));
  std::printf("Riesz: %s, bounds [%.4f, %.4f]\n", fb.is_riesz ? "yes" : "no", fb.lower_bound, fb.bessel_bound);
}
