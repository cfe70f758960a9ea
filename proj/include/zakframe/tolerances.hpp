#pragma once

#include <cstddef>

#include "zakframe/error.hpp"

namespace zakframe {

/// Thresholds shared by the fiber-side engines and the signal-domain oracle.
/// All are relative unless stated otherwise.
struct Tolerances {
  double dual = 1e-8;     // verdict threshold for duality/orthogonality residuals
  double oracle = 1e-8;   // same, signal-domain side
  double support = 1e-10; // Omega_phi: [phi,phi](a) > support * max [phi,phi]
  double rank = 1e-10;    // singular values <= rank * sigma_max count as zero
  double lower = 1e-8;    // absolute lower bound required of |[phi,psi]| on Omega_phi

  void validate() const {
    if (!(dual > 0) || !(oracle > 0) || !(rank > 0) || !(lower > 0))
      throw Error(ErrorKind::invalid_argument, "tolerances must be positive");
    if (!(support > 0) || !(support < 1))
      throw Error(ErrorKind::invalid_argument, "support tolerance must lie in (0, 1)");
  }
};

/// Size caps for the exhaustive parts of the library.
struct Limits {
  std::size_t max_cayley_order = 64;
  std::size_t max_product_order = 4096;
  std::size_t max_oracle_entries = std::size_t{1} << 20;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace zakframe
