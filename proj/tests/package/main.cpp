#include <cstdio>

#include "lshlab/bounds.hpp"
#include "lshlab/hash_family.hpp"
#include "lshlab/spectral.hpp"

int main() {
  const double k = lshlab::stability_k(lshlab::bit_sampling_family(4), 0.0);
  std::printf("K(0) = %g, mnp(1) = %.6f\n", k, lshlab::mnp_lower(1.0));
  return k == 1.0 ? 0 : 1;
}
