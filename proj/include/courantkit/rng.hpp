#pragma once

#include <cstdint>

#include "courantkit/forms.hpp"

namespace ck {

/// splitmix64: tiny, seedable, identical across platforms, so randomized
/// reports are reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi] inclusive.
  long int_in(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small rational with numerator in [-bound, bound] and denominator in
  /// {1, 2, 3}.
  Rational rational(long bound = 3) {
    return rat(int_in(-bound, bound), int_in(1, 3));
  }

  /// Random polynomial with the given variable count, total degree cap and
  /// term count.
  Scalar poly(int nvars, int max_degree, int terms, long bound = 2);

  PolyVec poly_vec(int size, int nvars, int max_degree, int terms, long bound = 2);
  PolyMat poly_mat(int rows, int cols, int nvars, int max_degree, int terms, long bound = 2);

  /// Antisymmetric polynomial matrix.
  PolyMat poly_skew(int n, int nvars, int max_degree, int terms, long bound = 2);

  /// Upper unitriangular with polynomial off-diagonal entries (always
  /// invertible over the ring).
  PolyMat poly_unipotent(int n, int nvars, int max_degree, int terms, long bound = 2);

  KForm two_form(const Chart& c, int max_degree, int terms, long bound = 2);

 private:
  std::uint64_t state_;
};

}  // namespace ck
