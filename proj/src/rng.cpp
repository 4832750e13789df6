#include "courantkit/rng.hpp"

namespace ck {

Scalar Rng::poly(int nvars, int max_degree, int terms, long bound) {
  Scalar p = Scalar::constant(nvars, Rational(0));
  for (int t = 0; t < terms; ++t) {
    Expo e{};
    int deg = static_cast<int>(int_in(0, max_degree));
    for (int d = 0; d < deg; ++d) {
      int v = static_cast<int>(int_in(0, nvars - 1));
      e[static_cast<size_t>(v)] = static_cast<std::uint8_t>(e[static_cast<size_t>(v)] + 1);
    }
    p.add_term(e, rational(bound));
  }
  return p;
}

PolyVec Rng::poly_vec(int size, int nvars, int max_degree, int terms, long bound) {
  PolyVec v = poly_zero_vec(size);
  for (int i = 0; i < size; ++i) v(i) = poly(nvars, max_degree, terms, bound);
  return v;
}

PolyMat Rng::poly_mat(int rows, int cols, int nvars, int max_degree, int terms, long bound) {
  PolyMat m = poly_zero_mat(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = poly(nvars, max_degree, terms, bound);
  return m;
}

PolyMat Rng::poly_skew(int n, int nvars, int max_degree, int terms, long bound) {
  PolyMat m = poly_zero_mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = poly(nvars, max_degree, terms, bound);
      m(j, i) = -m(i, j);
    }
  return m;
}

PolyMat Rng::poly_unipotent(int n, int nvars, int max_degree, int terms, long bound) {
  PolyMat m = poly_identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = poly(nvars, max_degree, terms, bound);
  return m;
}

KForm Rng::two_form(const Chart& c, int max_degree, int terms, long bound) {
  KForm w = KForm::zero(c, 2);
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i + 1; j < c.dim(); ++j) w.set({i, j}, poly(c.dim(), max_degree, terms, bound));
  return w;
}

}  // namespace ck
