#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courantkit/linalg.hpp"
#include "courantkit/rng.hpp"

using namespace ck;

namespace {

RatMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMat m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rref rank and nullspace basics") {
  RatMat id = RatMat::Identity(3, 3);
  CHECK(rank_of(id) == 3);
  CHECK(nullspace(id).cols() == 0);

  RatMat z = mat({{0, 0}, {0, 0}});
  CHECK(rank_of(z) == 0);
  CHECK(nullspace(z).cols() == 2);

  RatMat m = mat({{1, 2}, {2, 4}});
  CHECK(rank_of(m) == 1);
  RatMat ns = nullspace(m);
  REQUIRE(ns.cols() == 1);
  RatMat expected(2, 1);
  expected(0, 0) = 2;
  expected(1, 0) = -1;
  CHECK(same_span(ns, expected));
}

TEST_CASE("column space pivots are deterministic and leftmost") {
  RatMat m = mat({{0, 1, 1}, {0, 2, 2}});
  std::vector<int> piv;
  RatMat cs = column_space(m, &piv);
  REQUIRE(piv.size() == 1);
  CHECK(piv[0] == 1);
  CHECK(cs(0, 0) == 1);
}

TEST_CASE("solve_linear") {
  RatMat a = mat({{1, 2}, {3, 4}});
  RatVec b(2);
  b << Rational(5), Rational(6);
  auto x = solve_linear(a, b);
  REQUIRE(x.has_value());
  CHECK(vec_is_zero<Rational>(a * *x - b));
  RatMat sing = mat({{1, 1}, {1, 1}});
  RatVec bad(2);
  bad << Rational(0), Rational(1);
  CHECK(!solve_linear(sing, bad).has_value());
}

TEST_CASE("gaussian field works in the templated kernels") {
  GqMat m(2, 2);
  m(0, 0) = GaussQ::unit_i();
  m(0, 1) = GaussQ(1);
  m(1, 0) = GaussQ(-1);
  m(1, 1) = GaussQ::unit_i();
  // second row = i * first row -> rank 1
  CHECK(rank_of(m) == 1);
  CHECK(nullspace(m).cols() == 1);
}

TEST_CASE("signature of the invariant scalar product examples") {
  // 2 e1 e6 - 2 e2 e5 - (e3)^2 + (e4)^2
  RatMat b0(6, 6);
  b0.setConstant(Rational(0));
  b0(0, 5) = b0(5, 0) = 1;
  b0(1, 4) = b0(4, 1) = -1;
  b0(2, 2) = -1;
  b0(3, 3) = 1;
  auto [p, q, r] = signature(b0);
  CHECK(p == 3);
  CHECK(q == 3);
  CHECK(r == 0);

  auto [pi, qi, ri] = signature(RatMat(RatMat::Identity(5, 5)));
  CHECK(pi == 5);
  CHECK(qi == 0);

  // anti-diagonal rho with rho(e_i, e_{7-i}) = (-1)^{i-1}
  RatMat rho(6, 6);
  rho.setConstant(Rational(0));
  for (int i = 1; i <= 6; ++i) {
    int j = 7 - i;
    if (i <= j) {
      rho(i - 1, j - 1) = (i % 2 == 1) ? 1 : -1;
      rho(j - 1, i - 1) = rho(i - 1, j - 1);
    }
  }
  auto [pr, qr, rr] = signature(rho);
  CHECK(pr == 3);
  CHECK(qr == 3);
  CHECK(rr == 0);
}

TEST_CASE("signature is congruence invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 4;
    RatMat g(n, n);
    g.setConstant(Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        g(i, j) = rng.rational();
        g(j, i) = g(i, j);
      }
    // random invertible S: product of unit lower and upper triangulars
    RatMat l = RatMat::Identity(n, n), u = RatMat::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        l(i, j) = rng.rational();
        u(j, i) = rng.rational();
      }
    RatMat s = l * u;
    CHECK(signature(RatMat(s.transpose() * g * s)) == signature(g));
  }
}

TEST_CASE("poly_det and poly_inverse") {
  Scalar x = Scalar::variable(2, 0);
  PolyMat m = poly_identity(2);
  m(0, 1) = x;
  CHECK(poly_det(m) == Scalar(1));
  auto inv = poly_inverse(m);
  REQUIRE(inv.has_value());
  CHECK(mat_is_zero<Scalar>(PolyMat(m * *inv - poly_identity(2))));

  PolyMat sing = poly_zero_mat(2, 2);
  sing(0, 0) = x;  // det = x * x
  sing(1, 1) = x;
  CHECK(poly_det(sing) == x * x);
  CHECK(!poly_inverse(sing).has_value());

  Rng rng(3);
  PolyMat u = rng.poly_unipotent(4, 3, 2, 2);
  CHECK(poly_det(u) == Scalar(1));
  auto uinv = poly_inverse(u);
  REQUIRE(uinv.has_value());
  CHECK(mat_is_zero<Scalar>(PolyMat(*uinv * u - poly_identity(4))));
}
