#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courantkit/chart.hpp"
#include "courantkit/polynomial.hpp"

using namespace ck;

TEST_CASE("rational helpers") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat_from_string("-7/21") == rat(-1, 3));
  CHECK(to_string(rat(-3, 2)) == "-3/2");
  CHECK_THROWS_AS(rat_from_string("x"), InputError);
}

TEST_CASE("gaussian rationals") {
  GaussQ i = GaussQ::unit_i();
  CHECK(i * i == GaussQ(-1));
  GaussQ z(rat(1), rat(2));
  CHECK(z * z.conj() == GaussQ(z.norm()));
  CHECK((z / z) == GaussQ(1));
  CHECK(to_string(GaussQ(rat(1), rat(-1))) == "1-i");
  CHECK(to_string(GaussQ(rat(0), rat(-2))) == "-2*i");
}

TEST_CASE("polynomial arithmetic stays canonical") {
  Chart c = Chart::standard(3);
  Scalar x = Scalar::variable(3, 0), y = Scalar::variable(3, 1);
  Scalar p = x * x - y;
  Scalar q = y - x * x;
  CHECK((p + q).is_zero());
  CHECK(p * q == -(p * p));
  CHECK((p - p).terms().empty());
  CHECK(p.degree() == 2);
  CHECK(to_string(p, c) == "x1^2 - x2");
}

TEST_CASE("parser matches printer") {
  Chart c = Chart::standard(3);
  Scalar p = parse_poly("3/2*x1^2*x3 - x2", c);
  CHECK(to_string(p, c) == "3/2*x1^2*x3 - x2");
  CHECK(parse_poly(to_string(p, c), c) == p);
  CHECK(parse_poly("-x1 + x1", c).is_zero());
  CHECK(parse_poly("(1+x1)^2", c) == parse_poly("1 + 2*x1 + x1^2", c));
  CHECK_THROWS_AS(parse_poly("z9", c), InputError);
  CHECK_THROWS_AS(parse_poly("x1 +", c), InputError);
  // the Gaussian unit is rejected in real contexts, accepted in complex ones
  CHECK_THROWS_AS(parse_poly("i*x1", c), InputError);
  auto g = parse_poly_gauss("(1-i)*x1 + i", c);
  CHECK(to_string(g, c) == "(1-i)*x1 + i");
}

TEST_CASE("derivative and evaluation") {
  Scalar x = Scalar::variable(2, 0), y = Scalar::variable(2, 1);
  Scalar p = x * x * y + Scalar(3) * y;
  CHECK(p.derivative(0) == Scalar(2) * x * y);
  CHECK(p.derivative(1) == x * x + Scalar(3));
  CHECK(p.eval<Rational>({rat(2), rat(3)}) == rat(21));
  // x1*x2 at (2,3) -> 6
  CHECK((x * y).eval<Rational>({rat(2), rat(3)}) == rat(6));
}

TEST_CASE("zero-variable constants mix with chart polynomials") {
  Scalar x = Scalar::variable(4, 0);
  Scalar one(1);  // as produced by Eigen temporaries
  CHECK(one * x == x);
  CHECK((x + Scalar(0)) == x);
  PolyMat id = poly_identity(3);
  PolyMat m = poly_zero_mat(3, 3);
  m(0, 0) = x;
  CHECK((id * m)(0, 0) == x);
}

TEST_CASE("chart validation") {
  Chart dup{{"x", "x"}}, reserved{{"i"}}, empty{{}};
  CHECK_THROWS_AS(dup.validate(), InputError);
  CHECK_THROWS_AS(reserved.validate(), InputError);
  CHECK_THROWS_AS(empty.validate(), InputError);
  Chart c = Chart::standard(8);
  CHECK(c.dim() == 8);
  CHECK(c.index_of("x7") == 6);
}
