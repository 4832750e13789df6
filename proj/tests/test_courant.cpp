#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courantkit/courant.hpp"
#include "courantkit/rng.hpp"

using namespace ck;

namespace {

QuadLieAlgebra abelian_fiber(int m) {
  QuadLieAlgebra q;
  q.algebra = LieAlgebra(m);
  q.metric = RatMat::Identity(m, m);
  return q;
}

QuadLieAlgebra aff_double() {
  LieAlgebra aff(2);
  aff.set_bracket(0, 1, 1, 1);
  return build_double(aff);
}

Section random_section(Rng& rng, const CourantData& d) {
  Section s = Section::zero(d.chart(), d.fiber_dim());
  s.x = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
  s.xi = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
  s.r = rng.poly_vec(d.fiber_dim(), d.chart().dim(), 2, 2);
  return s;
}

// Untwisted algebroid plus a closed H and a connection d + df S with S a
// commuting skew family: defining data hold by construction.
CourantData twisted_flat_example(const Chart& c) {
  QuadLieAlgebra fib = abelian_fiber(2);
  CourantData d = CourantData::untwisted(c, fib);
  // omega_i = (d_i f) S with f = x1 x2 and S skew
  PolyMat s = poly_zero_mat(2, 2);
  s(0, 1) = Scalar(1);
  s(1, 0) = Scalar(-1);
  Scalar f = Scalar::variable(c.dim(), 0) * Scalar::variable(c.dim(), 1);
  for (int i = 0; i < c.dim(); ++i) d.bundle.omega[static_cast<size_t>(i)] = s * f.derivative(i);
  // closed H: d(x1 dx2 ^ dx3 ... ) take H = d(beta) for a random 2-form
  Rng rng(11);
  KForm beta = rng.two_form(c, 2, 2);
  d.torsion3 = exterior_d_total(beta);
  return d;
}

}  // namespace

TEST_CASE("bundle invariants catch bad connections") {
  Chart c = Chart::standard(2);
  CourantData d = CourantData::untwisted(c, abelian_fiber(2));
  CHECK(d.bundle.check_invariants().pass());

  // non-skew connection coefficient violates the metric invariant
  d.bundle.omega[0](0, 0) = Scalar(1);
  CHECK(!d.bundle.check_invariants().metric);

  // a non-derivation on a non-abelian fiber violates the bracket invariant
  CourantData d2 = CourantData::untwisted(c, aff_double());
  PolyMat bad = poly_zero_mat(4, 4);
  bad(0, 1) = Scalar(1);
  bad(1, 0) = Scalar(-1);  // skew wrt the neutral metric? check both flags
  d2.bundle.omega[0] = bad;
  auto inv = d2.bundle.check_invariants();
  CHECK(!inv.pass());
}

TEST_CASE("check_defining_data") {
  Chart c = Chart::standard(3);
  CourantData d = CourantData::untwisted(c, abelian_fiber(2));
  CHECK(check_defining_data(d).pass());

  // closed H, R = 0: passes
  CourantData d2 = twisted_flat_example(Chart::standard(4));
  REQUIRE(d2.bundle.check_invariants().pass());
  CHECK(check_defining_data(d2).pass());

  // perturb H by a non-closed 3-form: third residual nonzero
  CourantData d3 = d2;
  KForm bad = KForm::zero(d3.chart(), 3);
  bad.set({0, 1, 2}, Scalar::variable(4, 3));
  d3.torsion3 += bad;
  auto rep = check_defining_data(d3);
  CHECK(!rep.h_flux);
  CHECK(rep.curvature_matches_bracket);
  CHECK(!rep.pass());
  CHECK(rep.first_failure != "zero");
}

TEST_CASE("scalar product normalization") {
  Chart c = Chart::standard(2);
  CourantData d = CourantData::untwisted(c, abelian_fiber(2));
  Section dx1 = Section::tangent(c, 2, 0);
  Section e1 = Section::cotangent(c, 2, 0);
  CHECK(scalar_product(d, dx1, e1) == Scalar(rat(1, 2)));

  Section r = Section::fiber(c, 2, 0);
  CHECK(scalar_product(d, r, r) == Scalar(1));

  Section u = Section::tangent(c, 2, 0) + Section::cotangent(c, 2, 1);
  Section v = Section::tangent(c, 2, 1) + Section::cotangent(c, 2, 0);
  CHECK(scalar_product(d, u, v) == Scalar(1));
}

TEST_CASE("dorfman reproduces the generator formulas") {
  Chart c = Chart::standard(3);
  CourantData d = CourantData::untwisted(c, aff_double());
  Rng rng(13);
  // give the algebroid nontrivial H and R-compatible data via a (flat) H only
  d.torsion3 = exterior_d_total(rng.two_form(c, 2, 2));
  REQUIRE(check_defining_data(d).pass());

  const int m = d.fiber_dim();
  // [X, Y] = L_X Y + i_Y i_X H + R(X,Y)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Section si = Section::tangent(c, m, i), sj = Section::tangent(c, m, j);
      Section br = dorfman(d, si, sj);
      CHECK(is_zero(br.x));  // coordinate fields commute
      PolyVec expected_xi =
          covector_of(interior(VectorField::coordinate(c, j),
                               interior(VectorField::coordinate(c, i), d.torsion3)));
      CHECK(is_zero(PolyVec(br.xi - expected_xi)));
      CHECK(is_zero(br.r));  // R = 0 here
    }

  // [X, eta] = L_X eta; [eta1, eta2] = [r, eta] = 0
  Section x = Section::tangent(c, m, 0);
  Section eta = Section::cotangent(c, m, 1);
  Scalar f = rng.poly(3, 2, 2);
  Section feta = f * eta;
  Section lie = dorfman(d, x, feta);
  CHECK(is_zero(lie.x));
  CHECK(is_zero(lie.r));
  CHECK(is_zero(PolyVec(lie.xi - lie_cov(c, x.x, feta.xi))));
  CHECK(dorfman(d, eta, feta).is_zero());
  CHECK(dorfman(d, Section::fiber(c, m, 0), eta).is_zero());

  // [X, r] = -2<i_X R, r> + nabla_X r  (R = 0, flat: reduces to X(r) = 0 on frames)
  Section rsec = Section::fiber(c, m, 1);
  Section xr = dorfman(d, x, rsec);
  CHECK(xr.is_zero());

  // [r1, r2] = 2<nabla r1, r2> + [r1, r2]_G ; flat connection kills the form part
  Section r0 = Section::fiber(c, m, 0), r3 = Section::fiber(c, m, 3);
  Section rr = dorfman(d, r0, r3);
  CHECK(is_zero(rr.x));
  CHECK(is_zero(rr.xi));
  CHECK(is_zero(PolyVec(rr.r - d.bundle.fiber.algebra.bracket<Scalar>(r0.r, r3.r))));
}

TEST_CASE("dorfman axioms on random sections") {
  Rng rng(17);
  CourantData d = twisted_flat_example(Chart::standard(3));
  REQUIRE(check_defining_data(d).pass());

  for (int trial = 0; trial < 5; ++trial) {
    Section u = random_section(rng, d), v = random_section(rng, d),
            w = random_section(rng, d);

    // symmetrization: [u,v] + [v,u] = 2 d<u,v>
    Section sym = dorfman(d, u, v) + dorfman(d, v, u);
    CHECK(is_zero(sym.x));
    CHECK(is_zero(sym.r));
    PolyVec dd = d_scalar(d.chart(), scalar_product(d, u, v)) * Scalar(2);
    CHECK(is_zero(PolyVec(sym.xi - dd)));

    // anchor property: pi[u,v] = [pi u, pi v]
    Section br = dorfman(d, u, v);
    CHECK(is_zero(PolyVec(br.x - lie_vec(d.chart(), u.x, v.x))));

    // metric compatibility: pi(u)<v,w> = <[u,v],w> + <v,[u,w]>
    Scalar lhs;
    Scalar vw = scalar_product(d, v, w);
    for (int i = 0; i < d.chart().dim(); ++i) lhs += u.x(i) * vw.derivative(i);
    Scalar rhs = scalar_product(d, dorfman(d, u, v), w) +
                 scalar_product(d, v, dorfman(d, u, w));
    CHECK(lhs == rhs);

    // Leibniz in the second slot: [u, f v] = f [u,v] + (pi u)(f) v
    Scalar f = rng.poly(3, 2, 2);
    Section lhs2 = dorfman(d, u, f * v);
    Scalar df_u;
    for (int i = 0; i < d.chart().dim(); ++i) df_u += u.x(i) * f.derivative(i);
    Section rhs2 = f * dorfman(d, u, v) + df_u * v;
    CHECK((lhs2 - rhs2).is_zero());

    // Jacobi residual vanishes
    CHECK(jacobi_residual(d, u, v, w).is_zero());
  }
}

TEST_CASE("jacobi residual detects a broken H-flux") {
  // on a 3-chart every 3-form is closed, so the witness needs dimension 4
  CourantData d = twisted_flat_example(Chart::standard(4));
  KForm bad = KForm::zero(d.chart(), 3);
  bad.set({0, 1, 2}, Scalar::variable(4, 3));
  d.torsion3 += bad;  // dH != <R^R> now
  REQUIRE(!check_defining_data(d).pass());

  // brackets are still computed (flagged-but-computed policy), and some
  // coordinate triple must witness the broken Jacobi identity
  bool witness = false;
  auto frames = frame_sections(d);
  for (size_t a = 0; a < frames.size() && !witness; ++a)
    for (size_t b = 0; b < frames.size() && !witness; ++b)
      for (size_t c2 = 0; c2 < frames.size() && !witness; ++c2)
        witness = !jacobi_residual(d, frames[a], frames[b], frames[c2]).is_zero();
  CHECK(witness);
}

TEST_CASE("jacobi residual with repeated arguments is consistent with the symmetrized bracket") {
  Rng rng(19);
  CourantData d = twisted_flat_example(Chart::standard(3));
  Section u = random_section(rng, d), w = random_section(rng, d);
  // [u,[u,w]] - [[u,u],w] - [u,[u,w]] = -[[u,u],w] and [u,u] = d<u,u>
  Section lhs = jacobi_residual(d, u, u, w);
  Section uu = dorfman(d, u, u);
  Section rhs = -dorfman(d, uu, w);
  CHECK((lhs - rhs).is_zero());
  // and [u,u] is exact: d<u,u>
  Section expected = Section::zero(d.chart(), d.fiber_dim());
  expected.xi = d_scalar(d.chart(), scalar_product(d, u, u));
  CHECK((uu - expected).is_zero());
}
