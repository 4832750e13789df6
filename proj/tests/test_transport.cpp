#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courantkit/generators.hpp"

using namespace ck;

namespace {

Section random_section(Rng& rng, const CourantData& d) {
  Section s = Section::zero(d.chart(), d.fiber_dim());
  s.x = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
  s.xi = rng.poly_vec(d.chart().dim(), d.chart().dim(), 2, 2);
  s.r = rng.poly_vec(d.fiber_dim(), d.chart().dim(), 2, 2);
  return s;
}

CourantData carrier_4_abelian() {
  return CourantData::untwisted(Chart::standard(4), abelian_fiber(4, true));
}

CourantData carrier_4_double() {
  return CourantData::untwisted(Chart::standard(4), double_aff1());
}

}  // namespace

TEST_CASE("apply_iso basics") {
  CourantData d = carrier_4_abelian();
  const Chart& c = d.chart();

  IsoData id = IsoData::identity(c, 4);
  Rng rng(61);
  Section u = random_section(rng, d);
  CHECK((apply_iso(d, id, u) - u).is_zero());

  // X = d1, beta = dx1 ^ dx2, Phi = 0: I(X) = d1 + dx2
  IsoData ib = id;
  ib.beta = wedge(KForm::dx(c, 0), KForm::dx(c, 1));
  Section x = Section::tangent(c, 4, 0);
  Section out = apply_iso(d, ib, x);
  CHECK(is_zero(PolyVec(out.x - x.x)));
  CHECK(out.xi(1) == Scalar(1));
  CHECK(out.xi(0).is_zero());
  CHECK(is_zero(out.r));
}

TEST_CASE("apply_iso preserves the scalar product and the anchor") {
  Rng rng(67);
  for (CourantData d : {carrier_4_abelian(), carrier_4_double()}) {
    IsoData iso = random_iso(rng, d, 1);
    REQUIRE(check_iso(d, iso).pass());
    for (int t = 0; t < 4; ++t) {
      Section u = random_section(rng, d), v = random_section(rng, d);
      Section iu = apply_iso(d, iso, u), iv = apply_iso(d, iso, v);
      CHECK(scalar_product(d, iu, iv) == scalar_product(d, u, v));
      CHECK(is_zero(PolyVec(iu.x - u.x)));
    }
  }
}

TEST_CASE("iso block matrix matches apply_iso and inverts exactly") {
  Rng rng(71);
  CourantData d = carrier_4_double();
  IsoData iso = random_iso(rng, d, 1);
  PolyMat ib = iso_block_matrix(d, iso);
  PolyMat ibinv = iso_block_matrix(d, invert_iso(iso));
  CHECK(mat_is_zero<Scalar>(PolyMat(ib * ibinv - poly_identity(ib.rows()))));
  CHECK(mat_is_zero<Scalar>(PolyMat(ibinv * ib - poly_identity(ib.rows()))));

  Section u = random_section(rng, d);
  Section via_map = apply_iso(d, iso, u);
  PolyVec stacked(12);
  stacked << u.x, u.xi, u.r;
  PolyVec mapped = ib * stacked;
  CHECK(is_zero(PolyVec(mapped.segment(0, 4) - via_map.x)));
  CHECK(is_zero(PolyVec(mapped.segment(4, 4) - via_map.xi)));
  CHECK(is_zero(PolyVec(mapped.segment(8, 4) - via_map.r)));

  // invert_iso is an exact involution at the data level
  IsoData twice = invert_iso(invert_iso(iso));
  CHECK(mat_is_zero<Scalar>(PolyMat(twice.K - iso.K)));
  CHECK(mat_is_zero<Scalar>(PolyMat(twice.Phi - iso.Phi)));
  CHECK((twice.beta - iso.beta).is_zero());

  // round trip on sections
  Section back = apply_iso(d, invert_iso(iso), via_map);
  CHECK((back - u).is_zero());
}

TEST_CASE("transform_data: special cases and validity") {
  CourantData d = carrier_4_abelian();
  const Chart& c = d.chart();

  // identity: unchanged
  CourantData same = transform_data(d, IsoData::identity(c, 4));
  CHECK(same.curv.is_zero());
  CHECK(same.torsion3.is_zero());
  for (auto& om : same.bundle.omega) CHECK(mat_is_zero<Scalar>(om));

  // K = Id, Phi = 0, beta closed: nothing moves
  IsoData closed = IsoData::identity(c, 4);
  closed.beta = wedge(KForm::dx(c, 0), KForm::dx(c, 1));
  CourantData same2 = transform_data(d, closed);
  CHECK(same2.torsion3.is_zero());
  CHECK(same2.curv.is_zero());

  // K = Id, Phi constant, abelian fiber, flat start: R2 = -[Phi,Phi] = 0,
  // connection picks up -ad_Phi = 0; H2 = H1 - d beta - <...>
  IsoData shift = IsoData::identity(c, 4);
  shift.Phi = poly_zero_mat(4, 4);
  shift.Phi(0, 0) = Scalar(1);
  CourantData shifted = transform_data(d, shift);
  CHECK(shifted.curv.is_zero());
  CHECK(check_defining_data(shifted).pass());
}

TEST_CASE("transform_data output passes the defining conditions and intertwines brackets") {
  Rng rng(73);
  for (CourantData d : {carrier_4_abelian(), carrier_4_double()}) {
    IsoData iso = random_iso(rng, d, 1);
    CourantData d2 = transform_data(d, iso);
    CHECK(d2.bundle.check_invariants().pass());
    CHECK(check_defining_data(d2).pass());

    // I[u,v]_1 = [Iu, Iv]_2 on all frame pairs
    auto frames = frame_sections(d);
    bool ok = true;
    for (size_t a = 0; a < frames.size() && ok; ++a)
      for (size_t b = 0; b < frames.size() && ok; ++b) {
        Section lhs = apply_iso(d, iso, dorfman(d, frames[a], frames[b]));
        Section rhs =
            dorfman(d2, apply_iso(d, iso, frames[a]), apply_iso(d, iso, frames[b]));
        ok = (lhs - rhs).is_zero();
      }
    CHECK(ok);
  }
}

TEST_CASE("compose_iso agrees with successive application") {
  Rng rng(79);
  CourantData d = carrier_4_double();
  IsoData first = random_iso(rng, d, 1);
  IsoData second = random_iso(rng, d, 1);
  IsoData comp = compose_iso(d, second, first);
  for (int t = 0; t < 3; ++t) {
    Section u = random_section(rng, d);
    Section lhs = apply_iso(d, comp, u);
    Section rhs = apply_iso(d, second, apply_iso(d, first, u));
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("transform_gacs: invariance of B and the nu-killing transport") {
  Rng rng(83);
  CourantData d = carrier_4_abelian();
  GacsComponents c = nondeg_complete(d, canonical_seed(d));
  REQUIRE(check_algebraic(d, c).pass());

  // identity leaves everything alone
  GacsComponents same = transform_gacs(d, c, IsoData::identity(d.chart(), 4));
  CHECK(mat_is_zero<Scalar>(PolyMat(same.J - c.J)));
  CHECK(mat_is_zero<Scalar>(PolyMat(same.C - c.C)));
  CHECK(mat_is_zero<Scalar>(PolyMat(same.A - c.A)));

  // a random iso: B never moves, the algebraic equations survive, and the
  // integrability verdict is preserved
  IsoData iso = random_iso(rng, d, 1);
  CourantData d1 = transform_data(d, invert_iso(iso));
  GacsComponents c1 = transform_gacs(d, c, iso);
  CHECK(mat_is_zero<Scalar>(PolyMat(c1.B - c.B)));
  CHECK(check_algebraic(d1, c1).pass());
  CHECK(nijenhuis_frame_oracle(d1, c1).integrable);
  CHECK(integrability_18(d1, c1).pass());
  CHECK(integrability_10(d1, c1).pass());

  // the specific transport (Id, nu B^{-1}, B_J) kills nu
  auto [dn, sn] = constructed_nu_example();
  GacsComponents cn = nondeg_complete(dn, sn);
  PolyMat binv = seed_b_inverse(sn);
  IsoData kill{dn.chart(), 4, poly_identity(4), PolyMat(sn.nu * binv), seed_bj(sn)};
  GacsComponents after = transform_gacs(dn, cn, kill);
  CHECK(mat_is_zero<Scalar>(after.nu));

  // a broken structure stays broken after transport
  GeneratedInstance broken = broken_nonclosed_instance(rng, d);
  REQUIRE(check_algebraic(broken.data, broken.comps).pass());
  IsoData iso2 = random_iso(rng, broken.data, 1);
  CourantData bd = transform_data(broken.data, invert_iso(iso2));
  GacsComponents bc = transform_gacs(broken.data, broken.comps, iso2);
  CHECK(check_algebraic(bd, bc).pass());
  CHECK(!nijenhuis_frame_oracle(bd, bc).integrable);
  CHECK(!integrability_10(bd, bc).pass());
}

TEST_CASE("normal form: canonical input is a fixed point") {
  CourantData d = carrier_4_abelian();
  NondegSeed s = canonical_seed(d);
  NormalFormResult res = normal_form(d, s);
  CHECK(mat_is_zero<Scalar>(res.step1.Phi));    // nu = 0 upstream
  CHECK(res.step1.beta.is_zero());              // B_J = 0 since J = 0
  CHECK(res.step2.beta.is_zero());
  CHECK(mat_is_zero<Scalar>(PolyMat(res.comps.A - rot_pairs(4))));
  CHECK(res.data.curv.is_zero());
  CHECK(res.data.torsion3.is_zero());
  CHECK((res.omega - map_to_two_form(d.chart(), standard_symplectic_map(4))).is_zero());
}

TEST_CASE("normal form recovers a twisted canonical structure") {
  Rng rng(89);
  for (CourantData d : {carrier_4_abelian(), carrier_4_double()}) {
    NondegSeed s = canonical_seed(d);
    GacsComponents c = nondeg_complete(d, s);

    IsoData tw = random_iso(rng, d, 1);
    CourantData dt = transform_data(d, invert_iso(tw));
    GacsComponents ct = transform_gacs(d, c, tw);
    REQUIRE(check_algebraic(dt, ct).pass());

    NondegSeed st = seed_of_components(dt, ct);
    REQUIRE(check_seed(dt, st).pass());
    REQUIRE(nondeg_integrability(dt, st).pass());

    NormalFormResult res = normal_form(dt, st);
    // omega is the invariant of the whole story
    CHECK((res.omega - map_to_two_form(d.chart(), standard_symplectic_map(4))).is_zero());
    CHECK(res.data.curv.is_zero());
    CHECK(res.data.torsion3.is_zero());

    // net isomorphism from the reduced algebroid back to the canonical one:
    // tw o step1 o step2; between two normal forms it must have Phi = 0,
    // beta = 0 and a parallel fiber isomorphism K conjugating the A's
    IsoData net = compose_iso(d, tw, compose_iso(d, res.step1, res.step2));
    CHECK(mat_is_zero<Scalar>(net.Phi));
    CHECK(net.beta.is_zero());
    REQUIRE(check_iso(d, net).pass());
    PolyMat kinv = *poly_inverse(net.K);
    CHECK(mat_is_zero<Scalar>(PolyMat(res.comps.A - kinv * c.A * net.K)));
  }
}

TEST_CASE("normal form refuses non-integrable input") {
  Rng rng(97);
  CourantData d = carrier_4_abelian();
  GeneratedInstance broken = broken_nonclosed_instance(rng, d);
  NondegSeed s = seed_of_components(broken.data, broken.comps);
  CHECK_THROWS_AS(normal_form(broken.data, s), PreconditionError);
}

TEST_CASE("the c3 cubic term equals one third of the bracket pairing") {
  // c3(X,Y,Z) = <Phi X, [Phi Y, Phi Z]> assembled componentwise must equal
  // 1/3 <[Phi, Phi] ^ Phi> for the shuffle pairing
  Rng rng(113);
  CourantData d = carrier_4_double();
  const Chart& c = d.chart();
  auto& alg = d.bundle.fiber.algebra;
  for (int trial = 0; trial < 3; ++trial) {
    PolyMat phi = rng.poly_mat(4, 4, 4, 1, 2);
    KForm c3 = KForm::zero(c, 3);
    PolyMat g = to_poly(d.bundle.fiber.metric);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        for (int e = b + 1; e < 4; ++e) {
          PolyVec br = alg.bracket<Scalar>(PolyVec(phi.col(b)), PolyVec(phi.col(e)));
          c3.set({a, b, e}, apply_covector(PolyVec(g * br), PolyVec(phi.col(a))));
        }
    FiberForm phif = FiberForm::zero(c, 1, 4);
    for (int i = 0; i < 4; ++i) phif.set({i}, PolyVec(phi.col(i)));
    FiberForm brf = FiberForm::zero(c, 2, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        brf.set({i, j}, alg.bracket<Scalar>(PolyVec(phi.col(i)), PolyVec(phi.col(j))));
    KForm paired = pairing_wedge(brf, phif, d.bundle.fiber.metric);
    KForm third = Scalar(rat(1, 3)) * paired;
    CHECK(c3 == third);
  }
}
