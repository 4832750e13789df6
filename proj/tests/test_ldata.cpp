#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "courantkit/generators.hpp"
#include "courantkit/ldata.hpp"

using namespace ck;

namespace {

std::vector<Rational> random_point(Rng& rng, int n) {
  std::vector<Rational> p;
  for (int i = 0; i < n; ++i) p.push_back(rng.rational(3));
  return p;
}

}  // namespace

TEST_CASE("nondegenerate case: full dictionary with gauge") {
  CourantData d = CourantData::untwisted(Chart::standard(4), abelian_fiber(4, true));
  NondegSeed s = canonical_seed(d);
  GacsComponents c = nondeg_complete(d, s);

  Rng rng(101);
  for (int t = 0; t < 3; ++t) {
    auto p = random_point(rng, 4);
    auto ld = pointwise_ldata(d, c, p);
    CHECK(ld.nondegenerate);
    CHECK(ld.w_basis.cols() == 4);  // W = full complexified tangent space
    CHECK(ld.d_basis.cols() == 2);
    CHECK(ld.pass());
    CHECK(ld.sigma_matches_formula);
    CHECK(ld.gauged_sigma_is_nu_binv);
    CHECK(ld.gauged_epsilon_matches);
    // here nu = 0: sigma vanishes identically and epsilon = i/2 B^{-1}
    CHECK(mat_is_zero<GaussQ>(ld.sigma_std));
  }
}

TEST_CASE("nondegenerate with nu: sigma = nu B^{-1} after the gauge") {
  auto [d, s] = constructed_nu_example();
  GacsComponents c = nondeg_complete(d, s);
  Rng rng(103);
  for (int t = 0; t < 3; ++t) {
    auto p = random_point(rng, 4);
    auto ld = pointwise_ldata(d, c, p);
    CHECK(ld.nondegenerate);
    CHECK(ld.pass());
    CHECK(!mat_is_zero<GaussQ>(ld.sigma_std));  // nu really enters
  }
}

TEST_CASE("complex type: W is the (1,0)-space, sigma and epsilon vanish") {
  CourantData d = CourantData::untwisted(Chart::standard(4), abelian_fiber(2, false));
  GacsComponents c = complex_type(d, rot_pairs(4), rot_pairs(2));
  REQUIRE(check_algebraic(d, c).pass());

  auto ld = pointwise_ldata(d, c, {rat(1), rat(2), rat(0), rat(1)});
  CHECK(!ld.nondegenerate);
  CHECK(ld.w_basis.cols() == 2);  // half of the complexified tangent space
  CHECK(ld.pass());
  CHECK(mat_is_zero<GaussQ>(ld.sigma));
  CHECK(mat_is_zero<GaussQ>(ld.epsilon));
  // W = Rg(Id - iJ): check the +i eigenspace property J Z = i Z... note the
  // (1,0) vectors satisfy J Z = -i... pin: Z = X - iJX gives J Z = JX + iX =
  // i(X - iJX) = iZ
  RatMat jp = eval_at(c.J, {rat(1), rat(2), rat(0), rat(1)});
  GqMat jpc = complexify(jp);
  for (int a = 0; a < 2; ++a) {
    GqVec z = ld.w_basis.col(a);
    GqVec jz = jpc * z;
    GqVec iz = z * GaussQ::unit_i();
    CHECK(vec_is_zero<GaussQ>(GqVec(jz - iz)));
  }
}

TEST_CASE("hopf chart: dictionary at degenerate and generic points") {
  CourantData d = hopf_chart_data();
  GacsComponents c = hopf_chart_structure(d);
  REQUIRE(check_algebraic(d, c).pass());

  // generic point: nondegenerate branch with nu = 0
  auto ld = pointwise_ldata(d, c, {rat(1), rat(0), rat(1), rat(0)});
  CHECK(ld.nondegenerate);
  CHECK(ld.pass());

  // degenerate point (z1 = 0): B = 0 there, complex-type behaviour
  auto ld0 = pointwise_ldata(d, c, {rat(0), rat(0), rat(1), rat(0)});
  CHECK(!ld0.nondegenerate);
  CHECK(ld0.w_basis.cols() == 2);
  CHECK(ld0.pass());

  // rank-jump point set gives intermediate... z1 z2 both nonzero keeps rank 4
  auto ld2 = pointwise_ldata(d, c, {rat(1), rat(1), rat(2), rat(-1)});
  CHECK(ld2.nondegenerate);
  CHECK(ld2.pass());
}

TEST_CASE("structure with B = 0 and nonzero nu of rank 1") {
  // build a valid pointwise structure with B = 0, nu != 0 on a 2-chart with
  // the neutral rank-4 fiber: nu columns isotropic, J a complex structure,
  // completed by hand through the algebraic equations:
  // with B = 0 the equations force nu* mu = J^2 + Id, mu nu* + nu mu* = Id + A^2,
  // nu J* = A nu ...; take J standard, A = rot_pairs, mu = nu-compatible.
  // A clean solution: mu = 0, nu* nu = 0, J^2 = -Id, A^2 = -Id, nu J* = A nu.
  Chart c2 = Chart::standard(2);
  CourantData d = CourantData::untwisted(c2, abelian_fiber(4, true));
  GacsComponents c = GacsComponents::zero(c2, 4);
  c.J = rot_pairs(2);
  c.A = rot_pairs(4);
  // nu: T* -> G with isotropic image span{e1 + e3} and nu J* = A nu:
  // try nu(dx1) = a (e1+e3), nu(dx2) = b (e1+e3) + c (e2+e4): impose rows.
  // J* = J^T: nu J^T (dx1) = nu(-dx2)?? work with matrices directly:
  PolyMat nu = poly_zero_mat(4, 2);
  // columns: nu дx... nu acts on covectors; col k = nu(dx_k)
  // pick nu(dx1) = e1 + e3, nu(dx2) = e2 + e4; then
  // (nu J*) col k = nu (J^T dx_k), J^T dx1 = dx...: J^T = -J for rot: J^T dx1 = dx2·(J^T)(:,0)...
  nu(0, 0) = Scalar(1);
  nu(2, 0) = Scalar(1);
  nu(1, 1) = Scalar(1);
  nu(3, 1) = Scalar(1);
  c.nu = nu;
  // check nu J* = A nu holds for this choice (rot conventions align):
  // J^T = -J; A nu: A(e1+e3) = e2+e4, A(e2+e4) = -(e1+e3)
  auto rep = check_algebraic(d, c);
  if (!rep.pass()) {
    // flip the second column sign if the orientation mismatches
    c.nu.col(1) = -c.nu.col(1);
    rep = check_algebraic(d, c);
  }
  REQUIRE(rep.pass());

  auto ld = pointwise_ldata(d, c, {rat(1), rat(-2)});
  CHECK(!ld.nondegenerate);
  // W = Rg(Id - iJ) + i (Rg nu*)_0: rank nu* = 1 here? nu* = 2 nu^T g:
  // dimension cross-checked against the anchor image of L by pass()
  CHECK(ld.pass());
  CHECK(ld.w_basis.cols() >= 1);
  CHECK(!ld.rgnu0_choice.empty());  // the nu-complement genuinely contributes
}
