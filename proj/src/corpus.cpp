#include "courantkit/corpus.hpp"

#include "courantkit/generators.hpp"
#include "courantkit/ldata.hpp"

namespace ck {

namespace {

LieAlgebra nil_124() { return from_differentials({"0", "0", "0", "12", "14", "24"}); }
LieAlgebra nil_123() { return from_differentials({"0", "0", "0", "12", "13", "23"}); }

RatMat beta0() {
  RatMat b(6, 6);
  b.setConstant(Rational(0));
  b(0, 5) = b(5, 0) = 1;
  b(1, 4) = b(4, 1) = -1;
  b(2, 2) = -1;
  b(3, 3) = 1;
  return b;
}

RatMat rho_ex2() {
  RatMat rho(6, 6);
  rho.setConstant(Rational(0));
  for (int i = 1; i <= 6; ++i) {
    int j = 7 - i;
    if (i <= j) {
      rho(i - 1, j - 1) = (i % 2 == 1) ? 1 : -1;
      rho(j - 1, i - 1) = rho(i - 1, j - 1);
    }
  }
  return rho;
}

void corpus_lemma_7param(Report& rep) {
  LieAlgebra l = nil_124();
  rep.add("jacobi identity", jacobi_check(l).pass());
  auto fam = invariant_sym_forms(l);
  rep.add("invariant form space has dimension 7", fam.dimension() == 7);
  RatMat b0 = beta0();
  bool invariant = true;
  for (int i = 0; i < 6; ++i) {
    RatMat adi = l.ad_basis(i);
    if (!mat_is_zero<Rational>(adi.transpose() * b0 + b0 * adi)) invariant = false;
  }
  rep.add("beta0 is ad-invariant", invariant);
  rep.add("signature of beta0 is (3,3,0)", signature(b0) == std::tuple<int, int, int>{3, 3, 0});
}

void corpus_lemma_ex2(Report& rep) {
  LieAlgebra l = nil_123();
  rep.add("jacobi identity", jacobi_check(l).pass());
  auto fam = invariant_sym_forms(l);
  rep.add("invariant form space has dimension 7", fam.dimension() == 7);

  // general element: the only entries are the six free upper-left ones and
  // the tied triple rho(1,6) = rho(3,4) = -rho(2,5)
  bool pattern = true;
  std::vector<std::pair<int, int>> allowed = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2},
                                              {1, 2}, {0, 5}, {2, 3}, {1, 4}};
  for (auto& b : fam.basis) {
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) {
        bool listed = false;
        for (auto& [p, q] : allowed) listed = listed || (p == i && q == j);
        if (!listed && b(i, j) != 0) pattern = false;
      }
    if (b(2, 3) != b(0, 5) || b(1, 4) != -b(0, 5)) pattern = false;
  }
  rep.add("general element matches the tied pattern", pattern);

  rep.add("rho has signature (3,3,0)",
          signature(rho_ex2()) == std::tuple<int, int, int>{3, 3, 0});

  // the witness evaluation on e3 - mu e4: value = rho(3,3) - 2 mu rho(1,6),
  // since rho(4,4) vanishes on the whole family and rho(3,4) is tied to
  // rho(1,6); nonzero for non-real mu whenever rho(1,6) != 0
  rep.add("rho(4,4) vanishes identically", vec_is_zero(RatVec(fam.entry_functional(3, 3))));
  rep.add("rho(3,4) is tied to rho(1,6)",
          fam.entry_functional(2, 3) == fam.entry_functional(0, 5));
  rep.add("rho(1,6) is a nonzero functional", !vec_is_zero(RatVec(fam.entry_functional(0, 5))));
  // concrete witness: a solution with lambda = 1 evaluated at mu = i gives
  // rho(3,3) - 2i, which has nonzero imaginary part
  {
    RatVec lam = fam.entry_functional(0, 5);
    bool witness = false;
    for (Eigen::Index t = 0; t < lam.size(); ++t)
      if (lam(t) != 0) {
        GaussQ val = GaussQ(fam.basis[static_cast<size_t>(t)](2, 2)) -
                     GaussQ(rat(0), rat(2)) * GaussQ(lam(t));
        witness = !val.is_zero() && val.im != 0;
        break;
      }
    rep.add("witness value is nonzero for mu = i", witness);
  }

  // J with (1,0)-covectors e1+ie2, e3+ie4, e5+ie6
  RatMat j(6, 6);
  j.setConstant(Rational(0));
  for (int p = 0; p + 1 < 6; p += 2) {
    j(p + 1, p) = 1;
    j(p, p + 1) = -1;
  }
  auto cs = complex_structure_check(l, rho_ex2(), j);
  rep.add("J squares to -Id", cs.square);
  rep.add("J is integrable (algebraic Nijenhuis)", cs.integrable);
  rep.add("J integrability agrees with the eigenspace oracle",
          cs.integrable == complex_structure_integrable_eigen(l, j));
  rep.add("J fails skewness against rho", !cs.skew);
}

void corpus_double_sl2(Report& rep) {
  LieAlgebra sl2(3);
  sl2.set_bracket(0, 1, 1, 2);
  sl2.set_bracket(0, 2, 2, -2);
  sl2.set_bracket(1, 2, 0, 1);
  rep.add("sl2 satisfies jacobi", jacobi_check(sl2).pass());
  QuadLieAlgebra dbl = build_double(sl2);
  rep.add("double has dimension 6", dbl.dim() == 6);
  rep.add("double satisfies jacobi", jacobi_check(dbl.algebra).pass());
  bool invariant = true;
  for (int i = 0; i < 6; ++i) {
    RatMat adi = dbl.algebra.ad_basis(i);
    if (!mat_is_zero<Rational>(adi.transpose() * dbl.metric + dbl.metric * adi))
      invariant = false;
  }
  rep.add("natural pairing is ad-invariant", invariant);
  rep.add("natural pairing has signature (3,3,0)",
          signature(dbl.metric) == std::tuple<int, int, int>{3, 3, 0});
}

void corpus_canonical_symplectic(Report& rep) {
  for (int n : {2, 4}) {
    std::string tag = " (chart dimension " + std::to_string(n) + ")";
    CourantData d = CourantData::untwisted(Chart::standard(n), abelian_fiber(2, false));
    GacsComponents c = canonical_symplectic(d, standard_symplectic_map(n), rot_pairs(2));
    rep.add("algebraic equations" + tag, check_algebraic(d, c).pass());
    rep.add("18-relation suite" + tag, integrability_18(d, c).pass());
    rep.add("10-relation suite" + tag, integrability_10(d, c).pass());
    rep.add("frame oracle" + tag, nijenhuis_frame_oracle(d, c).integrable);

    NondegSeed s = seed_of_components(d, c);
    NormalFormResult res = normal_form(d, s);
    bool fixed = res.data.curv.is_zero() && res.data.torsion3.is_zero() &&
                 mat_is_zero<Scalar>(res.step1.Phi) && res.step1.beta.is_zero() &&
                 res.step2.beta.is_zero() &&
                 mat_is_zero<Scalar>(PolyMat(res.comps.C - c.C)) &&
                 mat_is_zero<Scalar>(PolyMat(res.comps.A - c.A));
    rep.add("normal form is a fixed point" + tag, fixed);
  }
}

void corpus_twist_roundtrip(Report& rep, std::uint64_t seed, int trials) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    CourantData carrier =
        (t % 2 == 0)
            ? CourantData::untwisted(Chart::standard(4), abelian_fiber(4, true))
            : CourantData::untwisted(Chart::standard(4), double_aff1());
    std::string tag = " (trial " + std::to_string(t + 1) + ")";
    NondegSeed s = canonical_seed(carrier);
    GacsComponents c = nondeg_complete(carrier, s);
    IsoData tw = random_iso(rng, carrier, 1);
    CourantData dt = transform_data(carrier, invert_iso(tw));
    GacsComponents ct = transform_gacs(carrier, c, tw);

    rep.add("twisted data satisfies the defining conditions" + tag,
            check_defining_data(dt).pass());
    rep.add("twisted structure stays algebraic" + tag, check_algebraic(dt, ct).pass());
    rep.add("B-component is unchanged" + tag, mat_is_zero<Scalar>(PolyMat(ct.B - c.B)));

    NondegSeed st = seed_of_components(dt, ct);
    NormalFormResult res = normal_form(dt, st);
    bool omega_recovered =
        (res.omega - map_to_two_form(carrier.chart(), standard_symplectic_map(4))).is_zero();
    rep.add("omega recovered exactly" + tag, omega_recovered);

    IsoData net = compose_iso(carrier, tw, compose_iso(carrier, res.step1, res.step2));
    bool normal_iso = mat_is_zero<Scalar>(net.Phi) && net.beta.is_zero();
    rep.add("net isomorphism has Phi = 0, beta = 0" + tag, normal_iso);
    PolyMat kinv = *poly_inverse(net.K);
    rep.add("A conjugate to the original by the fiber isomorphism" + tag,
            mat_is_zero<Scalar>(PolyMat(res.comps.A - kinv * c.A * net.K)));
  }
}

void corpus_hopf_chart(Report& rep) {
  CourantData d = hopf_chart_data();
  GacsComponents c = hopf_chart_structure(d);
  rep.add("algebraic equations", check_algebraic(d, c).pass());
  rep.add("18-relation suite", integrability_18(d, c).pass());
  rep.add("10-relation suite", integrability_10(d, c).pass());
  rep.add("frame oracle", nijenhuis_frame_oracle(d, c).integrable);
  rep.add("B is a Poisson bivector", poisson_residual(d, c).is_zero());
  rep.add("rank of B at (1,0,1,0) is 4",
          rank_of(RatMat(eval_at(c.B, {rat(1), rat(0), rat(1), rat(0)}))) == 4);
  rep.add("rank of B vanishes on z1 = 0",
          rank_of(RatMat(eval_at(c.B, {rat(0), rat(0), rat(1), rat(0)}))) == 0);
  auto ld = pointwise_ldata(d, c, {rat(1), rat(0), rat(1), rat(0)});
  rep.add("L-data dictionary at a non-degenerate point", ld.pass() && ld.nondegenerate);
  auto ld0 = pointwise_ldata(d, c, {rat(0), rat(0), rat(1), rat(0)});
  rep.add("L-data dictionary at a degenerate point", ld0.pass() && !ld0.nondegenerate);
}

void corpus_dorfman_axioms(Report& rep, std::uint64_t seed, int trials) {
  Rng rng(seed);
  CourantData d = CourantData::untwisted(Chart::standard(3), double_aff1());
  d.torsion3 = exterior_d_total(rng.two_form(d.chart(), 2, 2));
  rep.add("defining data", check_defining_data(d).pass());

  auto random_section = [&](Rng& r) {
    Section s = Section::zero(d.chart(), d.fiber_dim());
    s.x = r.poly_vec(3, 3, 2, 2);
    s.xi = r.poly_vec(3, 3, 2, 2);
    s.r = r.poly_vec(4, 3, 2, 2);
    return s;
  };
  bool sym = true, anchor_ok = true, metric_ok = true, leibniz = true, jacobi = true;
  for (int t = 0; t < trials; ++t) {
    Section u = random_section(rng), v = random_section(rng), w = random_section(rng);
    Section symres = dorfman(d, u, v) + dorfman(d, v, u);
    symres.xi -= d_scalar(d.chart(), scalar_product(d, u, v)) * Scalar(2);
    sym = sym && symres.is_zero();
    anchor_ok = anchor_ok &&
                is_zero(PolyVec(dorfman(d, u, v).x - lie_vec(d.chart(), u.x, v.x)));
    Scalar lhs;
    Scalar vw = scalar_product(d, v, w);
    for (int i = 0; i < 3; ++i) lhs += u.x(i) * vw.derivative(i);
    metric_ok = metric_ok && lhs == scalar_product(d, dorfman(d, u, v), w) +
                                        scalar_product(d, v, dorfman(d, u, w));
    Scalar f = rng.poly(3, 2, 2);
    Scalar df_u;
    for (int i = 0; i < 3; ++i) df_u += u.x(i) * f.derivative(i);
    leibniz = leibniz &&
              (dorfman(d, u, f * v) - (f * dorfman(d, u, v) + df_u * v)).is_zero();
    jacobi = jacobi && jacobi_residual(d, u, v, w).is_zero();
  }
  rep.add("symmetrization [u,v] + [v,u] = 2 d<u,v>", sym);
  rep.add("anchor property", anchor_ok);
  rep.add("metric compatibility", metric_ok);
  rep.add("Leibniz rule in the second slot", leibniz);
  rep.add("Jacobi residual vanishes", jacobi);
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"lemma-7param",         "lemma-ex2",   "double-sl2", "canonical-symplectic",
          "twist-roundtrip", "hopf-chart", "dorfman-axioms"};
}

Report run_corpus(const std::string& name, std::uint64_t seed, int trials) {
  Report rep("corpus " + name, content_hash("corpus:" + name), seed);
  if (name == "lemma-7param") corpus_lemma_7param(rep);
  else if (name == "lemma-ex2") corpus_lemma_ex2(rep);
  else if (name == "double-sl2") corpus_double_sl2(rep);
  else if (name == "canonical-symplectic") corpus_canonical_symplectic(rep);
  else if (name == "twist-roundtrip") corpus_twist_roundtrip(rep, seed, trials > 0 ? trials : 2);
  else if (name == "hopf-chart") corpus_hopf_chart(rep);
  else if (name == "dorfman-axioms") corpus_dorfman_axioms(rep, seed, trials > 0 ? trials : 20);
  else throw InputError("unknown corpus entry: " + name);
  return rep;
}

}  // namespace ck
