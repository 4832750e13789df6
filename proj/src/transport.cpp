#include "courantkit/transport.hpp"

namespace ck {

namespace {

FiberForm fiber_form_of_matrix(const Chart& c, const PolyMat& phi) {
  FiberForm out = FiberForm::zero(c, 1, static_cast<int>(phi.rows()));
  for (int i = 0; i < c.dim(); ++i) out.set({i}, PolyVec(phi.col(i)));
  return out;
}

FiberForm apply_to_values(const PolyMat& k, const FiberForm& w) {
  FiberForm out = FiberForm::zero(w.chart, w.deg, static_cast<int>(k.rows()));
  for (auto& [t, v] : w.coeffs) out.set(t, PolyVec(k * v));
  return out;
}

}  // namespace

IsoData IsoData::identity(const Chart& c, int m) {
  return {c, m, poly_identity(m), poly_zero_mat(m, c.dim()), KForm::zero(c, 2)};
}

IsoReport check_iso(const CourantData& d, const IsoData& i) {
  IsoReport rep;
  const int m = i.fiber_dim;
  rep.invertible = poly_inverse(i.K).has_value();
  PolyMat g = to_poly(d.bundle.fiber.metric);
  rep.metric = mat_is_zero<Scalar>(PolyMat(i.K.transpose() * g * i.K - g));
  rep.bracket = true;
  auto& alg = d.bundle.fiber.algebra;
  for (int a = 0; a < m && rep.bracket; ++a)
    for (int b = a + 1; b < m && rep.bracket; ++b) {
      PolyVec lhs = i.K * to_poly(alg.bracket_basis(a, b));
      PolyVec rhs = alg.bracket<Scalar>(PolyVec(i.K.col(a)), PolyVec(i.K.col(b)));
      if (!is_zero(PolyVec(lhs - rhs))) rep.bracket = false;
    }
  return rep;
}

PolyMat phi_star(const CourantData& d, const PolyMat& phi) {
  return phi.transpose() * to_poly(d.bundle.fiber.metric);
}

PolyMat iso_block_matrix(const CourantData& d, const IsoData& i) {
  const int n = i.chart.dim(), m = i.fiber_dim;
  PolyMat ps = phi_star(d, i.Phi);
  PolyMat bm = two_form_to_map(i.beta);
  PolyMat out = poly_zero_mat(2 * n + m, 2 * n + m);
  out.block(0, 0, n, n) = poly_identity(n);
  out.block(n, 0, n, n) = bm - ps * i.Phi;
  out.block(2 * n, 0, m, n) = i.Phi;
  out.block(n, n, n, n) = poly_identity(n);
  out.block(n, 2 * n, n, m) = ps * i.K * Scalar(-2);
  out.block(2 * n, 2 * n, m, m) = i.K;
  return out;
}

Section apply_iso(const CourantData& d, const IsoData& i, const Section& u) {
  require_same_chart(i.chart, u.chart, "apply_iso");
  PolyMat ps = phi_star(d, i.Phi);
  PolyMat bm = two_form_to_map(i.beta);
  Section out = Section::zero(u.chart, i.fiber_dim);
  out.x = u.x;
  out.xi = u.xi + (bm - ps * i.Phi) * u.x - ps * (i.K * u.r) * Scalar(2);
  out.r = i.Phi * u.x + i.K * u.r;
  return out;
}

CourantData transform_data(const CourantData& d1, const IsoData& i) {
  if (!check_defining_data(d1).pass())
    throw PreconditionError("transform_data: input fails the defining data conditions");
  if (!check_iso(d1, i).pass())
    throw PreconditionError("transform_data: invalid isomorphism data");
  const Chart& c = d1.chart();
  const int n = c.dim(), m = d1.fiber_dim();
  auto& alg = d1.bundle.fiber.algebra;

  auto kinv_opt = poly_inverse(i.K);
  PolyMat kinv = *kinv_opt;

  CourantData d2 = d1;
  // nabla2_X r = K nabla1_X (K^{-1} r) + [r, Phi(X)]
  for (int t = 0; t < n; ++t) {
    PolyMat dkinv(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) dkinv(a, b) = kinv(a, b).derivative(t);
    d2.bundle.omega[static_cast<size_t>(t)] =
        i.K * dkinv + i.K * d1.bundle.omega[static_cast<size_t>(t)] * kinv -
        alg.ad<Scalar>(PolyVec(i.Phi.col(t)));
  }

  // R2 = K R1 - d^{nabla2} Phi - [Phi, Phi]
  FiberForm phif = fiber_form_of_matrix(c, i.Phi);
  FiberForm r2 = apply_to_values(i.K, d1.curv);
  r2 -= d_nabla(d2, phif);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      PolyVec br = alg.bracket<Scalar>(PolyVec(i.Phi.col(a)), PolyVec(i.Phi.col(b)));
      PolyVec neg = -br;
      r2.add({a, b}, neg);
    }
  d2.curv = r2;

  // H2 = H1 - d beta - <(K R1 + R2) ^ Phi> + c3
  KForm h2 = d1.torsion3 - exterior_d_total(i.beta);
  FiberForm combined = apply_to_values(i.K, d1.curv);
  combined += r2;
  h2 -= pairing_wedge(combined, phif, d1.bundle.fiber.metric);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int e = b + 1; e < n; ++e) {
        PolyVec br = alg.bracket<Scalar>(PolyVec(i.Phi.col(b)), PolyVec(i.Phi.col(e)));
        Scalar c3 = apply_covector(PolyVec(to_poly(d1.bundle.fiber.metric) * br),
                                   PolyVec(i.Phi.col(a)));
        h2.add({a, b, e}, c3);
      }
  d2.torsion3 = h2;
  return d2;
}

IsoData invert_iso(const IsoData& i) {
  auto kinv = poly_inverse(i.K);
  if (!kinv) throw PreconditionError("invert_iso: K has no polynomial inverse");
  return {i.chart, i.fiber_dim, *kinv, PolyMat(-*kinv * i.Phi), -i.beta};
}

IsoData compose_iso(const CourantData& d, const IsoData& second, const IsoData& first) {
  require_same_chart(second.chart, first.chart, "compose_iso");
  IsoData out{first.chart, first.fiber_dim, PolyMat(second.K * first.K),
              PolyMat(second.Phi + second.K * first.Phi), first.beta + second.beta};
  // beta correction: (K2 Phi1)* Phi2 - Phi2* (K2 Phi1) as a two-form
  PolyMat m = phi_star(d, second.Phi) * (second.K * first.Phi);
  out.beta += map_to_two_form(first.chart, PolyMat(m.transpose() - m));
  return out;
}

GacsComponents transform_gacs(const CourantData& d, const GacsComponents& c, const IsoData& i) {
  require_same_chart(c.chart, i.chart, "transform_gacs");
  const int n = c.chart.dim(), m = c.fiber_dim;
  const RatMat& g = d.bundle.fiber.metric;

  PolyMat blk = block_matrix(d, c);
  PolyMat ib = iso_block_matrix(d, i);
  PolyMat ibinv = iso_block_matrix(d, invert_iso(i));
  PolyMat conj = ibinv * blk * ib;

  GacsComponents out = GacsComponents::zero(c.chart, m);
  out.J = conj.block(0, 0, n, n);
  out.B = conj.block(0, n, n, n);
  out.C = conj.block(n, 0, n, n);
  out.A = conj.block(2 * n, 2 * n, m, m);
  out.mu = conj.block(2 * n, 0, m, n);
  out.nu = conj.block(2 * n, n, m, n);

  // closed-form blocks must agree with the conjugation
  PolyMat kinv = *poly_inverse(i.K);
  PolyMat ps = phi_star(d, i.Phi);
  PolyMat bm = two_form_to_map(i.beta);
  PolyMat nus = adjoint_nu(g, c.nu);
  PolyMat j1 = c.J + c.B * (bm - ps * i.Phi) - nus * i.Phi;
  PolyMat a1 = kinv *
               (c.A + (i.Phi * c.B * ps) * Scalar(2) - (c.nu * ps) * Scalar(2) + i.Phi * nus) *
               i.K;
  PolyMat nu1 = kinv * (c.nu - i.Phi * c.B);
  if (!mat_is_zero<Scalar>(PolyMat(out.J - j1)) || !mat_is_zero<Scalar>(PolyMat(out.A - a1)) ||
      !mat_is_zero<Scalar>(PolyMat(out.B - c.B)) || !mat_is_zero<Scalar>(PolyMat(out.nu - nu1)))
    throw PreconditionError("transform_gacs: closed-form blocks disagree with conjugation");
  return out;
}

NormalFormResult normal_form(const CourantData& d, const NondegSeed& s) {
  auto integ = nondeg_integrability(d, s);
  if (!integ.pass())
    throw PreconditionError("normal_form: structure is not integrable");

  GacsComponents c = nondeg_complete(d, s);
  PolyMat binv = seed_b_inverse(s);

  // step 1: (Id, nu B^{-1}, B_J) removes the twist and the nu-component
  IsoData step1{s.chart, s.fiber_dim, poly_identity(s.fiber_dim), PolyMat(s.nu * binv),
                seed_bj(s)};
  CourantData d1 = transform_data(d, invert_iso(step1));
  GacsComponents c1 = transform_gacs(d, c, step1);

  if (!d1.curv.is_zero() || !d1.torsion3.is_zero())
    throw PreconditionError("normal_form: step 1 failed to untwist the algebroid");
  if (!mat_is_zero<Scalar>(c1.nu))
    throw PreconditionError("normal_form: step 1 left a nonzero nu-component");
  // the new connection is the modified one
  for (int t = 0; t < s.chart.dim(); ++t) {
    PolyMat expect = d.bundle.omega[static_cast<size_t>(t)] +
                     d.bundle.fiber.algebra.ad<Scalar>(PolyVec((s.nu * binv).col(t)));
    if (!mat_is_zero<Scalar>(PolyMat(d1.bundle.omega[static_cast<size_t>(t)] - expect)))
      throw PreconditionError("normal_form: step 1 connection is not the modified one");
  }

  // step 2: (Id, 0, B_J') with B_J' = -B^{-1} J recomputed from the new J
  PolyMat bjp = -binv * c1.J;
  IsoData step2{s.chart, s.fiber_dim, poly_identity(s.fiber_dim),
                poly_zero_mat(s.fiber_dim, s.chart.dim()),
                map_to_two_form(s.chart, bjp)};
  CourantData d0 = transform_data(d1, invert_iso(step2));
  GacsComponents c0 = transform_gacs(d1, c1, step2);

  if (!d0.curv.is_zero() || !d0.torsion3.is_zero())
    throw PreconditionError("normal_form: step 2 reintroduced a twist");
  if (!mat_is_zero<Scalar>(c0.J) || !mat_is_zero<Scalar>(c0.mu) || !mat_is_zero<Scalar>(c0.nu))
    throw PreconditionError("normal_form: canonical components are not in normal form");
  if (!mat_is_zero<Scalar>(PolyMat(c0.C + binv)))
    throw PreconditionError("normal_form: the symplectic component moved");
  // A is parallel for the final flat connection
  for (int t = 0; t < s.chart.dim(); ++t) {
    PolyMat da(s.fiber_dim, s.fiber_dim);
    for (int a = 0; a < s.fiber_dim; ++a)
      for (int b = 0; b < s.fiber_dim; ++b) da(a, b) = c0.A(a, b).derivative(t);
    const PolyMat& om = d0.bundle.omega[static_cast<size_t>(t)];
    if (!mat_is_zero<Scalar>(PolyMat(da + om * c0.A - c0.A * om)))
      throw PreconditionError("normal_form: A is not parallel");
  }

  NormalFormResult res;
  res.data = d0;
  res.comps = c0;
  res.omega = map_to_two_form(s.chart, PolyMat(-binv));
  res.a_field = c0.A;
  res.step1 = step1;
  res.step2 = step2;
  return res;
}

}  // namespace ck
