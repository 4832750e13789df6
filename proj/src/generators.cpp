#include "courantkit/generators.hpp"

namespace ck {

QuadLieAlgebra abelian_fiber(int m, bool neutral) {
  QuadLieAlgebra q;
  q.algebra = LieAlgebra(m);
  q.metric = RatMat::Identity(m, m);
  if (neutral)
    for (int i = m / 2; i < m; ++i) q.metric(i, i) = -1;
  return q;
}

QuadLieAlgebra double_aff1() {
  LieAlgebra aff(2);
  aff.set_bracket(0, 1, 1, 1);
  return build_double(aff);
}

PolyMat rot_pairs(int m) {
  PolyMat a = poly_zero_mat(m, m);
  for (int p = 0; p + 1 < m; p += 2) {
    a(p + 1, p) = Scalar(1);
    a(p, p + 1) = Scalar(-1);
  }
  return a;
}

PolyMat standard_symplectic_map(int n) {
  PolyMat w = poly_zero_mat(n, n);
  for (int p = 0; p + 1 < n; p += 2) {
    w(p + 1, p) = Scalar(1);
    w(p, p + 1) = Scalar(-1);
  }
  return w;
}

GacsComponents canonical_symplectic(const CourantData& d, const PolyMat& omega_map,
                                    const PolyMat& a) {
  GacsComponents c = GacsComponents::zero(d.chart(), d.fiber_dim());
  auto inv = poly_inverse(omega_map);
  if (!inv) throw PreconditionError("canonical_symplectic: omega not invertible over the ring");
  c.C = omega_map;
  c.B = -*inv;
  c.A = a;
  return c;
}

GacsComponents complex_type(const CourantData& d, const PolyMat& j, const PolyMat& a) {
  GacsComponents c = GacsComponents::zero(d.chart(), d.fiber_dim());
  c.J = j;
  c.A = a;
  return c;
}

CourantData hopf_chart_data() {
  return CourantData::untwisted(Chart::standard(4), abelian_fiber(2, false));
}

GacsComponents hopf_chart_structure(const CourantData& d) {
  const Chart& c4 = d.chart();
  if (c4.dim() != 4 || d.fiber_dim() != 2)
    throw PreconditionError("hopf structure needs a 4-chart and a rank-2 fiber");
  GacsComponents c = GacsComponents::zero(c4, 2);
  PolyMat j = poly_zero_mat(4, 4);
  j(1, 0) = Scalar(1);
  j(0, 1) = Scalar(-1);
  j(3, 2) = Scalar(1);
  j(2, 3) = Scalar(-1);
  c.J = j;
  Scalar x1 = Scalar::variable(4, 0), x2 = Scalar::variable(4, 1);
  Scalar x3 = Scalar::variable(4, 2), x4 = Scalar::variable(4, 3);
  Scalar u = x1 * x3 - x2 * x4, v = x1 * x4 + x2 * x3;  // z1 z2 = u + iv
  auto wedge_map = [](int a, int b) {
    PolyMat m = poly_zero_mat(4, 4);
    m(b, a) = Scalar(1);
    m(a, b) = Scalar(-1);
    return m;
  };
  Scalar half(rat(1, 2));
  c.B = (wedge_map(0, 2) - wedge_map(1, 3)) * (u * half) +
        (wedge_map(0, 3) + wedge_map(1, 2)) * (v * half);
  c.A = rot_pairs(2);
  return c;
}

namespace {

// Exact isometric automorphisms of the model fibers.
PolyMat random_fiber_automorphism(Rng& rng, const CourantData& d, int deg) {
  const int m = d.fiber_dim();
  auto& alg = d.bundle.fiber.algebra;
  if (alg.is_abelian()) {
    // constant catalog: rotations inside definite pairs, hyperbolic moves on
    // mixed pairs, diagonal signs
    RatMat k = RatMat::Identity(m, m);
    for (int rep = 0; rep < 2; ++rep) {
      int a = static_cast<int>(rng.int_in(0, m - 1));
      int b = static_cast<int>(rng.int_in(0, m - 1));
      if (a == b) continue;
      RatMat move = RatMat::Identity(m, m);
      const RatMat& g = d.bundle.fiber.metric;
      if (g(a, a) == g(b, b)) {
        move(a, a) = rat(3, 5);
        move(b, b) = rat(3, 5);
        move(a, b) = rat(-4, 5);
        move(b, a) = rat(4, 5);
      } else {
        move(a, a) = rat(5, 4);
        move(b, b) = rat(5, 4);
        move(a, b) = rat(3, 4);
        move(b, a) = rat(3, 4);
      }
      k = k * move;
    }
    return to_poly(k);
  }
  // non-abelian: exp(ad_x) for x with nilpotent ad; for double_aff1 the
  // span {e2, f1, f2} works.  exp of a polynomial-coefficient element stays
  // polynomial because ad_x^3 = 0.
  PolyVec x = poly_zero_vec(m);
  x(1) = rng.poly(d.chart().dim(), deg, 2);
  x(2) = rng.poly(d.chart().dim(), deg, 2);
  x(3) = rng.poly(d.chart().dim(), deg, 2);
  PolyMat adx = alg.ad<Scalar>(x);
  PolyMat k = poly_identity(m) + adx + adx * adx * Scalar(rat(1, 2));
  PolyMat check = adx * adx * adx;
  if (!mat_is_zero<Scalar>(check))
    throw PreconditionError("random_fiber_automorphism: ad is not nilpotent of order 3");
  return k;
}

}  // namespace

IsoData random_iso(Rng& rng, const CourantData& d, int deg) {
  IsoData iso;
  iso.chart = d.chart();
  iso.fiber_dim = d.fiber_dim();
  iso.K = random_fiber_automorphism(rng, d, deg);
  iso.Phi = rng.poly_mat(d.fiber_dim(), d.chart().dim(), d.chart().dim(), deg, 2);
  iso.beta = rng.two_form(d.chart(), deg, 2);
  if (!check_iso(d, iso).pass())
    throw PreconditionError("random_iso: generated data failed validation");
  return iso;
}

NondegSeed canonical_seed(const CourantData& d) {
  const int n = d.chart().dim(), m = d.fiber_dim();
  PolyMat w = standard_symplectic_map(n);
  auto winv = poly_inverse(w);
  NondegSeed s{d.chart(), m, poly_zero_mat(n, n), rot_pairs(m), PolyMat(-*winv),
               poly_zero_mat(m, n)};
  return s;
}

GeneratedInstance random_integrable_instance(Rng& rng, const CourantData& carrier) {
  GeneratedInstance inst;
  NondegSeed s = canonical_seed(carrier);
  GacsComponents c = nondeg_complete(carrier, s);
  IsoData tw = random_iso(rng, carrier, 1);
  inst.data = transform_data(carrier, invert_iso(tw));
  inst.comps = transform_gacs(carrier, c, tw);
  inst.integrable = true;
  inst.name = "twisted-canonical";
  return inst;
}

GeneratedInstance broken_nonclosed_instance(Rng& rng, const CourantData& carrier) {
  const Chart& chart = carrier.chart();
  if (chart.dim() < 4)
    throw PreconditionError("broken_nonclosed_instance: needs chart dimension >= 4");
  GeneratedInstance inst;
  inst.data = carrier;
  PolyMat w;
  while (true) {
    PolyMat u = rng.poly_unipotent(chart.dim(), chart.dim(), 1, 2);
    w = u.transpose() * standard_symplectic_map(chart.dim()) * u;
    if (!exterior_d(map_to_two_form(chart, w)).is_zero()) break;
  }
  inst.comps = canonical_symplectic(carrier, w, rot_pairs(carrier.fiber_dim()));
  inst.integrable = false;
  inst.name = "nonclosed-b";
  return inst;
}

GeneratedInstance broken_nonparallel_instance(Rng& rng, const Chart& chart) {
  GeneratedInstance inst;
  CourantData d = CourantData::untwisted(chart, abelian_fiber(4, false));
  // flat connection d + df S with S in so(4) not commuting with A; resample
  // until f has a genuinely nonzero differential
  PolyMat s = poly_zero_mat(4, 4);
  s(0, 2) = Scalar(1);
  s(2, 0) = Scalar(-1);
  Scalar f;
  while (true) {
    f = rng.poly(chart.dim(), 2, 2);
    if (!vec_is_zero<Scalar>(d_scalar(chart, f))) break;
  }
  for (int i = 0; i < chart.dim(); ++i)
    d.bundle.omega[static_cast<size_t>(i)] = s * f.derivative(i);
  inst.data = d;
  inst.comps =
      canonical_symplectic(d, standard_symplectic_map(chart.dim()), rot_pairs(4));
  inst.integrable = false;
  inst.name = "nonparallel-a";
  return inst;
}

ConstructedNu constructed_nu_example() {
  Chart c4 = Chart::standard(4);
  QuadLieAlgebra fib = abelian_fiber(4, true);
  CourantData d = CourantData::untwisted(c4, fib);

  NondegSeed s;
  s.chart = c4;
  s.fiber_dim = 4;
  s.J = poly_zero_mat(4, 4);
  s.Atilde = rot_pairs(4);
  s.B = -standard_symplectic_map(4);
  Scalar x1 = Scalar::variable(4, 0), x2 = Scalar::variable(4, 1);
  PolyMat nu = poly_zero_mat(4, 4);
  nu(0, 0) = x1;
  nu(2, 0) = x1;
  nu(1, 1) = x2 * x2;
  nu(3, 1) = x2 * x2;
  nu(0, 2) = x2;
  nu(2, 2) = x2;
  s.nu = nu;

  FiberForm phi = seed_phi(d, s);
  d.curv = -exterior_d_total(phi);
  KForm bj = seed_bj(s);
  d.torsion3 = -(exterior_d_total(bj) + pairing_wedge(d.curv, phi, fib.metric));
  return {d, s};
}

}  // namespace ck
