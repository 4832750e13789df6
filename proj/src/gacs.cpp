#include "courantkit/gacs.hpp"

namespace ck {

GacsComponents GacsComponents::zero(const Chart& c, int m) {
  const int n = c.dim();
  return {c, m,          poly_zero_mat(n, n), poly_zero_mat(m, m), poly_zero_mat(n, n),
          poly_zero_mat(n, n), poly_zero_mat(m, n), poly_zero_mat(m, n)};
}

PolyMat adjoint_fiber_endo(const RatMat& g, const PolyMat& a) {
  // exact inverse of the constant metric
  auto sol = [&](const RatVec& b) {
    auto x = solve_linear<Rational>(g, b);
    if (!x) throw PreconditionError("adjoint: degenerate fiber metric");
    return *x;
  };
  RatMat ginv(g.rows(), g.cols());
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    ginv.col(c) = sol(RatVec(RatVec::Unit(g.rows(), c)));
  return to_poly(ginv) * a.transpose() * to_poly(g);
}

PolyMat adjoint_mu(const RatMat& g, const PolyMat& mu) {
  return mu.transpose() * to_poly(g) * Scalar(2);
}

PolyMat adjoint_nu(const RatMat& g, const PolyMat& nu) {
  return nu.transpose() * to_poly(g) * Scalar(2);
}

PolyMat block_matrix(const CourantData& d, const GacsComponents& c) {
  const int n = c.chart.dim(), m = c.fiber_dim;
  const RatMat& g = d.bundle.fiber.metric;
  PolyMat js = c.J.transpose();
  PolyMat mus = adjoint_mu(g, c.mu);
  PolyMat nus = adjoint_nu(g, c.nu);
  PolyMat out = poly_zero_mat(2 * n + m, 2 * n + m);
  out.block(0, 0, n, n) = c.J;
  out.block(0, n, n, n) = c.B;
  out.block(0, 2 * n, n, m) = -nus;
  out.block(n, 0, n, n) = c.C;
  out.block(n, n, n, n) = -js;
  out.block(n, 2 * n, n, m) = -mus;
  out.block(2 * n, 0, m, n) = c.mu;
  out.block(2 * n, n, m, n) = c.nu;
  out.block(2 * n, 2 * n, m, m) = c.A;
  return out;
}

PolyMat scalar_product_gram(const CourantData& d) {
  const int n = d.chart().dim(), m = d.fiber_dim();
  PolyMat q = poly_zero_mat(2 * n + m, 2 * n + m);
  Scalar half = Scalar(rat(1, 2));
  for (int i = 0; i < n; ++i) {
    q(i, n + i) = half;
    q(n + i, i) = half;
  }
  q.block(2 * n, 2 * n, m, m) = to_poly(d.bundle.fiber.metric);
  return q;
}

Section apply_gacs(const CourantData& d, const GacsComponents& c, const Section& u) {
  const RatMat& g = d.bundle.fiber.metric;
  PolyMat js = c.J.transpose();
  PolyMat mus = adjoint_mu(g, c.mu);
  PolyMat nus = adjoint_nu(g, c.nu);
  Section out = Section::zero(u.chart, c.fiber_dim);
  out.x = c.J * u.x + c.B * u.xi - nus * u.r;
  out.xi = c.C * u.x - js * u.xi - mus * u.r;
  out.r = c.mu * u.x + c.nu * u.xi + c.A * u.r;
  return out;
}

AlgebraicReport check_algebraic(const CourantData& d, const GacsComponents& c) {
  AlgebraicReport rep;
  const int n = c.chart.dim(), m = c.fiber_dim;
  const RatMat& g = d.bundle.fiber.metric;
  const Chart& chart = c.chart;
  PolyMat js = c.J.transpose();
  PolyMat as = adjoint_fiber_endo(g, c.A);
  PolyMat mus = adjoint_mu(g, c.mu);
  PolyMat nus = adjoint_nu(g, c.nu);
  PolyMat id_n = poly_identity(n), id_m = poly_identity(m);

  auto note = [&](const PolyMat& r) {
    if (!rep.first_failure.empty()) return;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index j = 0; j < r.cols(); ++j)
        if (!r(i, j).is_zero()) {
          rep.first_failure = residual_summary(r(i, j), chart);
          return;
        }
  };
  auto check = [&](PolyMat r) {
    bool z = mat_is_zero<Scalar>(r);
    if (!z) note(r);
    return z;
  };

  rep.skew_b = check(c.B.transpose() + c.B);
  rep.skew_c = check(c.C.transpose() + c.C);
  rep.skew_a = check(as + c.A);
  rep.quadratic[0] = check(c.J * c.J + c.B * c.C - nus * c.mu + id_n);
  rep.quadratic[1] = check(-c.mu * nus - c.nu * mus + c.A * c.A + id_m);
  rep.quadratic[2] = check(c.J * c.B - c.B * js - nus * c.nu);
  rep.quadratic[3] = check(c.mu * c.B - c.nu * js + c.A * c.nu);
  rep.quadratic[4] = check(c.C * c.J - js * c.C - mus * c.mu);
  rep.quadratic[5] = check(c.mu * c.J + c.nu * c.C + c.A * c.mu);

  PolyMat bm = block_matrix(d, c);
  PolyMat q = scalar_product_gram(d);
  rep.block_square = mat_is_zero<Scalar>(bm * bm + poly_identity(2 * n + m));
  rep.block_skew = mat_is_zero<Scalar>(bm.transpose() * q + q * bm);
  return rep;
}

Section nijenhuis(const CourantData& d, const GacsComponents& c, const Section& u,
                  const Section& v) {
  Section ju = apply_gacs(d, c, u), jv = apply_gacs(d, c, v);
  Section mixed = dorfman(d, ju, v) + dorfman(d, u, jv);
  return dorfman(d, ju, jv) - dorfman(d, u, v) - apply_gacs(d, c, mixed);
}

FrameOracleReport nijenhuis_frame_oracle(const CourantData& d, const GacsComponents& c) {
  FrameOracleReport rep;
  auto frames = frame_sections(d);
  for (size_t a = 0; a < frames.size() && rep.integrable; ++a)
    for (size_t b = a + 1; b < frames.size() && rep.integrable; ++b) {
      Section n = nijenhuis(d, c, frames[a], frames[b]);
      if (!n.is_zero()) {
        rep.integrable = false;
        rep.failing_pair_a = static_cast<int>(a);
        rep.failing_pair_b = static_cast<int>(b);
        for (Eigen::Index i = 0; i < n.x.size() && rep.first_failure.empty(); ++i)
          if (!n.x(i).is_zero()) rep.first_failure = residual_summary(n.x(i), d.chart());
        for (Eigen::Index i = 0; i < n.xi.size() && rep.first_failure.empty(); ++i)
          if (!n.xi(i).is_zero()) rep.first_failure = residual_summary(n.xi(i), d.chart());
        for (Eigen::Index i = 0; i < n.r.size() && rep.first_failure.empty(); ++i)
          if (!n.r(i).is_zero()) rep.first_failure = residual_summary(n.r(i), d.chart());
      }
    }
  return rep;
}

Trivector poisson_residual(const CourantData& d, const GacsComponents& c) {
  require_same_chart(d.chart(), c.chart, "poisson_residual");
  const Chart& chart = c.chart;
  const int n = chart.dim();
  Trivector out = Trivector::zero(chart);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PolyVec xi = poly_zero_vec(n), eta = poly_zero_vec(n);
      xi(i) = Scalar(1);
      eta(j) = Scalar(1);
      PolyVec bxi = c.B * xi, beta = c.B * eta;
      PolyVec val = lie_vec(chart, bxi, beta) -
                    c.B * (lie_cov(chart, bxi, eta) - lie_cov(chart, beta, xi)) +
                    c.B * d_scalar(chart, bivector_pair(c.B, xi, eta));
      // full antisymmetry makes evaluations with k <= j redundant; each
      // increasing triple is stored exactly once
      for (int k = j + 1; k < n; ++k)
        if (!val(k).is_zero()) out.add({i, j, k}, val(k));
    }
  return out;
}

SeedReport check_seed(const CourantData& d, const NondegSeed& s) {
  SeedReport rep;
  const int m = s.fiber_dim;
  const RatMat& g = d.bundle.fiber.metric;
  rep.atilde_square = mat_is_zero<Scalar>(s.Atilde * s.Atilde + poly_identity(m));
  rep.atilde_skew = mat_is_zero<Scalar>(adjoint_fiber_endo(g, s.Atilde) + s.Atilde);
  rep.b_skew = mat_is_zero<Scalar>(s.B.transpose() + s.B);
  PolyMat nus = adjoint_nu(g, s.nu);
  rep.jb_relation = mat_is_zero<Scalar>(s.J * s.B - s.B * s.J.transpose() - nus * s.nu);
  Scalar det = poly_det(s.B);
  rep.b_invertible = det.is_constant() && !det.is_zero();
  return rep;
}

PolyMat seed_b_inverse(const NondegSeed& s) {
  auto inv = poly_inverse(s.B);
  if (!inv)
    throw PreconditionError(
        "nondeg: B has non-constant determinant; rescale the input so that B is "
        "invertible over the polynomial ring");
  return *inv;
}

GacsComponents nondeg_complete(const CourantData& d, const NondegSeed& s) {
  SeedReport sr = check_seed(d, s);
  if (!sr.pass()) throw PreconditionError("nondeg_complete: seed invariants violated");
  const RatMat& g = d.bundle.fiber.metric;
  PolyMat binv = seed_b_inverse(s);
  PolyMat nus = adjoint_nu(g, s.nu);
  const int n = s.chart.dim();
  GacsComponents c = GacsComponents::zero(s.chart, s.fiber_dim);
  c.J = s.J;
  c.B = s.B;
  c.nu = s.nu;
  c.A = s.Atilde - s.nu * binv * nus;
  c.C = -(binv * (nus * s.Atilde * s.nu * binv + poly_identity(n))) -
        s.J.transpose() * binv * s.J;
  c.mu = s.nu * binv * s.J - s.Atilde * s.nu * binv;
  return c;
}

NondegSeed seed_of_components(const CourantData& d, const GacsComponents& c) {
  NondegSeed s{c.chart, c.fiber_dim, c.J, {}, c.B, c.nu};
  auto inv = poly_inverse(c.B);
  if (!inv) throw PreconditionError("seed_of_components: B not invertible over the ring");
  s.Atilde = c.A + c.nu * (*inv) * adjoint_nu(d.bundle.fiber.metric, c.nu);
  return s;
}

FiberForm seed_phi(const CourantData& d, const NondegSeed& s) {
  require_same_chart(d.chart(), s.chart, "seed_phi");
  PolyMat phi = s.nu * seed_b_inverse(s);
  FiberForm out = FiberForm::zero(s.chart, 1, s.fiber_dim);
  for (int i = 0; i < s.chart.dim(); ++i) out.set({i}, PolyVec(phi.col(i)));
  return out;
}

KForm seed_bj(const NondegSeed& s) {
  PolyMat binv = seed_b_inverse(s);
  // B_J(X,Y) = -1/2 (B^-1(JX, Y) + B^-1(X, JY)); as maps:
  // -1/2 (binv J + J^T binv)
  PolyMat bj = (binv * s.J + s.J.transpose() * binv) * Scalar(rat(-1, 2));
  return map_to_two_form(s.chart, bj);
}

NondegIntegrabilityReport nondeg_integrability(const CourantData& d, const NondegSeed& s) {
  NondegIntegrabilityReport rep;
  const Chart& chart = s.chart;
  const int n = chart.dim(), m = s.fiber_dim;
  SeedReport sr = check_seed(d, s);
  if (!sr.pass()) throw PreconditionError("nondeg_integrability: seed invariants violated");
  PolyMat binv = seed_b_inverse(s);
  PolyMat phi = s.nu * binv;  // G-valued one-form, columns phi_i
  auto& alg = d.bundle.fiber.algebra;

  auto note = [&](const Scalar& v) {
    if (rep.first_failure.empty()) rep.first_failure = residual_summary(v, chart);
  };
  auto note_mat = [&](const PolyMat& r) {
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index j = 0; j < r.cols(); ++j)
        if (!r(i, j).is_zero()) {
          note(r(i, j));
          return;
        }
  };

  // (1) d(B^-1) = 0
  KForm omega_inv = map_to_two_form(chart, binv);
  KForm dw = exterior_d_total(omega_inv);
  rep.symplectic = dw.is_zero();
  if (!rep.symplectic) note(dw.coeffs.begin()->second);

  // (2) algebraic Nijenhuis of Atilde on fiber basis pairs
  rep.fiber_integrable = true;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      PolyVec ea = poly_zero_vec(m), eb = poly_zero_vec(m);
      ea(a) = Scalar(1);
      eb(b) = Scalar(1);
      PolyVec aea = s.Atilde * ea, aeb = s.Atilde * eb;
      PolyVec nres = alg.bracket<Scalar>(aea, aeb) - alg.bracket<Scalar>(ea, eb) -
                     s.Atilde * (alg.bracket<Scalar>(aea, eb) + alg.bracket<Scalar>(ea, aeb));
      if (!is_zero(nres)) {
        rep.fiber_integrable = false;
        for (Eigen::Index t = 0; t < nres.size(); ++t)
          if (!nres(t).is_zero()) {
            note(nres(t));
            break;
          }
      }
    }

  // (3) (nabla_i + ad_{phi_i}) Atilde = 0 for all i
  rep.parallel = true;
  for (int i = 0; i < n; ++i) {
    PolyMat da(m, m);
    for (int r = 0; r < m; ++r)
      for (int c2 = 0; c2 < m; ++c2) da(r, c2) = s.Atilde(r, c2).derivative(i);
    PolyMat conn = d.bundle.omega[static_cast<size_t>(i)] + alg.ad<Scalar>(PolyVec(phi.col(i)));
    PolyMat res = da + conn * s.Atilde - s.Atilde * conn;
    if (!mat_is_zero<Scalar>(res)) {
      rep.parallel = false;
      note_mat(res);
    }
  }

  // (4) d^nabla(phi) + [phi, phi] + R = 0
  FiberForm phif = seed_phi(d, s);
  FiberForm resid4 = d_nabla(d, phif);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      resid4.add({i, j}, alg.bracket<Scalar>(PolyVec(phi.col(i)), PolyVec(phi.col(j))));
  resid4 += d.curv;
  rep.curvature_eq = resid4.is_zero();
  if (!rep.curvature_eq)
    for (auto& [t, v] : resid4.coeffs) {
      for (Eigen::Index a = 0; a < v.size(); ++a)
        if (!v(a).is_zero()) {
          note(v(a));
          break;
        }
      break;
    }

  // (5) dB_J + H + <(R - 1/3 [phi,phi]) ^ phi> = 0
  FiberForm comb = d.curv;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PolyVec br = alg.bracket<Scalar>(PolyVec(phi.col(i)), PolyVec(phi.col(j)));
      comb.add({i, j}, PolyVec(br * Scalar(rat(-1, 3))));
    }
  KForm resid5 = exterior_d_total(seed_bj(s)) + d.torsion3 +
                 pairing_wedge(comb, phif, d.bundle.fiber.metric);
  rep.flux_eq = resid5.is_zero();
  if (!rep.flux_eq) note(resid5.coeffs.begin()->second);
  return rep;
}

FlatCurvatureReport flat_curvature_check(const CourantData& d, const NondegSeed& s) {
  FlatCurvatureReport rep;
  const Chart& chart = s.chart;
  const int n = chart.dim(), m = s.fiber_dim;
  PolyMat binv = seed_b_inverse(s);
  PolyMat phi = s.nu * binv;
  auto& alg = d.bundle.fiber.algebra;

  // modified connection coefficients
  std::vector<PolyMat> omt;
  for (int i = 0; i < n; ++i)
    omt.push_back(d.bundle.omega[static_cast<size_t>(i)] + alg.ad<Scalar>(PolyVec(phi.col(i))));

  // residual of the curvature equation, including R
  FiberForm phif = seed_phi(d, s);
  FiberForm resid4 = d_nabla(d, phif);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      resid4.add({i, j}, alg.bracket<Scalar>(PolyVec(phi.col(i)), PolyVec(phi.col(j))));
  resid4 += d.curv;

  rep.flat = true;
  rep.matches_ad_of_residual = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PolyMat di(m, m), dj(m, m);
      for (int r = 0; r < m; ++r)
        for (int c2 = 0; c2 < m; ++c2) {
          dj(r, c2) = omt[static_cast<size_t>(j)](r, c2).derivative(i);
          di(r, c2) = omt[static_cast<size_t>(i)](r, c2).derivative(j);
        }
      PolyMat curv = dj - di + omt[static_cast<size_t>(i)] * omt[static_cast<size_t>(j)] -
                     omt[static_cast<size_t>(j)] * omt[static_cast<size_t>(i)];
      if (!mat_is_zero<Scalar>(curv)) rep.flat = false;
      PolyMat expect = alg.ad<Scalar>(resid4.coeff({i, j}));
      if (!mat_is_zero<Scalar>(PolyMat(curv - expect))) rep.matches_ad_of_residual = false;
    }
  return rep;
}

}  // namespace ck
