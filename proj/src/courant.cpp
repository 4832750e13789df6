#include "courantkit/courant.hpp"

namespace ck {

LieAlgebraBundle LieAlgebraBundle::flat(const Chart& c, QuadLieAlgebra f) {
  LieAlgebraBundle b{c, std::move(f), {}};
  b.fiber.validate();
  b.omega.assign(static_cast<size_t>(c.dim()), poly_zero_mat(b.fiber_dim(), b.fiber_dim()));
  return b;
}

LieAlgebraBundle::Invariants LieAlgebraBundle::check_invariants() const {
  Invariants inv;
  const int m = fiber_dim();
  PolyMat g = to_poly(fiber.metric);
  for (auto& om : omega) {
    // metric: g om + om^T g = 0
    if (!mat_is_zero<Scalar>(g * om + om.transpose() * g)) inv.metric = false;
    // derivation: om [e_a, e_b] = [om e_a, e_b] + [e_a, om e_b]
    for (int a = 0; a < m && inv.derivation; ++a)
      for (int b = a + 1; b < m && inv.derivation; ++b) {
        PolyVec ea = poly_zero_vec(m), eb = poly_zero_vec(m);
        ea(a) = Scalar(1);
        eb(b) = Scalar(1);
        PolyVec lhs = om * to_poly(fiber.algebra.bracket_basis(a, b));
        PolyVec rhs = fiber.algebra.bracket<Scalar>(PolyVec(om.col(a)), eb) +
                      fiber.algebra.bracket<Scalar>(ea, PolyVec(om.col(b)));
        if (!is_zero(PolyVec(lhs - rhs))) inv.derivation = false;
      }
  }
  return inv;
}

PolyMat LieAlgebraBundle::omega_of(const PolyVec& x) const {
  PolyMat acc = poly_zero_mat(fiber_dim(), fiber_dim());
  for (int i = 0; i < chart.dim(); ++i) {
    if (x(i).is_zero()) continue;
    acc += omega[static_cast<size_t>(i)] * x(i);
  }
  return acc;
}

CourantData CourantData::untwisted(const Chart& c, QuadLieAlgebra f) {
  int m = f.dim();
  CourantData d{LieAlgebraBundle::flat(c, std::move(f)), FiberForm::zero(c, 2, m),
                KForm::zero(c, 3)};
  return d;
}

Section Section::zero(const Chart& c, int fiber_dim) {
  return {c, poly_zero_vec(c.dim()), poly_zero_vec(c.dim()), poly_zero_vec(fiber_dim)};
}

Section Section::tangent(const Chart& c, int fiber_dim, int i) {
  Section s = zero(c, fiber_dim);
  s.x(i) = Scalar::constant(c.dim(), Rational(1));
  return s;
}

Section Section::cotangent(const Chart& c, int fiber_dim, int i) {
  Section s = zero(c, fiber_dim);
  s.xi(i) = Scalar::constant(c.dim(), Rational(1));
  return s;
}

Section Section::fiber(const Chart& c, int fiber_dim, int a) {
  Section s = zero(c, fiber_dim);
  s.r(a) = Scalar::constant(c.dim(), Rational(1));
  return s;
}

Section& Section::operator+=(const Section& o) {
  require_same_chart(chart, o.chart, "section sum");
  x += o.x;
  xi += o.xi;
  r += o.r;
  return *this;
}

Section& Section::operator-=(const Section& o) {
  require_same_chart(chart, o.chart, "section sum");
  x -= o.x;
  xi -= o.xi;
  r -= o.r;
  return *this;
}

Section Section::operator-() const { return {chart, -x, -xi, -r}; }

Section operator*(const Scalar& f, Section s) {
  s.x *= f;
  s.xi *= f;
  s.r *= f;
  return s;
}

std::vector<Section> frame_sections(const CourantData& d) {
  std::vector<Section> out;
  const Chart& c = d.chart();
  const int n = c.dim(), m = d.fiber_dim();
  for (int i = 0; i < n; ++i) out.push_back(Section::tangent(c, m, i));
  for (int i = 0; i < n; ++i) out.push_back(Section::cotangent(c, m, i));
  for (int a = 0; a < m; ++a) out.push_back(Section::fiber(c, m, a));
  return out;
}

PolyVec nabla_i(const CourantData& d, int i, const PolyVec& s) {
  PolyVec out(s.size());
  for (Eigen::Index a = 0; a < s.size(); ++a) out(a) = s(a).derivative(i);
  out += d.bundle.omega[static_cast<size_t>(i)] * s;
  return out;
}

PolyVec nabla(const CourantData& d, const PolyVec& x, const PolyVec& s) {
  PolyVec acc = poly_zero_vec(s.size());
  for (int i = 0; i < d.chart().dim(); ++i) {
    if (x(i).is_zero()) continue;
    acc += nabla_i(d, i, s) * x(i);
  }
  return acc;
}

PolyMat nabla_endo(const CourantData& d, const PolyVec& x, const PolyMat& a) {
  const int m = d.fiber_dim();
  PolyMat acc = poly_zero_mat(m, m);
  for (int i = 0; i < d.chart().dim(); ++i) {
    if (x(i).is_zero()) continue;
    PolyMat da(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) da(r, c) = a(r, c).derivative(i);
    const PolyMat& om = d.bundle.omega[static_cast<size_t>(i)];
    acc += (da + om * a - a * om) * x(i);
  }
  return acc;
}

PolyVec curvature_of(const FiberForm& r, const PolyVec& x, const PolyVec& y) {
  const Chart& c = r.chart;
  VectorField vx{c, x}, vy{c, y};
  return eval_form(r, {vx, vy});
}

PolyVec pair_iR(const CourantData& d, const PolyVec& x, const PolyVec& s) {
  const int n = d.chart().dim();
  PolyMat g = to_poly(d.bundle.fiber.metric);
  PolyVec gs = g * s;
  PolyVec out = poly_zero_vec(n);
  for (int z = 0; z < n; ++z) {
    PolyVec ez = poly_zero_vec(n);
    ez(z) = Scalar(1);
    PolyVec rxz = curvature_of(d.curv, x, ez);
    out(z) = apply_covector(gs, rxz);
  }
  return out;
}

PolyVec pair_nabla(const CourantData& d, const PolyVec& r, const PolyVec& s) {
  const int n = d.chart().dim();
  PolyMat g = to_poly(d.bundle.fiber.metric);
  PolyVec gs = g * s;
  PolyVec out = poly_zero_vec(n);
  for (int z = 0; z < n; ++z) out(z) = apply_covector(gs, nabla_i(d, z, r));
  return out;
}

Scalar fiber_pair(const CourantData& d, const PolyVec& r, const PolyVec& s) {
  PolyMat g = to_poly(d.bundle.fiber.metric);
  return apply_covector(PolyVec(g * s), r);
}

FiberForm d_nabla(const CourantData& d, const FiberForm& w) {
  FiberForm out = exterior_d_total(w);
  // + omega wedge w
  for (int i = 0; i < d.chart().dim(); ++i) {
    const PolyMat& om = d.bundle.omega[static_cast<size_t>(i)];
    if (mat_is_zero<Scalar>(om)) continue;
    for (auto& [t, v] : w.coeffs) {
      IdxTuple ext;
      ext.reserve(t.size() + 1);
      ext.push_back(i);
      ext.insert(ext.end(), t.begin(), t.end());
      out.add(std::move(ext), PolyVec(om * v));
    }
  }
  return out;
}

DefiningDataReport check_defining_data(const CourantData& d) {
  DefiningDataReport rep;
  const Chart& c = d.chart();
  const int n = c.dim(), m = d.fiber_dim();
  auto note = [&](const Scalar& s) {
    if (rep.first_failure.empty()) rep.first_failure = residual_summary(s, c);
  };

  // R^nabla(d_i, d_j) = ad_{R(d_i,d_j)}
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const PolyMat& oi = d.bundle.omega[static_cast<size_t>(i)];
      const PolyMat& oj = d.bundle.omega[static_cast<size_t>(j)];
      PolyMat doj(m, m), doi(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          doj(a, b) = oj(a, b).derivative(i);
          doi(a, b) = oi(a, b).derivative(j);
        }
      PolyMat curv = doj - doi + oi * oj - oj * oi;
      PolyMat adr = d.bundle.fiber.algebra.ad<Scalar>(d.curv.coeff({i, j}));
      PolyMat res = curv - adr;
      if (!mat_is_zero<Scalar>(res)) {
        rep.curvature_matches_bracket = false;
        for (int a = 0; a < m && rep.first_failure.empty(); ++a)
          for (int b = 0; b < m && rep.first_failure.empty(); ++b)
            if (!res(a, b).is_zero()) note(res(a, b));
      }
    }

  // d^nabla R = 0
  FiberForm dn = d_nabla(d, d.curv);
  if (!dn.is_zero()) {
    rep.bianchi = false;
    for (auto& [t, v] : dn.coeffs)
      for (Eigen::Index a = 0; a < v.size(); ++a)
        if (!v(a).is_zero()) {
          note(v(a));
          break;
        }
  }

  // dH = <R ^ R>
  KForm lhs = exterior_d_total(d.torsion3);
  KForm rhs = pairing_wedge(d.curv, d.curv, d.bundle.fiber.metric);
  KForm res = lhs - rhs;
  if (!res.is_zero()) {
    rep.h_flux = false;
    note(res.coeffs.begin()->second);
  }
  return rep;
}

Scalar scalar_product(const CourantData& d, const Section& u, const Section& v) {
  require_same_chart(u.chart, v.chart, "scalar_product");
  Scalar half = Scalar::constant(u.chart.dim(), rat(1, 2));
  return half * (apply_covector(v.xi, u.x) + apply_covector(u.xi, v.x)) +
         fiber_pair(d, u.r, v.r);
}

Section dorfman(const CourantData& d, const Section& u, const Section& v) {
  require_same_chart(u.chart, v.chart, "dorfman");
  const Chart& c = d.chart();
  Section out = Section::zero(c, d.fiber_dim());

  // tangent: [X, Y]
  out.x = lie_vec(c, u.x, v.x);

  // cotangent: L_X eta - i_Y d xi + i_Y i_X H - 2<i_X R, s> + 2<i_Y R, r> + 2<nabla r, s>
  VectorField vx{c, u.x}, vy{c, v.x};
  PolyVec t = lie_cov(c, u.x, v.xi);
  KForm dxi = exterior_d_total(oneform(c, u.xi));
  t -= covector_of(interior(vy, dxi));
  t += covector_of(interior(vy, interior(vx, d.torsion3)));
  Scalar two = Scalar::constant(c.dim(), Rational(2));
  t -= two * pair_iR(d, u.x, v.r);
  t += two * pair_iR(d, v.x, u.r);
  t += two * pair_nabla(d, u.r, v.r);
  out.xi = t;

  // fiber: nabla_X s - nabla_Y r + R(X, Y) + [r, s]_G
  out.r = nabla(d, u.x, v.r) - nabla(d, v.x, u.r) + curvature_of(d.curv, u.x, v.x) +
          d.bundle.fiber.algebra.bracket<Scalar>(u.r, v.r);
  return out;
}

Section jacobi_residual(const CourantData& d, const Section& u, const Section& v,
                        const Section& w) {
  return dorfman(d, u, dorfman(d, v, w)) - dorfman(d, dorfman(d, u, v), w) -
         dorfman(d, v, dorfman(d, u, w));
}

VectorField anchor(const Section& u) { return {u.chart, u.x}; }

}  // namespace ck
