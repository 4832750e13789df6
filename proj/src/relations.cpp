#include "courantkit/gacs.hpp"

#include <future>

namespace ck {

namespace {

// Shared evaluation context for the component relations.  Arguments are
// plain columns: tangent vectors x/y, covectors xi/eta, fiber sections r/rt.
struct RelCtx {
  const CourantData& d;
  const GacsComponents& c;
  const Chart& chart;
  int n, m;
  PolyMat js, mus, nus;
  KForm cform, dc;
  Scalar two;

  RelCtx(const CourantData& d_, const GacsComponents& c_)
      : d(d_), c(c_), chart(c_.chart), n(chart.dim()), m(c_.fiber_dim) {
    js = c.J.transpose();
    mus = adjoint_mu(d.bundle.fiber.metric, c.mu);
    nus = adjoint_nu(d.bundle.fiber.metric, c.nu);
    cform = map_to_two_form(chart, c.C);
    dc = exterior_d_total(cform);
    two = Scalar(2);
  }

  VectorField vf(const PolyVec& x) const { return {chart, x}; }

  // i_a i_b H  (contraction of b into the first slot, then a)
  PolyVec hf(const PolyVec& a, const PolyVec& b) const {
    return covector_of(interior(vf(a), interior(vf(b), d.torsion3)));
  }
  // i_a i_b (dC)
  PolyVec dcf(const PolyVec& a, const PolyVec& b) const {
    return covector_of(interior(vf(a), interior(vf(b), dc)));
  }
  PolyVec lv(const PolyVec& a, const PolyVec& b) const { return lie_vec(chart, a, b); }
  PolyVec lc(const PolyVec& a, const PolyVec& xi) const { return lie_cov(chart, a, xi); }
  PolyVec Rf(const PolyVec& a, const PolyVec& b) const { return curvature_of(d.curv, a, b); }
  PolyVec iR(const PolyVec& a, const PolyVec& s) const { return pair_iR(d, a, s); }
  PolyVec nab(const PolyVec& a, const PolyVec& s) const { return nabla(d, a, s); }
  PolyVec pairNab(const PolyVec& r, const PolyVec& s) const { return pair_nabla(d, r, s); }
  PolyVec br(const PolyVec& r, const PolyVec& s) const {
    return d.bundle.fiber.algebra.bracket<Scalar>(r, s);
  }
  // one-form Z -> <(nabla_Z A) r, rt>
  PolyVec pairNabA(const PolyVec& r, const PolyVec& rt) const {
    PolyVec out = poly_zero_vec(n);
    PolyMat g = to_poly(d.bundle.fiber.metric);
    PolyVec grt = g * rt;
    for (int z = 0; z < n; ++z) {
      PolyVec ez = poly_zero_vec(n);
      ez(z) = Scalar(1);
      out(z) = apply_covector(grt, PolyVec(nabla_endo(d, ez, c.A) * r));
    }
    return out;
  }
  PolyVec nabEndoA(const PolyVec& a, const PolyVec& r) const {
    return nabla_endo(d, a, c.A) * r;
  }
  Scalar biv(const PolyVec& xi, const PolyVec& eta) const {
    return bivector_pair(c.B, xi, eta);
  }
  Scalar cpair(const PolyVec& x, const PolyVec& y) const {
    return apply_covector(PolyVec(c.C * x), y);
  }
  PolyVec dscalar(const Scalar& f) const { return d_scalar(chart, f); }
  // (L_a T) applied, for the tangent/cotangent endomorphism blocks
  PolyVec lieEndo(const PolyVec& a, const PolyMat& t, Space src, Space dst,
                  const PolyVec& arg) const {
    EndoField e = EndoField::make(chart, src, dst, t);
    return lie_derivative(vf(a), e).mat * arg;
  }
};

PolyVec rel1(const RelCtx& k, const PolyVec& x, const PolyVec& y) {
  PolyVec jx = k.c.J * x, jy = k.c.J * y;
  PolyVec inner = k.hf(x, jy) + k.hf(jx, y) + k.dcf(x, y) - k.c.C * k.lv(x, y);
  return k.lv(jx, jy) - k.lv(x, y) - k.c.J * k.lv(x, jy) + k.c.J * k.lv(y, jx) +
         k.c.B * inner + k.two * (k.c.B * (k.iR(x, PolyVec(k.c.mu * y)) - k.iR(y, PolyVec(k.c.mu * x)))) +
         k.nus * (k.Rf(x, jy) - k.Rf(y, jx) + k.nab(x, PolyVec(k.c.mu * y)) -
                  k.nab(y, PolyVec(k.c.mu * x)));
}

PolyVec rel2(const RelCtx& k, const PolyVec& x, const PolyVec& y) {
  PolyVec jx = k.c.J * x, jy = k.c.J * y;
  PolyVec mx = k.c.mu * x, my = k.c.mu * y;
  PolyVec t = k.hf(jy, jx) - k.hf(y, x) + k.js * (k.hf(jy, x) - k.hf(jx, y));
  t += k.two * k.iR(jy, mx) - k.two * k.iR(jx, my) -
       k.two * (k.js * (k.iR(x, my) - k.iR(y, mx)));
  t += k.lieEndo(jx, k.c.C, Space::Tangent, Space::Cotangent, y) -
       k.lieEndo(jy, k.c.C, Space::Tangent, Space::Cotangent, x) +
       k.dscalar(k.cpair(x, jy)) + k.js * (k.dcf(y, x) + k.c.C * k.lv(x, y));
  t += k.two * k.pairNab(mx, my) +
       k.mus * (k.Rf(x, jy) + k.Rf(jx, y) + k.nab(x, my) - k.nab(y, mx));
  return t;
}

PolyVec rel3(const RelCtx& k, const PolyVec& x, const PolyVec& y) {
  PolyVec jx = k.c.J * x, jy = k.c.J * y;
  PolyVec mx = k.c.mu * x, my = k.c.mu * y;
  PolyVec inner = k.hf(x, jy) + k.hf(jx, y) + k.dcf(x, y) - k.c.C * k.lv(x, y);
  return k.Rf(jx, jy) - k.Rf(x, y) + k.nab(jx, my) - k.nab(jy, mx) + k.br(mx, my) -
         k.c.mu * (k.lv(x, jy) - k.lv(y, jx)) + k.c.nu * inner +
         k.two * (k.c.nu * (k.iR(x, my) - k.iR(y, mx))) -
         k.c.A * (k.Rf(x, jy) - k.Rf(y, jx) + k.nab(x, my) - k.nab(y, mx));
}

PolyVec rel4(const RelCtx& k, const PolyVec& xi, const PolyVec& eta) {
  PolyVec bxi = k.c.B * xi, beta = k.c.B * eta;
  return k.lv(bxi, beta) - k.c.B * (k.lc(bxi, eta) - k.lc(beta, xi)) +
         k.c.B * k.dscalar(k.biv(xi, eta));
}

PolyVec rel5(const RelCtx& k, const PolyVec& xi, const PolyVec& eta) {
  PolyVec bxi = k.c.B * xi, beta = k.c.B * eta;
  PolyVec nxi = k.c.nu * xi, neta = k.c.nu * eta;
  return k.lc(beta, PolyVec(k.js * xi)) - k.lc(bxi, PolyVec(k.js * eta)) +
         k.dscalar(k.biv(PolyVec(k.js * xi), eta)) +
         k.js * (k.lc(bxi, eta) - k.lc(beta, xi) - k.dscalar(k.biv(xi, eta))) -
         k.two * (k.iR(bxi, neta) - k.iR(beta, nxi)) + k.two * k.pairNab(nxi, neta) +
         k.hf(beta, bxi);
}

PolyVec rel6(const RelCtx& k, const PolyVec& xi, const PolyVec& eta) {
  PolyVec bxi = k.c.B * xi, beta = k.c.B * eta;
  PolyVec nxi = k.c.nu * xi, neta = k.c.nu * eta;
  return k.Rf(bxi, beta) + k.nab(bxi, neta) - k.nab(beta, nxi) + k.br(nxi, neta) -
         k.c.nu * (k.lc(bxi, eta) - k.lc(beta, xi) - k.dscalar(k.biv(xi, eta)));
}

PolyVec rel7(const RelCtx& k, const PolyVec& r, const PolyVec& rt) {
  PolyVec nr = k.nus * r, nrt = k.nus * rt;
  PolyVec ar = k.c.A * r, art = k.c.A * rt;
  return k.lv(nr, nrt) -
         k.two * (k.c.B * (k.iR(nr, rt) - k.iR(nrt, r) + k.pairNabA(r, rt))) +
         k.nus * (k.br(ar, rt) - k.br(art, r) - k.nab(nr, rt) + k.nab(nrt, r));
}

PolyVec rel8(const RelCtx& k, const PolyVec& r, const PolyVec& rt) {
  PolyVec nr = k.nus * r, nrt = k.nus * rt;
  PolyVec ar = k.c.A * r, art = k.c.A * rt;
  PolyVec mr = k.mus * r, mrt = k.mus * rt;
  PolyVec t = k.hf(nrt, nr) + k.lc(nr, mrt) - k.lc(nrt, mr) +
              k.dscalar(apply_covector(mr, nrt));
  t += k.two * (k.iR(nr, art) - k.iR(nrt, ar) + k.pairNab(ar, art) - k.pairNab(r, rt));
  t += k.two * (k.js * (k.iR(nr, rt) - k.iR(nrt, r) + k.pairNabA(r, rt)));
  t += k.mus * (k.br(ar, rt) + k.br(r, art) - k.nab(nr, rt) + k.nab(nrt, r));
  return t;
}

PolyVec rel9(const RelCtx& k, const PolyVec& r, const PolyVec& rt) {
  PolyVec nr = k.nus * r, nrt = k.nus * rt;
  PolyVec ar = k.c.A * r, art = k.c.A * rt;
  return k.br(ar, art) - k.br(r, rt) - k.c.A * (k.br(ar, rt) + k.br(r, art)) -
         k.nabEndoA(nr, rt) + k.nabEndoA(nrt, r) + k.Rf(nr, nrt) -
         k.two * (k.c.nu * (k.iR(nr, rt) - k.iR(nrt, r) + k.pairNabA(r, rt)));
}

PolyVec rel10(const RelCtx& k, const PolyVec& x, const PolyVec& xi) {
  PolyVec jx = k.c.J * x, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  return k.lv(jx, bxi) - k.c.B * k.lc(jx, xi) - k.c.J * k.lv(x, bxi) +
         k.c.B * k.lc(x, PolyVec(k.js * xi)) +
         k.c.B * (k.hf(x, bxi) + k.two * k.iR(x, nxi)) +
         k.nus * (k.nab(x, nxi) + k.Rf(x, bxi));
}

PolyVec rel11(const RelCtx& k, const PolyVec& x, const PolyVec& xi) {
  PolyVec jx = k.c.J * x, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  PolyVec mx = k.c.mu * x;
  PolyVec t = k.hf(bxi, jx) + k.js * k.hf(bxi, x);
  t += -k.lc(jx, PolyVec(k.js * xi)) - k.lc(x, xi) +
       k.js * (k.lc(jx, xi) - k.lc(x, PolyVec(k.js * xi)));
  t += k.dcf(bxi, x) - k.lc(x, PolyVec(k.c.C * bxi));
  t += k.two * (k.iR(bxi, mx) - k.iR(jx, nxi));
  t += k.two * k.pairNab(mx, nxi) - k.two * (k.js * k.iR(x, nxi)) +
       k.mus * (k.nab(x, nxi) + k.Rf(x, bxi));
  return t;
}

PolyVec rel12(const RelCtx& k, const PolyVec& x, const PolyVec& xi) {
  PolyVec jx = k.c.J * x, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  PolyVec mx = k.c.mu * x;
  return k.nab(jx, nxi) - k.c.nu * k.lc(jx, xi) - k.nab(bxi, mx) - k.c.mu * k.lv(x, bxi) +
         k.br(mx, nxi) -
         k.c.nu * (k.hf(bxi, x) - k.lc(x, PolyVec(k.js * xi)) - k.two * k.iR(x, nxi)) -
         k.c.A * (k.nab(x, nxi) + k.Rf(x, bxi)) + k.Rf(jx, bxi);
}

PolyVec rel13(const RelCtx& k, const PolyVec& r, const PolyVec& xi) {
  PolyVec nr = k.nus * r, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  return k.lieEndo(nr, k.c.B, Space::Cotangent, Space::Tangent, xi) +
         k.two * (k.c.B * (k.iR(bxi, r) + k.pairNab(r, nxi))) +
         k.nus * (k.nab(bxi, r) - k.br(r, nxi));
}

PolyVec rel14(const RelCtx& k, const PolyVec& r, const PolyVec& xi) {
  PolyVec nr = k.nus * r, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  PolyVec mr = k.mus * r, ar = k.c.A * r;
  PolyVec t = k.lc(bxi, mr) + k.dscalar(k.biv(mr, xi)) - k.mus * k.nab(bxi, r);
  t += k.hf(nr, bxi) + k.lieEndo(nr, k.js, Space::Cotangent, Space::Cotangent, xi);
  t += k.two * k.iR(nr, nxi) + k.two * k.iR(bxi, ar) + k.two * k.pairNab(ar, nxi);
  t += k.two * (k.js * (k.iR(bxi, r) + k.pairNab(r, nxi)));
  t += k.mus * k.br(r, nxi);
  return t;
}

PolyVec rel15(const RelCtx& k, const PolyVec& r, const PolyVec& xi) {
  PolyVec nr = k.nus * r, bxi = k.c.B * xi, nxi = k.c.nu * xi;
  PolyVec ar = k.c.A * r;
  Scalar half(rat(1, 2));
  PolyVec inner = k.iR(bxi, r) + k.pairNab(r, nxi) - half * k.lc(nr, xi);
  return k.Rf(nr, bxi) + k.nab(nr, nxi) + k.nabEndoA(bxi, r) - k.br(ar, nxi) +
         k.c.A * k.br(r, nxi) + k.two * (k.c.nu * inner);
}

PolyVec rel16(const RelCtx& k, const PolyVec& r, const PolyVec& x) {
  PolyVec nr = k.nus * r, jx = k.c.J * x;
  PolyVec ar = k.c.A * r, mx = k.c.mu * x, mr = k.mus * r;
  return k.lv(jx, nr) - k.c.J * k.lv(x, nr) -
         k.two * (k.c.B * (k.iR(jx, r) + k.iR(x, ar))) -
         k.nus * (k.nab(jx, r) + k.nab(x, ar) + k.br(mx, r) - k.Rf(x, nr)) -
         k.c.B * (k.hf(nr, x) + k.lc(x, mr) - k.two * k.pairNab(mx, r));
}

PolyVec rel17(const RelCtx& k, const PolyVec& r, const PolyVec& x) {
  PolyVec nr = k.nus * r, jx = k.c.J * x;
  PolyVec ar = k.c.A * r, mx = k.c.mu * x, mr = k.mus * r;
  PolyVec t = k.hf(jx, nr) - k.js * k.hf(nr, x);
  t += -k.lc(jx, mr) - k.js * k.lc(x, mr);
  t += -k.two * k.iR(jx, ar) + k.two * k.iR(x, r) -
       k.two * (k.js * (k.iR(x, ar) + k.iR(jx, r)));
  t += k.dcf(x, nr) + k.lc(x, PolyVec(k.c.C * nr));
  t += -k.two * k.iR(nr, mx) + k.two * k.pairNab(mx, ar);
  t += k.two * (k.js * k.pairNab(mx, r)) +
       k.mus * (k.nab(jx, r) + k.nab(x, ar) + k.br(mx, r) - k.Rf(x, nr));
  return t;
}

PolyVec rel18(const RelCtx& k, const PolyVec& r, const PolyVec& x) {
  PolyVec nr = k.nus * r, jx = k.c.J * x;
  PolyVec ar = k.c.A * r, mx = k.c.mu * x, mr = k.mus * r;
  return k.Rf(nr, jx) + k.two * (k.c.nu * (k.iR(x, ar) + k.iR(jx, r))) -
         k.c.A * k.Rf(nr, x) + k.nabEndoA(jx, r) - k.nab(x, r) -
         k.c.A * k.nab(x, ar) + k.nab(nr, mx) - k.c.mu * k.lv(nr, x) + k.br(mx, ar) -
         k.c.A * k.br(mx, r) +
         k.c.nu * (k.hf(nr, x) + k.lc(x, mr) - k.two * k.pairNab(mx, r));
}

using RelFn = PolyVec (*)(const RelCtx&, const PolyVec&, const PolyVec&);

constexpr RelFn kRelations[18] = {rel1,  rel2,  rel3,  rel4,  rel5,  rel6,
                                  rel7,  rel8,  rel9,  rel10, rel11, rel12,
                                  rel13, rel14, rel15, rel16, rel17, rel18};

// Argument kinds per relation group: 0 tangent, 1 cotangent, 2 fiber.
constexpr int kArgKind[18][2] = {{0, 0}, {0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 1},
                                 {2, 2}, {2, 2}, {2, 2}, {0, 1}, {0, 1}, {0, 1},
                                 {2, 1}, {2, 1}, {2, 1}, {2, 0}, {2, 0}, {2, 0}};

RelationResidual run_relation(const RelCtx& ctx, int id) {
  const int n = ctx.n, m = ctx.m;
  RelationResidual rr;
  rr.id = id;
  auto fn = kRelations[id - 1];
  int ka = kArgKind[id - 1][0], kb = kArgKind[id - 1][1];
  int da = ka == 2 ? m : n, db = kb == 2 ? m : n;
  bool same_kind = ka == kb;
  for (int a = 0; a < da; ++a)
    for (int b = same_kind ? a + 1 : 0; b < db; ++b) {
      PolyVec ea = poly_zero_vec(da), eb = poly_zero_vec(db);
      ea(a) = Scalar(1);
      eb(b) = Scalar(1);
      PolyVec res = fn(ctx, ea, eb);
      if (!is_zero(res)) {
        rr.zero = false;
        for (Eigen::Index t = 0; t < res.size(); ++t)
          if (!res(t).is_zero()) {
            rr.summary = residual_summary(res(t), ctx.chart);
            return rr;
          }
      }
    }
  return rr;
}

}  // namespace

PolyVec relation_residual(const CourantData& d, const GacsComponents& c, int id,
                          const PolyVec& first, const PolyVec& second) {
  if (id < 1 || id > 18) throw InputError("relation id out of range");
  RelCtx ctx(d, c);
  return kRelations[id - 1](ctx, first, second);
}

IntegrabilityReport integrability_18(const CourantData& d, const GacsComponents& c,
                                     bool parallel) {
  RelCtx ctx(d, c);
  IntegrabilityReport rep;
  if (!parallel) {
    for (int id = 1; id <= 18; ++id) rep.relations.push_back(run_relation(ctx, id));
    return rep;
  }
  std::vector<std::future<RelationResidual>> tasks;
  for (int id = 1; id <= 18; ++id)
    tasks.push_back(std::async(std::launch::async, [&ctx, id] { return run_relation(ctx, id); }));
  for (auto& t : tasks) rep.relations.push_back(t.get());
  return rep;
}

IntegrabilityReport integrability_10(const CourantData& d, const GacsComponents& c) {
  RelCtx ctx(d, c);
  IntegrabilityReport rep;
  for (int id : {1, 2, 3, 4, 5, 6, 7, 8, 9, 12}) rep.relations.push_back(run_relation(ctx, id));
  return rep;
}

}  // namespace ck
