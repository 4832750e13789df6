#include "courantkit/forms.hpp"

#include <algorithm>

namespace ck {

int sort_sign(IdxTuple& idx) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (size_t i = 1; i < idx.size(); ++i) {
    int v = idx[i];
    size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      sign = -sign;
    }
    idx[j] = v;
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

VectorField VectorField::coordinate(const Chart& c, int i) {
  VectorField v = zero(c);
  v.comps(i) = Scalar::constant(c.dim(), Rational(1));
  return v;
}

KForm KForm::zero(const Chart& c, int k) {
  // degrees above the chart dimension are allowed; such forms are
  // necessarily zero (no strictly increasing tuples exist)
  if (k < 0) throw PreconditionError("form degree out of range");
  return {c, k, {}};
}

KForm KForm::dx(const Chart& c, int i) {
  KForm w = zero(c, 1);
  w.set({i}, Scalar::constant(c.dim(), Rational(1)));
  return w;
}

void KForm::set(IdxTuple idx, Scalar v) {
  int s = sort_sign(idx);
  if (s == 0) return;
  if (s < 0) v = -v;
  if (v.is_zero()) coeffs.erase(idx);
  else coeffs[idx] = std::move(v);
}

void KForm::add(IdxTuple idx, const Scalar& v) {
  int s = sort_sign(idx);
  if (s == 0 || v.is_zero()) return;
  auto& slot = coeffs[idx];
  slot += (s < 0) ? -v : v;
  if (slot.is_zero()) coeffs.erase(idx);
}

Scalar KForm::coeff(IdxTuple idx) const {
  int s = sort_sign(idx);
  if (s == 0) return Scalar();
  auto it = coeffs.find(idx);
  if (it == coeffs.end()) return Scalar();
  return s < 0 ? -it->second : it->second;
}

KForm& KForm::operator+=(const KForm& o) {
  require_same_chart(chart, o.chart, "form sum");
  if (deg != o.deg) throw PreconditionError("form sum: degree mismatch");
  for (auto& [t, v] : o.coeffs) add(t, v);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  require_same_chart(chart, o.chart, "form sum");
  if (deg != o.deg) throw PreconditionError("form sum: degree mismatch");
  for (auto& [t, v] : o.coeffs) add(t, -v);
  return *this;
}

KForm KForm::operator-() const {
  KForm r = *this;
  for (auto& [t, v] : r.coeffs) v = -v;
  return r;
}

KForm operator*(const Scalar& f, KForm w) {
  if (f.is_zero()) return KForm::zero(w.chart, w.deg);
  for (auto& [t, v] : w.coeffs) v *= f;
  std::erase_if(w.coeffs, [](auto& kv) { return kv.second.is_zero(); });
  return w;
}

bool operator==(const KForm& a, const KForm& b) {
  return a.chart == b.chart && a.deg == b.deg && a.coeffs == b.coeffs;
}

FiberForm FiberForm::zero(const Chart& c, int k, int m) {
  if (k < 0) throw PreconditionError("form degree out of range");
  return {c, k, m, {}};
}

bool FiberForm::is_zero() const {
  for (auto& [t, v] : coeffs)
    if (!ck::is_zero(v)) return false;
  return true;
}

void FiberForm::set(IdxTuple idx, PolyVec v) {
  int s = sort_sign(idx);
  if (s == 0) return;
  if (s < 0) v = -v;
  if (ck::is_zero(v)) coeffs.erase(idx);
  else coeffs[idx] = std::move(v);
}

void FiberForm::add(IdxTuple idx, const PolyVec& v) {
  int s = sort_sign(idx);
  if (s == 0 || ck::is_zero(v)) return;
  auto it = coeffs.find(idx);
  if (it == coeffs.end()) {
    coeffs[idx] = (s < 0) ? PolyVec(-v) : v;
  } else {
    if (s < 0) it->second -= v;
    else it->second += v;
    if (ck::is_zero(it->second)) coeffs.erase(it);
  }
}

PolyVec FiberForm::coeff(IdxTuple idx) const {
  int s = sort_sign(idx);
  if (s == 0) return poly_zero_vec(fiber_dim);
  auto it = coeffs.find(idx);
  if (it == coeffs.end()) return poly_zero_vec(fiber_dim);
  return s < 0 ? PolyVec(-it->second) : it->second;
}

FiberForm& FiberForm::operator+=(const FiberForm& o) {
  require_same_chart(chart, o.chart, "fiber form sum");
  if (deg != o.deg || fiber_dim != o.fiber_dim)
    throw PreconditionError("fiber form sum: shape mismatch");
  for (auto& [t, v] : o.coeffs) add(t, v);
  return *this;
}

FiberForm& FiberForm::operator-=(const FiberForm& o) {
  require_same_chart(chart, o.chart, "fiber form sum");
  if (deg != o.deg || fiber_dim != o.fiber_dim)
    throw PreconditionError("fiber form sum: shape mismatch");
  for (auto& [t, v] : o.coeffs) {
    PolyVec nv = -v;
    add(t, nv);
  }
  return *this;
}

FiberForm FiberForm::operator-() const {
  FiberForm r = *this;
  for (auto& [t, v] : r.coeffs) v = -v;
  return r;
}

bool operator==(const FiberForm& a, const FiberForm& b) {
  if (!(a.chart == b.chart) || a.deg != b.deg || a.fiber_dim != b.fiber_dim) return false;
  FiberForm d = a;
  d -= b;
  return d.is_zero();
}

EndoField EndoField::make(const Chart& c, Space src, Space dst, PolyMat m, int fiber_dim) {
  EndoField e{c, src, dst, fiber_dim, std::move(m)};
  if (e.mat.rows() != e.dim_of(dst) || e.mat.cols() != e.dim_of(src))
    throw PreconditionError("endo field: matrix shape does not match space tags");
  return e;
}

EndoField EndoField::zero(const Chart& c, Space src, Space dst, int fiber_dim) {
  EndoField e{c, src, dst, fiber_dim, {}};
  e.mat = poly_zero_mat(e.dim_of(dst), e.dim_of(src));
  return e;
}

EndoField EndoField::identity(const Chart& c, Space s, int fiber_dim) {
  EndoField e{c, s, s, fiber_dim, {}};
  e.mat = poly_identity(e.dim_of(s));
  return e;
}

void Trivector::add(IdxTuple idx, const Scalar& v) {
  int s = sort_sign(idx);
  if (s == 0 || v.is_zero()) return;
  auto& slot = comps[idx];
  slot += (s < 0) ? -v : v;
  if (slot.is_zero()) comps.erase(idx);
}

Scalar Trivector::comp(IdxTuple idx) const {
  int s = sort_sign(idx);
  if (s == 0) return Scalar();
  auto it = comps.find(idx);
  if (it == comps.end()) return Scalar();
  return s < 0 ? -it->second : it->second;
}

bool operator==(const Trivector& a, const Trivector& b) {
  return a.chart == b.chart && a.comps == b.comps;
}

Trivector& Trivector::operator-=(const Trivector& o) {
  require_same_chart(chart, o.chart, "trivector");
  for (auto& [t, v] : o.comps) add(t, -v);
  return *this;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_chart(a.chart, b.chart, "wedge");
  if (a.deg + b.deg > a.chart.dim())
    throw PreconditionError("wedge: degree overflow");
  KForm out = KForm::zero(a.chart, a.deg + b.deg);
  for (auto& [ta, va] : a.coeffs)
    for (auto& [tb, vb] : b.coeffs) {
      IdxTuple merged = ta;
      merged.insert(merged.end(), tb.begin(), tb.end());
      out.add(std::move(merged), va * vb);
    }
  return out;
}

KForm exterior_d(const KForm& w) {
  if (w.deg >= w.chart.dim()) throw PreconditionError("exterior_d: top-degree input");
  KForm out = KForm::zero(w.chart, w.deg + 1);
  for (auto& [t, v] : w.coeffs)
    for (int i = 0; i < w.chart.dim(); ++i) {
      Scalar dv = v.derivative(i);
      if (dv.is_zero()) continue;
      IdxTuple ext;
      ext.reserve(t.size() + 1);
      ext.push_back(i);
      ext.insert(ext.end(), t.begin(), t.end());
      out.add(std::move(ext), dv);
    }
  return out;
}

KForm exterior_d_total(const KForm& w) {
  if (w.deg >= w.chart.dim()) return KForm::zero(w.chart, w.deg + 1);
  return exterior_d(w);
}

FiberForm exterior_d_total(const FiberForm& w) {
  if (w.deg >= w.chart.dim()) return FiberForm::zero(w.chart, w.deg + 1, w.fiber_dim);
  return exterior_d(w);
}

FiberForm exterior_d(const FiberForm& w) {
  if (w.deg >= w.chart.dim()) throw PreconditionError("exterior_d: top-degree input");
  FiberForm out = FiberForm::zero(w.chart, w.deg + 1, w.fiber_dim);
  for (auto& [t, v] : w.coeffs)
    for (int i = 0; i < w.chart.dim(); ++i) {
      PolyVec dv(v.size());
      bool nz = false;
      for (Eigen::Index a = 0; a < v.size(); ++a) {
        dv(a) = v(a).derivative(i);
        nz = nz || !dv(a).is_zero();
      }
      if (!nz) continue;
      IdxTuple ext;
      ext.reserve(t.size() + 1);
      ext.push_back(i);
      ext.insert(ext.end(), t.begin(), t.end());
      out.add(std::move(ext), dv);
    }
  return out;
}

KForm interior(const VectorField& x, const KForm& w) {
  require_same_chart(x.chart, w.chart, "interior");
  if (w.deg < 1) throw PreconditionError("interior: degree must be at least 1");
  KForm out = KForm::zero(w.chart, w.deg - 1);
  for (auto& [t, v] : w.coeffs)
    for (size_t k = 0; k < t.size(); ++k) {
      const Scalar& xk = x.comps(t[k]);
      if (xk.is_zero()) continue;
      IdxTuple rest;
      rest.reserve(t.size() - 1);
      for (size_t l = 0; l < t.size(); ++l)
        if (l != k) rest.push_back(t[l]);
      Scalar term = xk * v;
      if (k % 2 == 1) term = -term;
      out.add(std::move(rest), term);
    }
  return out;
}

FiberForm interior(const VectorField& x, const FiberForm& w) {
  require_same_chart(x.chart, w.chart, "interior");
  if (w.deg < 1) throw PreconditionError("interior: degree must be at least 1");
  FiberForm out = FiberForm::zero(w.chart, w.deg - 1, w.fiber_dim);
  for (auto& [t, v] : w.coeffs)
    for (size_t k = 0; k < t.size(); ++k) {
      const Scalar& xk = x.comps(t[k]);
      if (xk.is_zero()) continue;
      IdxTuple rest;
      for (size_t l = 0; l < t.size(); ++l)
        if (l != k) rest.push_back(t[l]);
      PolyVec term = v * xk;
      if (k % 2 == 1) term = -term;
      out.add(std::move(rest), term);
    }
  return out;
}

Scalar eval_form(const KForm& w, const std::vector<VectorField>& args) {
  if (static_cast<int>(args.size()) != w.deg)
    throw PreconditionError("eval_form: arity mismatch");
  if (w.deg == 0) {
    auto it = w.coeffs.find(IdxTuple{});
    return it == w.coeffs.end() ? Scalar() : it->second;
  }
  KForm cur = w;
  for (size_t i = 0; i + 1 < args.size(); ++i) cur = interior(args[i], cur);
  // degree-1 remainder
  Scalar acc;
  for (auto& [t, v] : cur.coeffs) acc += args.back().comps(t[0]) * v;
  return acc;
}

PolyVec eval_form(const FiberForm& w, const std::vector<VectorField>& args) {
  if (static_cast<int>(args.size()) != w.deg)
    throw PreconditionError("eval_form: arity mismatch");
  if (w.deg == 0) return w.coeff(IdxTuple{});
  FiberForm cur = w;
  for (size_t i = 0; i + 1 < args.size(); ++i) cur = interior(args[i], cur);
  PolyVec acc = poly_zero_vec(w.fiber_dim);
  for (auto& [t, v] : cur.coeffs) acc += v * args.back().comps(t[0]);
  return acc;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart, y.chart, "lie_bracket");
  VectorField out = VectorField::zero(x.chart);
  out.comps = lie_vec(x.chart, x.comps, y.comps);
  return out;
}

VectorField lie_derivative(const VectorField& x, const VectorField& y) {
  return lie_bracket(x, y);
}

KForm lie_derivative(const VectorField& x, const KForm& w) {
  require_same_chart(x.chart, w.chart, "lie_derivative");
  if (w.deg == 0) {
    KForm out = KForm::zero(w.chart, 0);
    Scalar f = w.coeff(IdxTuple{});
    Scalar acc;
    for (int i = 0; i < w.chart.dim(); ++i) acc += x.comps(i) * f.derivative(i);
    out.set({}, acc);
    return out;
  }
  if (w.deg >= w.chart.dim()) {
    // top degree and above: L_X = d i_X only
    return exterior_d_total(interior(x, w));
  }
  return interior(x, exterior_d(w)) + exterior_d(interior(x, w));
}

EndoField lie_derivative(const VectorField& x, const EndoField& t) {
  if (t.src == Space::Fiber || t.dst == Space::Fiber)
    throw PreconditionError("lie_derivative: fiber-valued endomorphism not supported");
  require_same_chart(x.chart, t.chart, "lie_derivative");
  const Chart& c = t.chart;
  const int n = c.dim();
  EndoField out = EndoField::zero(c, t.src, t.dst);
  for (int b = 0; b < n; ++b) {
    // basis section of the source space
    PolyVec e = poly_zero_vec(n);
    e(b) = Scalar::constant(n, Rational(1));
    PolyVec te = t.mat * e;
    PolyVec lie_te = (t.dst == Space::Tangent) ? lie_vec(c, x.comps, te) : lie_cov(c, x.comps, te);
    PolyVec lie_e = (t.src == Space::Tangent) ? lie_vec(c, x.comps, e) : lie_cov(c, x.comps, e);
    out.mat.col(b) = lie_te - t.mat * lie_e;
  }
  return out;
}

KForm pairing_wedge(const FiberForm& a, const FiberForm& b, const RatMat& g) {
  require_same_chart(a.chart, b.chart, "pairing_wedge");
  if (a.fiber_dim != b.fiber_dim) throw PreconditionError("pairing_wedge: fiber mismatch");
  if (g.rows() != a.fiber_dim || g.cols() != a.fiber_dim)
    throw PreconditionError("pairing_wedge: pairing shape mismatch");
  PolyMat gp = to_poly(g);
  KForm out = KForm::zero(a.chart, a.deg + b.deg);
  for (auto& [ta, va] : a.coeffs)
    for (auto& [tb, vb] : b.coeffs) {
      Scalar pair = (va.transpose() * gp * vb)(0, 0);
      if (pair.is_zero()) continue;
      IdxTuple merged = ta;
      merged.insert(merged.end(), tb.begin(), tb.end());
      out.add(std::move(merged), pair);
    }
  return out;
}

Trivector schouten_pb(const Chart& chart, const PolyMat& bmap) {
  const int n = chart.dim();
  if (bmap.rows() != n || bmap.cols() != n)
    throw PreconditionError("schouten_pb: shape mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      if (!(bmap(i, j) + bmap(j, i)).is_zero())
        throw PreconditionError("schouten_pb: antisymmetric bivector required");
  // components B^{ij} = (B dx^i)(dx^j) = mat(j, i)
  auto comp = [&](int i, int j) { return bmap(j, i); };
  Trivector out = Trivector::zero(chart);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Scalar acc;
        const int cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
        for (auto& t : cyc)
          for (int l = 0; l < n; ++l) acc += comp(t[0], l) * comp(t[1], t[2]).derivative(l);
        out.add({i, j, k}, acc);
      }
  return out;
}

Scalar apply_covector(const PolyVec& xi, const PolyVec& x) {
  Scalar acc;
  for (Eigen::Index i = 0; i < xi.size(); ++i) acc += xi(i) * x(i);
  return acc;
}

PolyVec d_scalar(const Chart& c, const Scalar& f) {
  PolyVec out = poly_zero_vec(c.dim());
  for (int i = 0; i < c.dim(); ++i) out(i) = f.derivative(i);
  return out;
}

PolyVec lie_vec(const Chart& c, const PolyVec& x, const PolyVec& y) {
  const int n = c.dim();
  PolyVec out = poly_zero_vec(n);
  for (int k = 0; k < n; ++k) {
    Scalar acc;
    for (int i = 0; i < n; ++i) acc += x(i) * y(k).derivative(i) - y(i) * x(k).derivative(i);
    out(k) = acc;
  }
  return out;
}

PolyVec lie_cov(const Chart& c, const PolyVec& x, const PolyVec& xi) {
  const int n = c.dim();
  PolyVec out = poly_zero_vec(n);
  for (int a = 0; a < n; ++a) {
    Scalar acc;
    for (int i = 0; i < n; ++i) acc += x(i) * xi(a).derivative(i) + xi(i) * x(i).derivative(a);
    out(a) = acc;
  }
  return out;
}

KForm oneform(const Chart& c, const PolyVec& xi) {
  KForm w = KForm::zero(c, 1);
  for (int i = 0; i < c.dim(); ++i)
    if (!xi(i).is_zero()) w.set({i}, xi(i));
  return w;
}

PolyVec covector_of(const KForm& w) {
  if (w.deg != 1) throw PreconditionError("covector_of: degree-1 form required");
  PolyVec out = poly_zero_vec(w.chart.dim());
  for (auto& [t, v] : w.coeffs) out(t[0]) = v;
  return out;
}

KForm map_to_two_form(const Chart& c, const PolyMat& m) {
  KForm w = KForm::zero(c, 2);
  for (int i = 0; i < c.dim(); ++i)
    for (int j = i + 1; j < c.dim(); ++j) w.set({i, j}, m(j, i));  // form(di,dj) = (m di)(dj)
  return w;
}

PolyMat two_form_to_map(const KForm& w) {
  if (w.deg != 2) throw PreconditionError("two_form_to_map: degree-2 form required");
  const int n = w.chart.dim();
  PolyMat m = poly_zero_mat(n, n);
  for (auto& [t, v] : w.coeffs) {
    m(t[1], t[0]) = v;
    m(t[0], t[1]) = -v;
  }
  return m;
}

Scalar bivector_pair(const PolyMat& bmap, const PolyVec& xi, const PolyVec& eta) {
  return apply_covector(eta, bmap * xi);
}

RatVec eval_at(const VectorField& x, const std::vector<Rational>& p) {
  return eval_at(x.comps, p);
}

std::map<IdxTuple, Rational> eval_at(const KForm& w, const std::vector<Rational>& p) {
  std::map<IdxTuple, Rational> out;
  for (auto& [t, v] : w.coeffs) {
    Rational r = v.eval(p);
    if (r != 0) out[t] = r;
  }
  return out;
}

RatMat eval_at(const EndoField& t, const std::vector<Rational>& p) { return eval_at(t.mat, p); }

std::map<IdxTuple, Rational> eval_at(const Trivector& t, const std::vector<Rational>& p) {
  std::map<IdxTuple, Rational> out;
  for (auto& [idx, v] : t.comps) {
    Rational r = v.eval(p);
    if (r != 0) out[idx] = r;
  }
  return out;
}

}  // namespace ck
