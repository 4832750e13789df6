#pragma once

#include <map>
#include <vector>

#include "courantkit/chart.hpp"
#include "courantkit/linalg.hpp"

namespace ck {

/// Strictly increasing index tuple (0-based) keying antisymmetric components.
using IdxTuple = std::vector<int>;

/// Sign of sorting `idx` into increasing order; 0 if an index repeats.
/// On success `idx` is replaced by its sorted version.
int sort_sign(IdxTuple& idx);

struct VectorField {
  Chart chart;
  PolyVec comps;  // X^i

  static VectorField zero(const Chart& c) { return {c, poly_zero_vec(c.dim())}; }
  static VectorField coordinate(const Chart& c, int i);
  bool is_zero() const { return ck::is_zero(comps); }
};

/// Exterior form of degree k with polynomial coefficients; only strictly
/// increasing tuples are stored, full antisymmetry implied.  Evaluation
/// convention: on coordinate frames, w(d_{i1},...,d_{ik}) equals the stored
/// coefficient of (i1<...<ik).
struct KForm {
  Chart chart;
  int deg = 0;
  std::map<IdxTuple, Scalar> coeffs;

  static KForm zero(const Chart& c, int k);
  static KForm dx(const Chart& c, int i);  // coordinate one-form

  bool is_zero() const { return coeffs.empty(); }
  void set(IdxTuple idx, Scalar v);
  void add(IdxTuple idx, const Scalar& v);
  Scalar coeff(IdxTuple idx) const;  // any tuple; sign-normalized

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  KForm operator-() const;
  friend KForm operator*(const Scalar& f, KForm w);
  friend bool operator==(const KForm& a, const KForm& b);
};

/// Form with values in a trivialized fiber: coefficients are fiber columns.
struct FiberForm {
  Chart chart;
  int deg = 0;
  int fiber_dim = 0;
  std::map<IdxTuple, PolyVec> coeffs;

  static FiberForm zero(const Chart& c, int k, int m);

  bool is_zero() const;
  void set(IdxTuple idx, PolyVec v);
  void add(IdxTuple idx, const PolyVec& v);
  PolyVec coeff(IdxTuple idx) const;

  FiberForm& operator+=(const FiberForm& o);
  FiberForm& operator-=(const FiberForm& o);
  friend FiberForm operator+(FiberForm a, const FiberForm& b) { return a += b; }
  friend FiberForm operator-(FiberForm a, const FiberForm& b) { return a -= b; }
  FiberForm operator-() const;
  friend bool operator==(const FiberForm& a, const FiberForm& b);
};

enum class Space { Tangent, Cotangent, Fiber };

/// Field of linear maps between the chart's tangent/cotangent spaces and the
/// fiber; a dense polynomial matrix with space tags.  Columns index the
/// source, rows the target.
struct EndoField {
  Chart chart;
  Space src = Space::Tangent;
  Space dst = Space::Tangent;
  int fiber_dim = 0;  // used when either tag is Fiber
  PolyMat mat;

  static EndoField make(const Chart& c, Space src, Space dst, PolyMat m, int fiber_dim = 0);
  static EndoField zero(const Chart& c, Space src, Space dst, int fiber_dim = 0);
  static EndoField identity(const Chart& c, Space s, int fiber_dim = 0);

  int dim_of(Space s) const { return s == Space::Fiber ? fiber_dim : chart.dim(); }
  bool is_zero() const { return ck::is_zero(mat); }
};

/// Antisymmetric 3-tensor with upper indices (Schouten bracket values).
struct Trivector {
  Chart chart;
  std::map<IdxTuple, Scalar> comps;

  static Trivector zero(const Chart& c) { return {c, {}}; }
  bool is_zero() const { return comps.empty(); }
  void add(IdxTuple idx, const Scalar& v);
  Scalar comp(IdxTuple idx) const;
  friend bool operator==(const Trivector& a, const Trivector& b);
  Trivector& operator-=(const Trivector& o);
  friend Trivector operator-(Trivector a, const Trivector& b) { return a -= b; }
};

// --- exterior algebra ------------------------------------------------------

/// Shuffle-convention product, no 1/p!q! normalization: on one-forms
/// (a^b)(X,Y) = a(X)b(Y) - a(Y)b(X).
KForm wedge(const KForm& a, const KForm& b);

KForm exterior_d(const KForm& w);
FiberForm exterior_d(const FiberForm& w);  // componentwise; flat trivial coefficients

/// d on forms of any degree: degrees at or above the chart dimension map to
/// the zero form instead of refusing.  Residual computations use this; the
/// user-facing exterior_d keeps the top-degree error.
KForm exterior_d_total(const KForm& w);
FiberForm exterior_d_total(const FiberForm& w);

KForm interior(const VectorField& x, const KForm& w);
FiberForm interior(const VectorField& x, const FiberForm& w);

/// Full evaluation w(x1,...,xk) by iterated interior products.
Scalar eval_form(const KForm& w, const std::vector<VectorField>& args);
PolyVec eval_form(const FiberForm& w, const std::vector<VectorField>& args);

VectorField lie_bracket(const VectorField& x, const VectorField& y);
KForm lie_derivative(const VectorField& x, const KForm& w);  // Cartan: i_X d + d i_X
VectorField lie_derivative(const VectorField& x, const VectorField& y);
/// Leibniz extension: (L_X T)(v) = L_X(T v) - T(L_X v); tangent/cotangent
/// legs only.
EndoField lie_derivative(const VectorField& x, const EndoField& t);

/// <a ^ b>_G: wedge on the form part, fiber pairing with the symmetric
/// matrix g on the values; scalar-valued output.
KForm pairing_wedge(const FiberForm& a, const FiberForm& b, const RatMat& g);

/// Schouten bracket [[B,B]] of an antisymmetric bivector given as the map
/// matrix of xi |-> B(xi, .): components P^{ijk} = sum_cyc sum_l B^{il} d_l B^{jk}
/// where B^{ij} = (B dx^i)(dx^j).  The overall orientation is pinned so that
/// P coincides with the tangent projection of the Nijenhuis tensor on
/// one-form frame pairs.
Trivector schouten_pb(const Chart& chart, const PolyMat& bmap);

// --- small helpers used across modules -------------------------------------

Scalar apply_covector(const PolyVec& xi, const PolyVec& x);  // xi(X)
PolyVec d_scalar(const Chart& c, const Scalar& f);           // (d f)_i
PolyVec lie_vec(const Chart& c, const PolyVec& x, const PolyVec& y);
PolyVec lie_cov(const Chart& c, const PolyVec& x, const PolyVec& xi);

KForm oneform(const Chart& c, const PolyVec& xi);
PolyVec covector_of(const KForm& w);  // degree-1 form to components

/// Two-form <-> map conventions: form(X,Y) = (map X)(Y), map X = i_X form.
KForm map_to_two_form(const Chart& c, const PolyMat& m);
PolyMat two_form_to_map(const KForm& w);

/// Bivector evaluation B(xi, eta) := eta(B xi) for a map matrix T* -> T.
Scalar bivector_pair(const PolyMat& bmap, const PolyVec& xi, const PolyVec& eta);

/// eval_at for structured objects (exact numeric output).
RatVec eval_at(const VectorField& x, const std::vector<Rational>& p);
std::map<IdxTuple, Rational> eval_at(const KForm& w, const std::vector<Rational>& p);
RatMat eval_at(const EndoField& t, const std::vector<Rational>& p);
std::map<IdxTuple, Rational> eval_at(const Trivector& t, const std::vector<Rational>& p);

}  // namespace ck
