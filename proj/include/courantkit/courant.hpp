#pragma once

#include "courantkit/forms.hpp"
#include "courantkit/lie_algebra.hpp"

namespace ck {

/// Trivialized bundle of quadratic Lie algebras with a connection given by
/// coefficient matrices: nabla_{d_i} r = d_i r + omega[i] r.
struct LieAlgebraBundle {
  Chart chart;
  QuadLieAlgebra fiber;
  std::vector<PolyMat> omega;  // one m x m matrix per coordinate

  int fiber_dim() const { return fiber.dim(); }

  static LieAlgebraBundle flat(const Chart& c, QuadLieAlgebra f);

  /// Connection invariants: omega(X) is a bracket derivation and
  /// metric-skew, as polynomial identities.
  struct Invariants {
    bool derivation = true;
    bool metric = true;
    bool pass() const { return derivation && metric; }
  };
  Invariants check_invariants() const;

  PolyMat omega_of(const PolyVec& x) const;  // sum_i X^i omega[i]
};

struct CourantData {
  LieAlgebraBundle bundle;
  FiberForm curv;   // R, degree 2, fiber-valued
  KForm torsion3;   // H, degree 3

  const Chart& chart() const { return bundle.chart; }
  int fiber_dim() const { return bundle.fiber_dim(); }

  static CourantData untwisted(const Chart& c, QuadLieAlgebra f);
};

/// Section X + xi + r of TM + T*M + G.
struct Section {
  Chart chart;
  PolyVec x;   // tangent
  PolyVec xi;  // cotangent
  PolyVec r;   // fiber

  static Section zero(const Chart& c, int fiber_dim);
  static Section tangent(const Chart& c, int fiber_dim, int i);
  static Section cotangent(const Chart& c, int fiber_dim, int i);
  static Section fiber(const Chart& c, int fiber_dim, int a);

  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  Section operator-() const;
  friend Section operator*(const Scalar& f, Section s);
  bool is_zero() const { return ck::is_zero(x) && ck::is_zero(xi) && ck::is_zero(r); }
  friend bool operator==(const Section& a, const Section& b) {
    return (a - b).is_zero();
  }
};

/// All 2n+m frame sections (coordinate vectors, coordinate covectors, fiber
/// basis) in that order.
std::vector<Section> frame_sections(const CourantData& d);

// --- connection / curvature helpers ----------------------------------------

/// nabla_X s for a fiber section s (column of Scalars).
PolyVec nabla(const CourantData& d, const PolyVec& x, const PolyVec& s);
PolyVec nabla_i(const CourantData& d, int i, const PolyVec& s);

/// (nabla_X A) r for a fiber endomorphism field A.
PolyMat nabla_endo(const CourantData& d, const PolyVec& x, const PolyMat& a);

/// R(X,Y) as a fiber column.
PolyVec curvature_of(const FiberForm& r, const PolyVec& x, const PolyVec& y);

/// One-form Z -> <R(X,Z), s>_G.
PolyVec pair_iR(const CourantData& d, const PolyVec& x, const PolyVec& s);

/// One-form Z -> <nabla_Z r, s>_G.
PolyVec pair_nabla(const CourantData& d, const PolyVec& r, const PolyVec& s);

/// <r, s>_G over the polynomial ring.
Scalar fiber_pair(const CourantData& d, const PolyVec& r, const PolyVec& s);

/// d^nabla of a fiber-valued form: d + omega wedge.
FiberForm d_nabla(const CourantData& d, const FiberForm& w);

// --- the four courant operations --------------------------------------------

struct DefiningDataReport {
  bool curvature_matches_bracket = true;  // R^nabla = ad_R
  bool bianchi = true;                    // d^nabla R = 0
  bool h_flux = true;                     // dH = <R ^ R>
  std::string first_failure;              // leading monomial of first residual
  bool pass() const { return curvature_matches_bracket && bianchi && h_flux; }
};

DefiningDataReport check_defining_data(const CourantData& d);

Scalar scalar_product(const CourantData& d, const Section& u, const Section& v);

/// Dorfman bracket in closed form.
Section dorfman(const CourantData& d, const Section& u, const Section& v);

/// [u,[v,w]] - [[u,v],w] - [v,[u,w]].
Section jacobi_residual(const CourantData& d, const Section& u, const Section& v,
                        const Section& w);

/// Anchor projection of a section (as a vector field).
VectorField anchor(const Section& u);

}  // namespace ck
