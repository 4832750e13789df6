#pragma once

#include "courantkit/gacs.hpp"

namespace ck {

/// Courant algebroid isomorphism data (K, Phi, beta) over the identity on
/// the base: K a fiberwise quadratic-Lie-algebra isomorphism field, Phi a
/// fiber-valued one-form (columns per coordinate), beta a two-form.
struct IsoData {
  Chart chart;
  int fiber_dim = 0;
  PolyMat K;    // m x m
  PolyMat Phi;  // m x n
  KForm beta;   // degree 2

  static IsoData identity(const Chart& c, int m);
};

struct IsoReport {
  bool invertible = false;  // polynomial inverse of K exists
  bool bracket = false;     // K [a,b] = [Ka, Kb] as polynomial identities
  bool metric = false;      // K^T g K = g
  bool pass() const { return invertible && bracket && metric; }
};

IsoReport check_iso(const CourantData& d, const IsoData& i);

/// Phi^*: G -> T*M with (Phi* r)(X) = <r, Phi(X)>_G.  This is the map the
/// isomorphism formulas use; no factor 2, unlike the component adjoints.
PolyMat phi_star(const CourantData& d, const PolyMat& phi);

/// I(X) = X + i_X beta - Phi*Phi(X) + Phi(X); I(eta) = eta;
/// I(r) = -2 Phi* K(r) + K(r).
Section apply_iso(const CourantData& d, const IsoData& i, const Section& u);

/// The same map as a block matrix in the (TM, T*M, G) order.
PolyMat iso_block_matrix(const CourantData& d, const IsoData& i);

/// Defining data of the codomain algebroid: the iso maps the input data to
/// the returned data.
CourantData transform_data(const CourantData& d1, const IsoData& i);

/// (K^{-1}, -K^{-1} Phi, -beta).
IsoData invert_iso(const IsoData& i);

/// Composition second o first (first acts first).
IsoData compose_iso(const CourantData& d, const IsoData& second, const IsoData& first);

/// Components of I^{-1} o J o I on the domain algebroid; c lives on the
/// codomain.  The four closed-form blocks (J1, A1, B1 = B, nu1) are computed
/// independently and must agree with the conjugated block matrix.
GacsComponents transform_gacs(const CourantData& d, const GacsComponents& c, const IsoData& i);

struct NormalFormResult {
  CourantData data;      // untwisted: R = 0, H = 0
  GacsComponents comps;  // J = 0, mu = nu = 0, C = omega
  KForm omega;           // the symplectic structure -B^{-1}
  PolyMat a_field;       // the parallel fiber complex structure
  IsoData step1, step2;  // transports used, as maps new -> old
};

/// Two-step reduction to J_omega + A on an untwisted algebroid; every claim
/// asserted exactly.
NormalFormResult normal_form(const CourantData& d, const NondegSeed& s);

}  // namespace ck
