#pragma once

#include "courantkit/rng.hpp"
#include "courantkit/transport.hpp"

namespace ck {

// Model fibers ---------------------------------------------------------------

QuadLieAlgebra abelian_fiber(int m, bool neutral);

/// The double of the 2-dimensional non-abelian algebra [e1,e2] = e2: a
/// 4-dimensional non-abelian quadratic Lie algebra of neutral signature
/// carrying the skew integrable complex structure rot_pairs(4).
QuadLieAlgebra double_aff1();

/// rot90 on consecutive basis pairs; a skew complex structure for the
/// diagonal metrics above and for the neutral pairing of double_aff1().
PolyMat rot_pairs(int m);

/// omega = dx1^dx2 + dx3^dx4 + ... as a map X -> i_X omega.
PolyMat standard_symplectic_map(int n);

// Model structures -----------------------------------------------------------

/// J_omega + A: J = 0, C = omega, B = -omega^{-1}.
GacsComponents canonical_symplectic(const CourantData& d, const PolyMat& omega_map,
                                    const PolyMat& a);

/// J_J type: B = C = mu = nu = 0.
GacsComponents complex_type(const CourantData& d, const PolyMat& j, const PolyMat& a);

/// Holomorphic-Poisson chart structure on a 4-chart over a rank-2 abelian
/// fiber: standard J, B the real form of z1 z2 dz1-dual ^ dz2-dual, constant
/// skew A; degenerates exactly on {z1 z2 = 0}.
GacsComponents hopf_chart_structure(const CourantData& d);

/// Untwisted algebroid 4-chart/rank-2-abelian carrier for the hopf structure.
CourantData hopf_chart_data();

// Randomized generators -------------------------------------------------------

/// Valid isomorphism data: K from a catalog of exact isometric automorphisms
/// (constant isometries for abelian fibers, exponentials of nilpotent inner
/// derivations for double_aff1), polynomial Phi and beta of degree <= deg.
IsoData random_iso(Rng& rng, const CourantData& d, int deg);

/// Canonical seed: J = 0, Atilde = rot_pairs, B = -omega^{-1}, nu = 0.
NondegSeed canonical_seed(const CourantData& d);

struct GeneratedInstance {
  CourantData data;
  GacsComponents comps;
  bool integrable = false;
  std::string name;
};

/// Integrable instance: a canonical structure twisted by a random valid
/// isomorphism.  All six components and the twist (R, H, connection) are
/// generically nonzero.
GeneratedInstance random_integrable_instance(Rng& rng, const CourantData& canonical_carrier);

/// Broken instance on a chart of dimension >= 4: non-closed B^{-1} via a
/// unipotent congruence (resampled until genuinely non-closed).
GeneratedInstance broken_nonclosed_instance(Rng& rng, const CourantData& carrier);

/// Broken instance that works on 2-charts too: flat connection d + df S with
/// [S, A] != 0, so A fails to be parallel.
GeneratedInstance broken_nonparallel_instance(Rng& rng, const Chart& chart);

/// The solved-for (R, H) example with nu != 0 on a 4-chart over the neutral
/// abelian rank-4 fiber; passes everything by construction.
struct ConstructedNu {
  CourantData data;
  NondegSeed seed;
};
ConstructedNu constructed_nu_example();

}  // namespace ck
