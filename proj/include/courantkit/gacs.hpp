#pragma once

#include "courantkit/courant.hpp"

namespace ck {

/// Component blocks of a generalised almost complex structure with respect
/// to the splitting TM + T*M + G.
struct GacsComponents {
  Chart chart;
  int fiber_dim = 0;
  PolyMat J;   // TM -> TM        (n x n)
  PolyMat A;   // G  -> G         (m x m)
  PolyMat B;   // T*M -> TM       (n x n)
  PolyMat C;   // TM -> T*M       (n x n)
  PolyMat mu;  // TM -> G         (m x n)
  PolyMat nu;  // T*M -> G        (m x n)

  static GacsComponents zero(const Chart& c, int m);
};

// Metric adjoints.  The scalar product has a 1/2 on the tangent-cotangent
// pairing, which puts a factor 2 into the fiber adjoints:
//   (mu* r)(X) = 2 <r, mu X>_G,   xi(nu* r) = 2 <r, nu xi>_G.
PolyMat adjoint_fiber_endo(const RatMat& g, const PolyMat& a);  // A* = g^-1 A^T g
PolyMat adjoint_mu(const RatMat& g, const PolyMat& mu);         // mu* = 2 mu^T g  (G -> T*M)
PolyMat adjoint_nu(const RatMat& g, const PolyMat& nu);         // nu* = 2 nu^T g  (G -> TM)

/// Full endomorphism as a (2n+m) square block matrix in the order
/// (TM, T*M, G).
PolyMat block_matrix(const CourantData& d, const GacsComponents& c);

/// Gram matrix of the scalar product in the same block order.
PolyMat scalar_product_gram(const CourantData& d);

/// Apply the endomorphism to a section.
Section apply_gacs(const CourantData& d, const GacsComponents& c, const Section& u);

struct AlgebraicReport {
  bool skew_b = false, skew_c = false, skew_a = false;
  std::array<bool, 6> quadratic{};  // the six component equations
  bool block_square = false;        // block^2 = -Id
  bool block_skew = false;          // block^T Q + Q block = 0
  std::string first_failure;

  bool components_pass() const {
    bool q = true;
    for (bool b : quadratic) q = q && b;
    return skew_b && skew_c && skew_a && q;
  }
  bool block_pass() const { return block_square && block_skew; }
  bool pass() const { return components_pass(); }
  /// The two routes must always agree; exposed so tests can assert it.
  bool routes_agree() const { return components_pass() == block_pass(); }
};

AlgebraicReport check_algebraic(const CourantData& d, const GacsComponents& c);

/// N(u,v) = [Ju, Jv] - [u,v] - J([Ju,v] + [u,Jv]).
Section nijenhuis(const CourantData& d, const GacsComponents& c, const Section& u,
                  const Section& v);

struct FrameOracleReport {
  bool integrable = true;
  std::string first_failure;
  int failing_pair_a = -1, failing_pair_b = -1;
};

/// Frame-pair scan of the Nijenhuis tensor (tensoriality makes this decide
/// integrability).
FrameOracleReport nijenhuis_frame_oracle(const CourantData& d, const GacsComponents& c);

struct RelationResidual {
  int id = 0;
  bool zero = true;
  std::string summary = "zero";
};

struct IntegrabilityReport {
  std::vector<RelationResidual> relations;
  bool pass() const {
    for (auto& r : relations)
      if (!r.zero) return false;
    return true;
  }
};

/// All 18 component relations, evaluated on frame tuples.  The relations are
/// independent pure functions; `parallel` fans them out across threads.
IntegrabilityReport integrability_18(const CourantData& d, const GacsComponents& c,
                                     bool parallel = false);
/// The sufficient subset {1..9, 12}.
IntegrabilityReport integrability_10(const CourantData& d, const GacsComponents& c);

/// Residual of a single relation (1-based id) on explicit arguments; the
/// output lives in the tangent/cotangent/fiber space the relation targets.
PolyVec relation_residual(const CourantData& d, const GacsComponents& c, int id,
                          const PolyVec& first, const PolyVec& second);

/// The Poisson obstruction of the B-component: the operator-form expression
/// L_{B xi}(B eta) - B(L_{B xi} eta - L_{B eta} xi) + B d(B(xi,eta)) packaged
/// as a trivector.  Equals both schouten_pb(B) and the tangent projection of
/// the Nijenhuis tensor on one-form frame pairs.
Trivector poisson_residual(const CourantData& d, const GacsComponents& c);

// --- non-degenerate theory ---------------------------------------------------

struct NondegSeed {
  Chart chart;
  int fiber_dim = 0;
  PolyMat J;       // n x n
  PolyMat Atilde;  // m x m
  PolyMat B;       // n x n, invertible
  PolyMat nu;      // m x n
};

struct SeedReport {
  bool atilde_square = false;   // Atilde^2 = -Id
  bool atilde_skew = false;
  bool b_skew = false;
  bool jb_relation = false;     // JB - BJ* = nu* nu
  bool b_invertible = false;    // polynomial inverse exists
  bool pass() const {
    return atilde_square && atilde_skew && b_skew && jb_relation && b_invertible;
  }
};

SeedReport check_seed(const CourantData& d, const NondegSeed& s);

/// Inverse of B as a polynomial matrix; throws PreconditionError when det B
/// is not a nonzero constant.
PolyMat seed_b_inverse(const NondegSeed& s);

/// A = Atilde - nu B^-1 nu*, C = -B^-1(nu* Atilde nu B^-1 + Id) - J* B^-1 J,
/// mu = nu B^-1 J - Atilde nu B^-1.
GacsComponents nondeg_complete(const CourantData& d, const NondegSeed& s);

/// Extract a seed back from components: Atilde = A + nu B^-1 nu*.
NondegSeed seed_of_components(const CourantData& d, const GacsComponents& c);

struct NondegIntegrabilityReport {
  bool symplectic = false;        // d(B^-1) = 0
  bool fiber_integrable = false;  // algebraic Nijenhuis of Atilde
  bool parallel = false;          // (nabla + ad_{nu B^-1}) Atilde = 0
  bool curvature_eq = false;      // d^nabla(nu B^-1) + [nu B^-1, nu B^-1] + R = 0
  bool flux_eq = false;           // dB_J + H + <(R - 1/3 [phi,phi]) ^ phi> = 0
  std::string first_failure;
  bool pass() const {
    return symplectic && fiber_integrable && parallel && curvature_eq && flux_eq;
  }
};

NondegIntegrabilityReport nondeg_integrability(const CourantData& d, const NondegSeed& s);

/// phi = nu B^-1 as a fiber-valued one-form and B_J = (1/2) J . B^-1 as a
/// two-form; the transport data of the first reduction step.
FiberForm seed_phi(const CourantData& d, const NondegSeed& s);
KForm seed_bj(const NondegSeed& s);

struct FlatCurvatureReport {
  bool flat = false;
  /// R^{nabla~} = ad of the curvature-equation residual, always.
  bool matches_ad_of_residual = false;
};

FlatCurvatureReport flat_curvature_check(const CourantData& d, const NondegSeed& s);

}  // namespace ck
