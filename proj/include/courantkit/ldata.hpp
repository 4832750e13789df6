#pragma once

#include "courantkit/gacs.hpp"

namespace ck {

/// Pointwise (W, D, sigma, epsilon) data of the (1,0)-bundle at a rational
/// point, over Q(i), together with the verification results.  Complement
/// choices are deterministic (RREF pivot columns).
struct PointwiseLData {
  std::vector<Rational> point;

  GqMat w_basis;  // n x dimW
  GqMat d_basis;  // m x dimD
  GqMat sigma;    // m x dimW, values on the w_basis columns
  GqMat epsilon;  // dimW x dimW
  GqMat l_direct; // (2n+m) x (n + m/2), image of Id - iJ

  std::vector<int> cb_pivots;     // complement of ker B in T*M
  std::vector<int> cnu_pivots;    // complement of ker nu* in G
  std::vector<int> rgnu0_choice;  // columns of Rg nu* picked for (Rg nu*)_0

  bool w_matches_anchor_image = false;  // span W == pi(L)
  bool d_is_complex_subspace = false;
  bool d_isotropic = false;
  bool d_maximal = false;
  bool epsilon_antisym = false;
  bool epsilon_matches_oracle = false;  // recomputed through a section of pi|_L
  bool reconstruction_ok = false;       // L(W,D,sigma,eps) == { v - iJv }
  bool l_cap_conjugate_trivial = false;

  bool nondegenerate = false;  // B invertible at the point
  GqMat sigma_std;             // sigma on the standard tangent basis
  GqMat sigma_gauged;          // after the documented gauge (nondeg only)
  GqMat epsilon_gauged;        // via the section oracle, for the gauged sigma
  bool sigma_matches_formula = false;    // sigma = 1/2 (Id + i Atilde) nu B^{-1}
  bool gauged_sigma_is_nu_binv = false;  // sigma_gauged = nu B^{-1}
  bool gauged_epsilon_matches = false;   // eps = 1/2 (B_J + i B^{-1})

  bool pass() const {
    bool base = w_matches_anchor_image && d_is_complex_subspace && d_isotropic && d_maximal &&
                epsilon_antisym && epsilon_matches_oracle && reconstruction_ok &&
                l_cap_conjugate_trivial;
    if (!nondegenerate) return base;
    return base && sigma_matches_formula && gauged_sigma_is_nu_binv && gauged_epsilon_matches;
  }
};

/// Throws PreconditionError when the component equations fail at the point.
PointwiseLData pointwise_ldata(const CourantData& d, const GacsComponents& c,
                               const std::vector<Rational>& point);

}  // namespace ck
