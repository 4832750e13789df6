#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "courantkit/linalg.hpp"

namespace ck {

/// Finite-dimensional Lie algebra over Q given by structure constants
/// c^k_{ij}, antisymmetric in (i,j): [e_i, e_j] = sum_k c(k)(i,j) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(int dim);

  int dim() const { return dim_; }

  Rational structure_constant(int k, int i, int j) const { return c_[static_cast<size_t>(k)](i, j); }
  void set_bracket(int i, int j, int k, const Rational& v);  // [e_i,e_j] += v e_k (and skew pair)

  /// Bracket of columns over any commutative ring containing Q.
  template <class S>
  Eigen::Matrix<S, Eigen::Dynamic, 1> bracket(const Eigen::Matrix<S, Eigen::Dynamic, 1>& x,
                                              const Eigen::Matrix<S, Eigen::Dynamic, 1>& y) const {
    Eigen::Matrix<S, Eigen::Dynamic, 1> out(dim_);
    for (int k = 0; k < dim_; ++k) {
      S acc(0);
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          const Rational& ckij = c_[static_cast<size_t>(k)](i, j);
          if (ckij == 0) continue;
          acc += x(i) * y(j) * S(ckij);
        }
      out(k) = acc;
    }
    return out;
  }

  RatVec bracket_basis(int i, int j) const;  // [e_i, e_j]

  /// ad_r as a matrix (over the same ring as r): ad(r) s = [r, s].
  template <class S>
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> ad(
      const Eigen::Matrix<S, Eigen::Dynamic, 1>& r) const {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(dim_, dim_);
    m.setConstant(S(0));
    for (int k = 0; k < dim_; ++k)
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
          const Rational& ckij = c_[static_cast<size_t>(k)](i, j);
          if (ckij == 0) continue;
          m(k, j) += r(i) * S(ckij);
        }
    return m;
  }

  RatMat ad_basis(int i) const;  // ad(e_i) over Q

  bool is_abelian() const;

 private:
  int dim_ = 0;
  std::vector<RatMat> c_;  // c_[k](i,j) = c^k_{ij}
};

/// Lie algebra with an ad-invariant non-degenerate symmetric form.
struct QuadLieAlgebra {
  LieAlgebra algebra;
  RatMat metric;

  int dim() const { return algebra.dim(); }
  void validate() const;  // symmetry, non-degeneracy, invariance, Jacobi
};

/// Salamon-style differential spec: entry k describes d e^{k} as a sum of
/// coefficiented index pairs, e.g. "0", "12", "14", "-12+2*35".  Convention:
/// d xi(x,y) = -xi([x,y]), so de^4 = e^1^e^2 yields [e_1,e_2] = -e_4.
LieAlgebra from_differentials(const std::vector<std::string>& diffs);

struct JacobiReport {
  std::vector<std::array<int, 3>> violations;  // 1-based triples
  bool pass() const { return violations.empty(); }
};

JacobiReport jacobi_check(const LieAlgebra& l);

/// Basis of the space of ad-invariant symmetric bilinear forms
/// { b : b([x,y],z) + b(y,[x,z]) = 0 }.
struct ParamSymFamily {
  std::vector<RatMat> basis;
  int dimension() const { return static_cast<int>(basis.size()); }
  /// Entry (i,j) of the general element as a covector in the parameters.
  RatVec entry_functional(int i, int j) const;
};

ParamSymFamily invariant_sym_forms(const LieAlgebra& l);

struct ComplexStructureReport {
  bool square = false;      // J^2 = -Id
  bool skew = false;        // g(Jx,y) + g(x,Jy) = 0
  bool integrable = false;  // algebraic Nijenhuis vanishes
};

ComplexStructureReport complex_structure_check(const LieAlgebra& l, const RatMat& g,
                                               const RatMat& j);

/// Independent integrability oracle: the +i eigenspace of J in the
/// complexified algebra is closed under the bracket.
bool complex_structure_integrable_eigen(const LieAlgebra& l, const RatMat& j);

/// Double g + g* with bracket [X+xi, Y+eta] = [X,Y] - eta o ad_X + xi o ad_Y
/// and the natural neutral pairing.
QuadLieAlgebra build_double(const LieAlgebra& l);

struct AdmissiblePairReport {
  bool subalgebra = false;
  bool spans_with_conjugate = false;
  bool omega_closed = false;
  bool imaginary_part_nondegenerate = false;
  std::optional<std::pair<int, int>> closure_witness;  // failing basis pair
  bool pass() const {
    return subalgebra && spans_with_conjugate && omega_closed && imaginary_part_nondegenerate;
  }
};

/// k given as spanning columns over Q(i); omega as a complex matrix in the
/// k-basis (antisymmetric).
AdmissiblePairReport admissible_pair_check(const LieAlgebra& l, const GqMat& k_basis,
                                           const GqMat& omega);

struct AutomorphismReport {
  bool bracket = false;
  bool isometry = false;
  bool commutes_with_j = false;
  bool pass() const { return bracket && isometry && commutes_with_j; }
};

AutomorphismReport automorphism_check(const LieAlgebra& l, const RatMat& g, const RatMat& j,
                                      const RatMat& phi);

}  // namespace ck
