#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "courantkit/polynomial.hpp"

namespace ck {

/// Reduced row echelon form over an exact field.  Pivoting is deterministic:
/// scan columns left to right, take the first row with a nonzero entry.
template <class F>
struct Rref {
  Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> mat;
  std::vector<int> pivot_cols;
  int rank = 0;
};

template <class F>
Rref<F> rref(Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> m) {
  Rref<F> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    F inv = F(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      F f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.mat = std::move(m);
  return out;
}

template <class F>
int rank_of(const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& m) {
  return rref(m).rank;
}

template <class F>
bool mat_is_zero(const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class F>
bool vec_is_zero(const Eigen::Matrix<F, Eigen::Dynamic, 1>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

inline RatVec unit_vec(int n, int k) {
  RatVec v(n);
  v.setConstant(Rational(0));
  v(k) = 1;
  return v;
}

/// Nullspace basis as columns, from the RREF free columns.  Deterministic.
template <class F>
Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> nullspace(
    const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& m) {
  auto rr = rref(m);
  const Eigen::Index cols = m.cols();
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < cols; ++c) {
      if (pi < rr.pivot_cols.size() && rr.pivot_cols[pi] == c) ++pi;
      else free_cols.push_back(c);
    }
  }
  Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> basis(cols,
                                                         static_cast<Eigen::Index>(free_cols.size()));
  basis.setConstant(F(0));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis(fc, static_cast<Eigen::Index>(k)) = F(1);
    for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
      basis(rr.pivot_cols[pi], static_cast<Eigen::Index>(k)) =
          -rr.mat(static_cast<Eigen::Index>(pi), fc);
  }
  return basis;
}

/// Columns of the input indexed by RREF pivots: a basis of the column space.
template <class F>
Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> column_space(
    const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& m, std::vector<int>* pivots = nullptr) {
  auto rr = rref(m);
  Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> basis(
      m.rows(), static_cast<Eigen::Index>(rr.pivot_cols.size()));
  for (size_t k = 0; k < rr.pivot_cols.size(); ++k)
    basis.col(static_cast<Eigen::Index>(k)) = m.col(rr.pivot_cols[k]);
  if (pivots) *pivots = rr.pivot_cols;
  return basis;
}

/// One solution of A x = b, or nullopt when inconsistent.
template <class F>
std::optional<Eigen::Matrix<F, Eigen::Dynamic, 1>> solve_linear(
    const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<F, Eigen::Dynamic, 1>& b) {
  Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  auto rr = rref(aug);
  for (int p : rr.pivot_cols)
    if (p == a.cols()) return std::nullopt;
  Eigen::Matrix<F, Eigen::Dynamic, 1> x(a.cols());
  x.setConstant(F(0));
  for (size_t pi = 0; pi < rr.pivot_cols.size(); ++pi)
    x(rr.pivot_cols[pi]) = rr.mat(static_cast<Eigen::Index>(pi), a.cols());
  return x;
}

/// True when the columns of sub lie in the column span of big.
template <class F>
bool spans_contain(const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& big,
                   const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& sub) {
  int rb = rank_of(big);
  Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> both(big.rows(), big.cols() + sub.cols());
  both.leftCols(big.cols()) = big;
  both.rightCols(sub.cols()) = sub;
  return rank_of(both) == rb;
}

template <class F>
bool same_span(const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& a,
               const Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>& b) {
  return spans_contain(a, b) && spans_contain(b, a);
}

/// Determinant over a field by Gaussian elimination.
template <class F>
F det_field(Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic> m) {
  if (m.rows() != m.cols()) throw PreconditionError("det: square matrix required");
  const Eigen::Index n = m.rows();
  F det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = c; i < n; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return F(0);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    F inv = F(1) / m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      F f = m(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inertia (p, q, r) of a symmetric rational matrix, computed by exact
/// symmetric congruence reduction.
std::tuple<int, int, int> signature(const RatMat& g);

/// Determinant of a polynomial matrix (division-free minor expansion over
/// column subsets; fine at n <= 8).
Scalar poly_det(const PolyMat& m);

/// Inverse of a polynomial matrix whose determinant is a nonzero constant
/// (the invertible-over-the-ring case); nullopt otherwise.
std::optional<PolyMat> poly_inverse(const PolyMat& m);

}  // namespace ck
