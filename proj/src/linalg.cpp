#include "courantkit/linalg.hpp"

#include <map>

namespace ck {

std::tuple<int, int, int> signature(const RatMat& g) {
  if (g.rows() != g.cols()) throw PreconditionError("signature: square matrix required");
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (g(i, j) != g(j, i)) throw PreconditionError("signature: symmetric matrix required");
  RatMat m = g;
  const Eigen::Index n = m.rows();
  int pos = 0, neg = 0;
  Eigen::Index k = 0;
  while (k < n) {
    if (m(k, k) == 0) {
      // Bring a nonzero onto the diagonal by a congruence move.
      Eigen::Index j = -1;
      for (Eigen::Index i = k; i < n; ++i)
        if (m(i, i) != 0) {
          j = i;
          break;
        }
      if (j >= 0) {
        m.row(k).swap(m.row(j));
        m.col(k).swap(m.col(j));
      } else {
        Eigen::Index a = -1, b = -1;
        for (Eigen::Index i = k; i < n && a < 0; ++i)
          for (Eigen::Index l = i + 1; l < n && a < 0; ++l)
            if (m(i, l) != 0) {
              a = i;
              b = l;
            }
        if (a < 0) break;  // remaining block is zero
        m.row(a) += m.row(b);
        m.col(a) += m.col(b);
        m.row(k).swap(m.row(a));
        m.col(k).swap(m.col(a));
      }
    }
    Rational d = m(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / d;
      m.row(i) -= f * m.row(k);
      m.col(i) -= f * m.col(k);
    }
    if (d > 0) ++pos;
    else ++neg;
    ++k;
  }
  return {pos, neg, static_cast<int>(n) - pos - neg};
}

namespace {

// det of the submatrix made of the given rows (ascending, as bitmask) and the
// first popcount(mask) columns of the column list; memoized over masks.
Scalar det_minor(const PolyMat& m, const std::vector<int>& cols, unsigned rows_mask,
                 std::map<unsigned, Scalar>& memo) {
  if (rows_mask == 0) return Scalar(1);
  auto it = memo.find(rows_mask);
  if (it != memo.end()) return it->second;
  int k = __builtin_popcount(rows_mask);
  int col = cols[static_cast<size_t>(k - 1)];
  Scalar acc;
  int seen = 0;
  for (int i = 0; i < static_cast<int>(m.rows()); ++i) {
    if (!(rows_mask & (1u << i))) continue;
    ++seen;
    const Scalar& entry = m(i, col);
    if (!entry.is_zero()) {
      Scalar sub = det_minor(m, cols, rows_mask & ~(1u << i), memo);
      Scalar t = entry * sub;
      if ((k - seen) % 2 == 1) t = -t;
      acc += t;
    }
  }
  memo[rows_mask] = acc;
  return acc;
}

}  // namespace

Scalar poly_det(const PolyMat& m) {
  if (m.rows() != m.cols()) throw PreconditionError("poly_det: square matrix required");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return Scalar(1);
  std::vector<int> cols(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)] = j;
  std::map<unsigned, Scalar> memo;
  return det_minor(m, cols, (1u << n) - 1u, memo);
}

std::optional<PolyMat> poly_inverse(const PolyMat& m) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw PreconditionError("poly_inverse: square matrix required");
  Scalar d = poly_det(m);
  if (!d.is_constant() || d.is_zero()) return std::nullopt;
  Rational dv = d.constant_value();
  PolyMat adj = poly_zero_mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // cofactor C_ji: delete row j, column i
      PolyMat sub = poly_zero_mat(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          sub(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      Scalar cof = poly_det(sub);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(i, j) = cof / dv;
    }
  return adj;
}

}  // namespace ck
