#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "courantkit/rational.hpp"

namespace ck {

inline constexpr int kMaxVars = 8;

/// Exponent multi-index.  Entries beyond the active variable count are zero.
using Expo = std::array<std::uint8_t, kMaxVars>;

inline Expo zero_expo() { return Expo{}; }

inline int total_degree(const Expo& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded lexicographic order, stored descending so that map iteration goes
/// leading term first.  Any fixed order works; this one is pinned so reports
/// are byte-reproducible.
struct MonoOrderDesc {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;  // lexicographic on exponent tuples
  }
};

/// Multivariate polynomial over an exact field K on at most kMaxVars
/// variables.  Canonical form: no zero coefficients are stored.  A
/// zero-variable polynomial acts as a constant and combines with any
/// variable count (needed so Eigen's Scalar(0)/Scalar(1) temporaries mix
/// freely with chart-sized polynomials).
template <class K>
class Polynomial {
 public:
  using Terms = std::map<Expo, K, MonoOrderDesc>;

  Polynomial() = default;
  Polynomial(long c) { set_term(zero_expo(), K(c)); }
  Polynomial(const K& c) { set_term(zero_expo(), c); }

  static Polynomial constant(int nvars, K c) {
    Polynomial p;
    p.nvars_ = nvars;
    p.set_term(zero_expo(), std::move(c));
    return p;
  }

  static Polynomial variable(int nvars, int i, K coeff = K(1)) {
    if (i < 0 || i >= nvars) throw InputError("polynomial: variable index out of range");
    Polynomial p;
    p.nvars_ = nvars;
    Expo e{};
    e[static_cast<size_t>(i)] = 1;
    p.set_term(e, std::move(coeff));
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  K constant_value() const {
    if (terms_.empty()) return K(0);
    if (!is_constant()) throw PreconditionError("polynomial: not constant");
    return terms_.begin()->second;
  }
  int degree() const {
    int d = 0;
    for (auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }
  const Terms& terms() const { return terms_; }

  /// Leading term in the pinned monomial order; zero polynomial -> (0, 0).
  std::pair<Expo, K> leading() const {
    if (terms_.empty()) return {zero_expo(), K(0)};
    return *terms_.begin();
  }

  void set_term(const Expo& e, K c) {
    if (ck::is_zero(c))
      terms_.erase(e);
    else
      terms_[e] = std::move(c);
  }

  void add_term(const Expo& e, const K& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!ck::is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second += c;
      if (ck::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    merge_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    merge_vars(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.nvars_ = merged_vars(a, b);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Expo e{};
        for (int k = 0; k < kMaxVars; ++k)
          e[static_cast<size_t>(k)] =
              static_cast<std::uint8_t>(ea[static_cast<size_t>(k)] + eb[static_cast<size_t>(k)]);
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Polynomial& operator*=(const K& c) {
    if (ck::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }
  Polynomial& operator/=(const K& c) {
    if (ck::is_zero(c)) throw std::domain_error("polynomial: division by zero");
    for (auto& [e, v] : terms_) v /= c;
    return *this;
  }
  friend Polynomial operator*(Polynomial p, const K& c) { return p *= c; }
  friend Polynomial operator*(const K& c, Polynomial p) { return p *= c; }
  friend Polynomial operator/(Polynomial p, const K& c) { return p /= c; }

  /// Division by a polynomial that must be a nonzero constant (the units of
  /// K[x]); anything else is refused.
  friend Polynomial operator/(Polynomial p, const Polynomial& q) {
    if (!q.is_constant() || q.is_zero())
      throw PreconditionError("polynomial: division only by nonzero constants");
    return p /= q.constant_value();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative(int i) const {
    Polynomial r;
    r.nvars_ = nvars_;
    for (auto& [e, c] : terms_) {
      auto ei = e[static_cast<size_t>(i)];
      if (ei == 0) continue;
      Expo d = e;
      d[static_cast<size_t>(i)] = static_cast<std::uint8_t>(ei - 1);
      r.add_term(d, c * K(ei));
    }
    return r;
  }

  /// Evaluation into a field F in which K embeds via F(K).
  template <class F>
  F eval(const std::vector<F>& point) const {
    if (static_cast<int>(point.size()) < nvars_)
      throw InputError("polynomial: evaluation point has too few coordinates");
    F acc(0);
    for (auto& [e, c] : terms_) {
      F t{c};
      for (int k = 0; k < nvars_; ++k)
        for (int p = 0; p < e[static_cast<size_t>(k)]; ++p) t *= point[static_cast<size_t>(k)];
      acc += t;
    }
    return acc;
  }

 private:
  static int merged_vars(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ == b.nvars_) return a.nvars_;
    if (a.is_constant() || b.is_constant()) return std::max(a.nvars_, b.nvars_);
    throw InputError("polynomial: mixing different variable counts");
  }
  void merge_vars(const Polynomial& o) { nvars_ = merged_vars(*this, o); }

  int nvars_ = 0;
  Terms terms_;
};

using Scalar = Polynomial<Rational>;

inline Scalar sconst(int nvars, Rational c) { return Scalar::constant(nvars, std::move(c)); }

template <class K>
inline bool is_zero(const Polynomial<K>& p) {
  return p.is_zero();
}

}  // namespace ck

namespace Eigen {

template <class K>
struct NumTraits<ck::Polynomial<K>> : GenericNumTraits<ck::Polynomial<K>> {
  typedef ck::Polynomial<K> Real;
  typedef ck::Polynomial<K> NonInteger;
  typedef ck::Polynomial<K> Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 1000,
    MulCost = 4000
  };
};

}  // namespace Eigen

namespace ck {

using PolyMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using PolyVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline PolyMat poly_zero_mat(Eigen::Index r, Eigen::Index c) {
  PolyMat m(r, c);
  m.setConstant(Scalar());
  return m;
}

inline PolyVec poly_zero_vec(Eigen::Index n) {
  PolyVec v(n);
  v.setConstant(Scalar());
  return v;
}

inline PolyMat poly_identity(Eigen::Index n) {
  PolyMat m = poly_zero_mat(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

inline PolyMat to_poly(const RatMat& m) {
  PolyMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Scalar(m(i, j));
  return out;
}

inline bool is_zero(const PolyMat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

inline bool is_zero(const PolyVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

/// Evaluates every entry at a rational point.
RatMat eval_at(const PolyMat& m, const std::vector<Rational>& point);
RatVec eval_at(const PolyVec& v, const std::vector<Rational>& point);

}  // namespace ck
