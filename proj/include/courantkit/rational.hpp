#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace ck {

/// Thrown on malformed input (bad JSON, bad polynomial literals, shape
/// mismatches).  The CLI maps it to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a mathematical precondition of an operation is violated
/// (e.g. non-invertible B where invertibility is required).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q".
Rational rat_from_string(const std::string& s);

std::string to_string(const Rational& q);

// Gaussian rationals Q(i).  Used only for complexified pointwise linear
// algebra; the polynomial coefficient ring of the geometric core stays Q.
struct GaussQ {
  Rational re, im;

  GaussQ() : re(0), im(0) {}
  GaussQ(long v) : re(v), im(0) {}
  GaussQ(const Rational& r) : re(r), im(0) {}
  GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussQ unit_i() { return GaussQ(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussQ conj() const { return GaussQ(re, -im); }
  Rational norm() const { return re * re + im * im; }

  GaussQ operator-() const { return GaussQ(-re, -im); }
  GaussQ& operator+=(const GaussQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussQ& operator-=(const GaussQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussQ& operator*=(const GaussQ& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  GaussQ& operator/=(const GaussQ& o) {
    if (o.is_zero()) throw std::domain_error("GaussQ: division by zero");
    Rational n = o.norm();
    Rational r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = r;
    return *this;
  }
};

inline GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
inline GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
inline GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
inline GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
inline bool operator==(const GaussQ& a, const GaussQ& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

std::string to_string(const GaussQ& z);

// Field helpers shared by templated linear algebra.
inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const GaussQ& z) { return z.is_zero(); }
inline Rational conjugate(const Rational& q) { return q; }
inline GaussQ conjugate(const GaussQ& z) { return z.conj(); }

}  // namespace ck

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<ck::GaussQ> : GenericNumTraits<ck::GaussQ> {
  typedef ck::GaussQ Real;
  typedef ck::GaussQ NonInteger;
  typedef ck::GaussQ Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 300,
    MulCost = 400
  };
};

}  // namespace Eigen

namespace ck {

using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using GqMat = Eigen::Matrix<GaussQ, Eigen::Dynamic, Eigen::Dynamic>;
using GqVec = Eigen::Matrix<GaussQ, Eigen::Dynamic, 1>;

inline GqMat complexify(const RatMat& m) {
  GqMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = GaussQ(m(i, j));
  return out;
}

inline GqVec complexify(const RatVec& v) {
  GqVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = GaussQ(v(i));
  return out;
}

}  // namespace ck
