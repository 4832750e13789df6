#include "courantkit/lie_algebra.hpp"

#include <cctype>

namespace ck {

LieAlgebra::LieAlgebra(int dim) : dim_(dim) {
  if (dim < 1 || dim > 16) throw InputError("lie algebra: dimension out of range");
  c_.resize(static_cast<size_t>(dim));
  for (auto& m : c_) {
    m.resize(dim, dim);
    m.setConstant(Rational(0));
  }
}

void LieAlgebra::set_bracket(int i, int j, int k, const Rational& v) {
  if (i == j) {
    if (v != 0) throw InputError("lie algebra: [e_i,e_i] must vanish");
    return;
  }
  c_[static_cast<size_t>(k)](i, j) += v;
  c_[static_cast<size_t>(k)](j, i) -= v;
}

RatVec LieAlgebra::bracket_basis(int i, int j) const {
  RatVec out(dim_);
  for (int k = 0; k < dim_; ++k) out(k) = c_[static_cast<size_t>(k)](i, j);
  return out;
}

RatMat LieAlgebra::ad_basis(int i) const {
  RatMat m(dim_, dim_);
  m.setConstant(Rational(0));
  for (int k = 0; k < dim_; ++k)
    for (int j = 0; j < dim_; ++j) m(k, j) = c_[static_cast<size_t>(k)](i, j);
  return m;
}

bool LieAlgebra::is_abelian() const {
  for (auto& m : c_)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) return false;
  return true;
}

void QuadLieAlgebra::validate() const {
  const int m = dim();
  if (metric.rows() != m || metric.cols() != m)
    throw InputError("quadratic lie algebra: metric shape mismatch");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (metric(i, j) != metric(j, i))
        throw InputError("quadratic lie algebra: metric must be symmetric");
  if (det_field<Rational>(metric) == 0)
    throw InputError("quadratic lie algebra: metric must be non-degenerate");
  if (!jacobi_check(algebra).pass())
    throw InputError("quadratic lie algebra: Jacobi identity fails");
  // ad-invariance: <[x,y],z> + <y,[x,z]> = 0 on basis triples
  for (int i = 0; i < m; ++i) {
    RatMat adi = algebra.ad_basis(i);
    RatMat r = adi.transpose() * metric + metric * adi;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (r(a, b) != 0)
          throw InputError("quadratic lie algebra: metric is not ad-invariant");
  }
}

namespace {

struct DiffParser {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& m) {
    throw InputError("differential '" + s + "': " + m);
  }

  // term := [coeff '*'] digit digit ;  coeff := rational
  // entry := '0' | term (('+'|'-') term)*
  std::vector<std::tuple<int, int, Rational>> parse(int dim) {
    std::vector<std::tuple<int, int, Rational>> out;
    skip_ws();
    if (pos < s.size() && s[pos] == '0' && pos + 1 == s.size()) return out;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    while (true) {
      auto [i, j, c] = term(dim);
      out.emplace_back(i, j, neg ? Rational(-c) : c);
      skip_ws();
      if (pos >= s.size()) break;
      if (s[pos] == '+') neg = false;
      else if (s[pos] == '-') neg = true;
      else fail("expected '+' or '-'");
      ++pos;
    }
    return out;
  }

  std::tuple<int, int, Rational> term(int dim) {
    skip_ws();
    Rational coeff(1);
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    std::string tok = s.substr(start, pos - start);
    skip_ws();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      coeff = rat_from_string(tok);
      skip_ws();
      start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      tok = s.substr(start, pos - start);
    }
    if (tok.size() != 2 || !std::isdigit(static_cast<unsigned char>(tok[0])) ||
        !std::isdigit(static_cast<unsigned char>(tok[1])))
      fail("expected a two-digit index pair");
    int i = tok[0] - '0', j = tok[1] - '0';
    if (i < 1 || j < 1 || i > dim || j > dim) fail("index out of range");
    if (i >= j) fail("index pair must be increasing");
    return {i, j, coeff};
  }
};

}  // namespace

LieAlgebra from_differentials(const std::vector<std::string>& diffs) {
  const int dim = static_cast<int>(diffs.size());
  LieAlgebra l(dim);
  for (int k = 0; k < dim; ++k) {
    DiffParser p{diffs[static_cast<size_t>(k)]};
    for (auto& [i, j, c] : p.parse(dim)) {
      // d xi(x,y) = -xi([x,y]):  de^k = c e^i ^ e^j  =>  c^k_{ij} = -c
      l.set_bracket(i - 1, j - 1, k, -c);
    }
  }
  return l;
}

JacobiReport jacobi_check(const LieAlgebra& l) {
  JacobiReport rep;
  const int m = l.dim();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        RatVec r = l.bracket<Rational>(l.bracket_basis(i, j), unit_vec(m, k)) +
                   l.bracket<Rational>(l.bracket_basis(j, k), unit_vec(m, i)) +
                   l.bracket<Rational>(l.bracket_basis(k, i), unit_vec(m, j));
        bool zero = true;
        for (int a = 0; a < m; ++a) zero = zero && r(a) == 0;
        if (!zero) rep.violations.push_back({i + 1, j + 1, k + 1});
      }
  return rep;
}

ParamSymFamily invariant_sym_forms(const LieAlgebra& l) {
  const int m = l.dim();
  const int nunk = m * (m + 1) / 2;
  auto unk = [m](int p, int q) {
    if (p > q) std::swap(p, q);
    return p * m - p * (p - 1) / 2 + (q - p);
  };
  std::vector<RatVec> rows;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = j; k < m; ++k) {
        RatVec row(nunk);
        row.setConstant(Rational(0));
        RatVec bij = l.bracket_basis(i, j);
        RatVec bik = l.bracket_basis(i, k);
        for (int a = 0; a < m; ++a) {
          if (bij(a) != 0) row(unk(a, k)) += bij(a);
          if (bik(a) != 0) row(unk(j, a)) += bik(a);
        }
        bool zero = true;
        for (int t = 0; t < nunk; ++t) zero = zero && row(t) == 0;
        if (!zero) rows.push_back(row);
      }
  RatMat sys(static_cast<Eigen::Index>(rows.size()), nunk);
  for (size_t r = 0; r < rows.size(); ++r) sys.row(static_cast<Eigen::Index>(r)) = rows[r];
  RatMat ns = nullspace(sys);
  ParamSymFamily fam;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    RatMat b(m, m);
    for (int p = 0; p < m; ++p)
      for (int q = p; q < m; ++q) {
        b(p, q) = ns(unk(p, q), c);
        b(q, p) = b(p, q);
      }
    fam.basis.push_back(b);
  }
  return fam;
}

RatVec ParamSymFamily::entry_functional(int i, int j) const {
  RatVec f(static_cast<Eigen::Index>(basis.size()));
  for (size_t t = 0; t < basis.size(); ++t) f(static_cast<Eigen::Index>(t)) = basis[t](i, j);
  return f;
}

ComplexStructureReport complex_structure_check(const LieAlgebra& l, const RatMat& g,
                                               const RatMat& j) {
  const int m = l.dim();
  ComplexStructureReport rep;
  RatMat jj = j * j + RatMat::Identity(m, m);
  rep.square = mat_is_zero(jj);
  RatMat sk = j.transpose() * g + g * j;
  rep.skew = mat_is_zero(sk);
  rep.integrable = true;
  for (int a = 0; a < m && rep.integrable; ++a)
    for (int b = a + 1; b < m && rep.integrable; ++b) {
      RatVec ea = unit_vec(m, a), eb = unit_vec(m, b);
      RatVec n = l.bracket<Rational>(RatVec(j * ea), RatVec(j * eb)) - l.bracket_basis(a, b) -
                 j * (l.bracket<Rational>(RatVec(j * ea), eb) + l.bracket<Rational>(ea, RatVec(j * eb)));
      for (int t = 0; t < m; ++t)
        if (n(t) != 0) rep.integrable = false;
    }
  return rep;
}

bool complex_structure_integrable_eigen(const LieAlgebra& l, const RatMat& j) {
  const int m = l.dim();
  GqMat basis(m, m);
  GaussQ iu = GaussQ::unit_i();
  for (int k = 0; k < m; ++k)
    for (int r = 0; r < m; ++r)
      basis(r, k) = GaussQ(Rational(r == k ? 1 : 0)) - iu * GaussQ(j(r, k));
  GqMat eig = column_space(basis);
  for (Eigen::Index a = 0; a < eig.cols(); ++a)
    for (Eigen::Index b = a + 1; b < eig.cols(); ++b) {
      GqVec br = l.bracket<GaussQ>(GqVec(eig.col(a)), GqVec(eig.col(b)));
      GqMat ext(m, eig.cols() + 1);
      ext.leftCols(eig.cols()) = eig;
      ext.col(eig.cols()) = br;
      if (rank_of(ext) != rank_of(eig)) return false;
    }
  return true;
}

QuadLieAlgebra build_double(const LieAlgebra& l) {
  if (!jacobi_check(l).pass())
    throw PreconditionError("build_double: input fails the Jacobi identity");
  const int m = l.dim();
  LieAlgebra d(2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RatVec b = l.bracket_basis(i, j);
      for (int k = 0; k < m; ++k)
        if (b(k) != 0) d.set_bracket(i, j, k, b(k));
    }
  // [e_i, f^j] = -f^j o ad_{e_i} = -sum_c c^j_{ic} f^c
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int c = 0; c < m; ++c) {
        Rational v = l.structure_constant(j, i, c);
        if (v != 0) d.set_bracket(i, m + j, m + c, -v);
      }
  QuadLieAlgebra q;
  q.algebra = d;
  q.metric.resize(2 * m, 2 * m);
  q.metric.setConstant(Rational(0));
  for (int i = 0; i < m; ++i) {
    q.metric(i, m + i) = 1;
    q.metric(m + i, i) = 1;
  }
  q.validate();
  return q;
}

AdmissiblePairReport admissible_pair_check(const LieAlgebra& l, const GqMat& k_basis,
                                           const GqMat& omega) {
  const int m = l.dim();
  const Eigen::Index kd = k_basis.cols();
  if (k_basis.rows() != m) throw InputError("admissible pair: basis shape mismatch");
  if (omega.rows() != kd || omega.cols() != kd)
    throw InputError("admissible pair: omega must be square in the k-basis");
  for (Eigen::Index a = 0; a < kd; ++a)
    for (Eigen::Index b = 0; b <= a; ++b)
      if (!(omega(a, b) + omega(b, a)).is_zero())
        throw InputError("admissible pair: omega must be antisymmetric");

  AdmissiblePairReport rep;

  // subalgebra
  rep.subalgebra = true;
  for (Eigen::Index a = 0; a < kd && rep.subalgebra; ++a)
    for (Eigen::Index b = a + 1; b < kd && rep.subalgebra; ++b) {
      GqVec br = l.bracket<GaussQ>(GqVec(k_basis.col(a)), GqVec(k_basis.col(b)));
      if (!spans_contain<GaussQ>(k_basis, GqMat(br))) {
        rep.subalgebra = false;
        rep.closure_witness = {static_cast<int>(a) + 1, static_cast<int>(b) + 1};
      }
    }

  // k + conj(k) = full complexification
  GqMat both(m, 2 * kd);
  both.leftCols(kd) = k_basis;
  for (Eigen::Index c = 0; c < kd; ++c)
    for (int r = 0; r < m; ++r) both(r, kd + c) = k_basis(r, c).conj();
  rep.spans_with_conjugate = rank_of(both) == m;

  // Chevalley-Eilenberg d omega = 0 on k: sum_cyc omega([x,y], z) = 0.
  // Needs the bracket back in k-coordinates, so only decided when k is a
  // subalgebra.
  rep.omega_closed = true;
  if (rep.subalgebra) {
    auto in_k_coords = [&](const GqVec& v) -> std::optional<GqVec> {
      return solve_linear<GaussQ>(k_basis, v);
    };
    for (Eigen::Index a = 0; a < kd; ++a)
      for (Eigen::Index b = a + 1; b < kd; ++b)
        for (Eigen::Index c = b + 1; c < kd; ++c) {
          GaussQ acc(0);
          const Eigen::Index tri[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
          for (auto& t : tri) {
            GqVec br = l.bracket<GaussQ>(GqVec(k_basis.col(t[0])), GqVec(k_basis.col(t[1])));
            auto coords = in_k_coords(br);
            if (!coords) throw PreconditionError("admissible pair: bracket left the subalgebra");
            for (Eigen::Index s = 0; s < kd; ++s) acc += omega(s, t[2]) * (*coords)(s);
          }
          if (!acc.is_zero()) rep.omega_closed = false;
        }
  } else {
    rep.omega_closed = false;
  }

  // Im(omega) restricted to k n g must be non-degenerate.  Realify k, cut by
  // Im = 0, and express the real points in k-coordinates.
  {
    RatMat real_sys(2 * m, 2 * kd);  // columns: Re/Im parts of (k-basis coeffs a + i b)
    // vector = k_basis * (a + i b); realify rows
    for (Eigen::Index c = 0; c < kd; ++c)
      for (int r = 0; r < m; ++r) {
        real_sys(r, c) = k_basis(r, c).re;            // Re from a
        real_sys(m + r, c) = k_basis(r, c).im;        // Im from a
        real_sys(r, kd + c) = -k_basis(r, c).im;      // Re from b
        real_sys(m + r, kd + c) = k_basis(r, c).re;   // Im from b
      }
    // want Im part zero: rows m..2m of real_sys * coeffs = 0
    RatMat im_rows = real_sys.bottomRows(m);
    RatMat ker = nullspace(im_rows);
    // each kernel column gives real coefficients (a,b); the element of k is
    // k_basis * (a + i b) which is then real
    GqMat real_pts(m, ker.cols());
    GqMat coords(kd, ker.cols());
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
      GqVec coeff(kd);
      for (Eigen::Index s = 0; s < kd; ++s) coeff(s) = GaussQ(ker(s, c), ker(kd + s, c));
      coords.col(c) = coeff;
      real_pts.col(c) = k_basis * coeff;
    }
    // reduce to a basis of k n g (columns may be dependent over R... they are
    // independent over R by construction of nullspace)
    const Eigen::Index q = ker.cols();
    if (q == 0) {
      rep.imaginary_part_nondegenerate = true;  // vacuous on the zero space
    } else {
      RatMat im_omega(q, q);
      for (Eigen::Index a = 0; a < q; ++a)
        for (Eigen::Index b = 0; b < q; ++b) {
          GaussQ val(0);
          for (Eigen::Index s = 0; s < kd; ++s)
            for (Eigen::Index t = 0; t < kd; ++t)
              val += omega(s, t) * coords(s, a) * coords(t, b);
          im_omega(a, b) = val.im;
        }
      rep.imaginary_part_nondegenerate = det_field<Rational>(im_omega) != 0;
    }
  }
  return rep;
}

AutomorphismReport automorphism_check(const LieAlgebra& l, const RatMat& g, const RatMat& j,
                                      const RatMat& phi) {
  const int m = l.dim();
  AutomorphismReport rep;
  rep.bracket = true;
  for (int a = 0; a < m && rep.bracket; ++a)
    for (int b = a + 1; b < m && rep.bracket; ++b) {
      RatVec lhs = phi * l.bracket_basis(a, b);
      RatVec rhs = l.bracket<Rational>(RatVec(phi.col(a)), RatVec(phi.col(b)));
      for (int t = 0; t < m; ++t)
        if (lhs(t) != rhs(t)) rep.bracket = false;
    }
  rep.isometry = mat_is_zero<Rational>(phi.transpose() * g * phi - g);
  rep.commutes_with_j = mat_is_zero<Rational>(phi * j - j * phi);
  return rep;
}

}  // namespace ck
