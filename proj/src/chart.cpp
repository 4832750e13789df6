#include "courantkit/chart.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace ck {

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  try {
    Rational q(s);
    if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational literal: '" + s + "'");
  }
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

std::string to_string(const GaussQ& z) {
  if (z.im == 0) return to_string(z.re);
  std::ostringstream os;
  if (z.re != 0) {
    os << z.re;
    os << (z.im > 0 ? "+" : "-");
    Rational a = abs(z.im);
    if (a != 1) os << a << "*";
    os << "i";
    return os.str();
  }
  if (z.im == 1) return "i";
  if (z.im == -1) return "-i";
  os << z.im << "*i";
  return os.str();
}

void Chart::validate() const {
  if (dim() < 1 || dim() > kMaxVars)
    throw InputError("dimension must be between 1 and " + std::to_string(kMaxVars));
  std::set<std::string> seen;
  for (auto& c : coords) {
    if (c.empty() || !(std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_'))
      throw InputError("bad coordinate name '" + c + "'");
    if (c == "i") throw InputError("'i' is reserved for the Gaussian unit");
    if (!seen.insert(c).second) throw InputError("duplicate coordinate '" + c + "'");
  }
}

Chart Chart::standard(int n) {
  Chart c;
  for (int i = 1; i <= n; ++i) c.coords.push_back("x" + std::to_string(i));
  c.validate();
  return c;
}

namespace {

// Recursive-descent parser for the polynomial literal grammar.
struct PolyParser {
  const std::string& s;
  const Chart& chart;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw InputError("polynomial '" + s + "' at position " + std::to_string(pos) + ": " + msg);
  }

  Polynomial<GaussQ> parse() {
    auto p = expr();
    skip_ws();
    if (pos != s.size()) fail("trailing characters");
    return p;
  }

  Polynomial<GaussQ> expr() {
    bool neg = false;
    skip_ws();
    if (eat('+')) neg = false;
    else if (eat('-')) neg = true;
    auto acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Polynomial<GaussQ> term() {
    auto acc = factor();
    while (true) {
      skip_ws();
      if (eat('*')) acc = acc * factor();
      else break;
    }
    return acc;
  }

  Polynomial<GaussQ> factor() {
    skip_ws();
    if (pos >= s.size()) fail("expected factor");
    if (eat('(')) {
      auto p = expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_pow(p);
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) return maybe_pow(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return maybe_pow(identifier());
    fail("unexpected character");
  }

  Polynomial<GaussQ> maybe_pow(Polynomial<GaussQ> base) {
    skip_ws();
    if (!eat('^')) return base;
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected exponent");
    int e = std::stoi(s.substr(start, pos - start));
    auto acc = Polynomial<GaussQ>(1);
    for (int k = 0; k < e; ++k) acc = acc * base;
    return acc;
  }

  Polynomial<GaussQ> number() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string num = s.substr(start, pos - start);
    if (peek('/')) {
      ++pos;
      skip_ws();
      size_t dstart = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (dstart == pos) fail("expected denominator");
      num += "/" + s.substr(dstart, pos - dstart);
    }
    return Polynomial<GaussQ>::constant(chart.dim(), GaussQ(rat_from_string(num)));
  }

  Polynomial<GaussQ> identifier() {
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    if (name == "i") return Polynomial<GaussQ>::constant(chart.dim(), GaussQ::unit_i());
    int idx = chart.index_of(name);
    if (idx < 0) fail("unknown coordinate '" + name + "'");
    return Polynomial<GaussQ>::variable(chart.dim(), idx);
  }
};

template <class K>
std::string poly_to_string(const Polynomial<K>& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.terms()) {
    std::string cs = to_string(c);
    bool has_vars = total_degree(e) > 0;
    // Composite coefficients (e.g. "1-2*i") are parenthesized as a whole;
    // simple ones get their sign folded into the separator.
    bool composite = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos;
    if (composite) {
      if (!first) os << " + ";
      if (has_vars) os << "(" << cs << ")*";
      else os << "(" << cs << ")";
    } else {
      bool neg = !cs.empty() && cs[0] == '-';
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      if (neg) cs = cs.substr(1);
      if (!has_vars || cs != "1") {
        os << cs;
        if (has_vars) os << "*";
      }
    }
    bool firstv = true;
    for (int k = 0; k < kMaxVars; ++k) {
      int ek = e[static_cast<size_t>(k)];
      if (ek == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << chart.coords[static_cast<size_t>(k)];
      if (ek > 1) os << "^" << ek;
    }
    first = false;
  }
  return os.str();
}

}  // namespace

Polynomial<GaussQ> parse_poly_gauss(const std::string& text, const Chart& chart) {
  PolyParser parser{text, chart};
  return parser.parse();
}

Scalar parse_poly(const std::string& text, const Chart& chart) {
  auto pg = parse_poly_gauss(text, chart);
  Scalar out;
  for (auto& [e, c] : pg.terms()) {
    if (c.im != 0)
      throw InputError("polynomial '" + text + "': Gaussian unit not allowed here");
    Scalar t = Scalar::constant(chart.dim(), c.re);
    Expo ee = e;
    Scalar mono = Scalar::constant(chart.dim(), Rational(1));
    for (int k = 0; k < chart.dim(); ++k)
      for (int q = 0; q < ee[static_cast<size_t>(k)]; ++q)
        mono *= Scalar::variable(chart.dim(), k);
    out += t * mono;
  }
  return out;
}

std::string to_string(const Scalar& p, const Chart& chart) { return poly_to_string(p, chart); }
std::string to_string(const Polynomial<GaussQ>& p, const Chart& chart) {
  return poly_to_string(p, chart);
}

std::string residual_summary(const Scalar& p, const Chart& chart) {
  if (p.is_zero()) return "zero";
  auto [e, c] = p.leading();
  Scalar lead;
  lead.set_term(e, c);
  // Rebuild with the right variable count for printing.
  Scalar term = Scalar::constant(chart.dim(), Rational(0));
  term += lead;
  return poly_to_string(term, chart);
}

RatMat eval_at(const PolyMat& m, const std::vector<Rational>& point) {
  RatMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(point);
  return out;
}

RatVec eval_at(const PolyVec& v, const std::vector<Rational>& point) {
  RatVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i).eval(point);
  return out;
}

}  // namespace ck
