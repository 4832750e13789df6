#pragma once

#include <string>
#include <vector>

#include "courantkit/polynomial.hpp"

namespace ck {

/// A named coordinate chart; the index set of all tensor components.
/// Desk-scale cap: 1 <= dim <= kMaxVars.
struct Chart {
  std::vector<std::string> coords;

  int dim() const { return static_cast<int>(coords.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
      if (coords[static_cast<size_t>(i)] == name) return i;
    return -1;
  }

  void validate() const;

  static Chart standard(int n);

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords == b.coords; }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* where) {
  if (a != b) throw InputError(std::string(where) + ": chart mismatch");
}

/// Polynomial literal grammar: signed rational coefficients, '^' powers,
/// coordinate identifiers, 'i' for the Gaussian unit, '*' products,
/// parentheses.  E.g. "3/2*x1^2*x3 - x2".
Polynomial<GaussQ> parse_poly_gauss(const std::string& text, const Chart& chart);
Scalar parse_poly(const std::string& text, const Chart& chart);

std::string to_string(const Scalar& p, const Chart& chart);
std::string to_string(const Polynomial<GaussQ>& p, const Chart& chart);

/// Leading-monomial description used in reports: "zero" or e.g. "-3/2*x1^2".
std::string residual_summary(const Scalar& p, const Chart& chart);

}  // namespace ck
