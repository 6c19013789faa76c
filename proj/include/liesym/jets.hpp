#pragma once

#include "liesym/chart.hpp"
#include "liesym/ratfunc.hpp"

#include <string>
#include <vector>

namespace liesym {

/// xi d/ds + eta^a d/dx^a on the (s, x) bundle.
struct BundleVectorField {
  std::string name;
  RatFunc xi;
  std::vector<RatFunc> eta;

  /// Components in the order (xi, eta^0, ..., eta^{n-1}).
  std::vector<RatFunc> components() const;
  static BundleVectorField from_components(std::string name, const std::vector<RatFunc> &c);
  bool is_zero() const;
};

BundleVectorField operator+(const BundleVectorField &a, const BundleVectorField &b);
BundleVectorField operator*(const RatFunc &c, const BundleVectorField &a);

/// Throws MathError if a component involves jet symbols or the arity is off.
void validate_field(const BundleVectorField &X, const Chart &chart);

/// D = d/ds + xdot^a d/dx^a + xddot^a d/dxdot^a. The input may not contain
/// second-order jets.
RatFunc total_derivative(const RatFunc &e, const Chart &chart);

struct ProlongedField {
  BundleVectorField base;
  int order = 0;
  std::vector<RatFunc> eta1; // first-order coefficients
  std::vector<RatFunc> eta2; // second-order coefficients (order 2 only)
};

/// eta_(1) = D eta - xdot D xi, eta_(2) = D eta_(1) - xddot D xi.
ProlongedField prolong(const BundleVectorField &X, const Chart &chart, int order);

/// Applies the prolonged field to f(s, x, xdot[, xddot]).
RatFunc apply_prolonged(const ProlongedField &P, const RatFunc &f, const Chart &chart);

/// X(f) for f in (s, x) only: xi f_s + eta^a f_{x^a}.
RatFunc apply_field(const BundleVectorField &X, const RatFunc &f, const Chart &chart);

} // namespace liesym
