#include "liesym/jets.hpp"

#include "liesym/errors.hpp"

namespace liesym {

std::vector<RatFunc> BundleVectorField::components() const {
  std::vector<RatFunc> c{xi};
  c.insert(c.end(), eta.begin(), eta.end());
  return c;
}

BundleVectorField BundleVectorField::from_components(std::string name,
                                                     const std::vector<RatFunc> &c) {
  if (c.empty())
    throw MathError("vector field needs at least one component");
  BundleVectorField X;
  X.name = std::move(name);
  X.xi = c[0];
  X.eta.assign(c.begin() + 1, c.end());
  return X;
}

bool BundleVectorField::is_zero() const {
  if (!xi.is_zero())
    return false;
  for (const auto &e : eta)
    if (!e.is_zero())
      return false;
  return true;
}

BundleVectorField operator+(const BundleVectorField &a, const BundleVectorField &b) {
  if (a.eta.size() != b.eta.size())
    throw MathError("adding vector fields of different dimension");
  BundleVectorField r = a;
  r.xi += b.xi;
  for (std::size_t i = 0; i < r.eta.size(); ++i)
    r.eta[i] += b.eta[i];
  return r;
}

BundleVectorField operator*(const RatFunc &c, const BundleVectorField &a) {
  BundleVectorField r = a;
  r.xi = c * r.xi;
  for (auto &e : r.eta)
    e = c * e;
  return r;
}

void validate_field(const BundleVectorField &X, const Chart &chart) {
  if (X.eta.size() != chart.dim())
    throw MathError("field '" + X.name + "' has " + std::to_string(X.eta.size()) +
                    " eta components, chart has " + std::to_string(chart.dim()) + " coordinates");
  for (const auto &c : X.components())
    for (std::size_t i = 0; i < chart.dim(); ++i)
      if (c.depends_on(chart.dot(i)) || c.depends_on(chart.ddot(i)))
        throw MathError("field '" + X.name + "' depends on jet variables");
}

RatFunc total_derivative(const RatFunc &e, const Chart &chart) {
  const std::size_t n = chart.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (e.depends_on(chart.ddot(i)))
      throw MathError("total derivative: input already contains second-order jets");
  RatFunc r = derivative(e, chart.param);
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc dx = derivative(e, chart.coords[i]);
    if (!dx.is_zero())
      r += RatFunc::symbol(chart.dot(i)) * dx;
    RatFunc dv = derivative(e, chart.dot(i));
    if (!dv.is_zero())
      r += RatFunc::symbol(chart.ddot(i)) * dv;
  }
  return r;
}

ProlongedField prolong(const BundleVectorField &X, const Chart &chart, int order) {
  if (order != 1 && order != 2)
    throw MathError("prolongation order must be 1 or 2");
  validate_field(X, chart);
  ProlongedField P;
  P.base = X;
  P.order = order;
  const std::size_t n = chart.dim();
  RatFunc dxi = total_derivative(X.xi, chart);
  for (std::size_t a = 0; a < n; ++a)
    P.eta1.push_back(total_derivative(X.eta[a], chart) - RatFunc::symbol(chart.dot(a)) * dxi);
  if (order == 2)
    for (std::size_t a = 0; a < n; ++a)
      P.eta2.push_back(total_derivative(P.eta1[a], chart) - RatFunc::symbol(chart.ddot(a)) * dxi);
  return P;
}

RatFunc apply_field(const BundleVectorField &X, const RatFunc &f, const Chart &chart) {
  RatFunc r;
  if (!X.xi.is_zero())
    r += X.xi * derivative(f, chart.param);
  for (std::size_t a = 0; a < chart.dim(); ++a)
    if (!X.eta[a].is_zero())
      r += X.eta[a] * derivative(f, chart.coords[a]);
  return r;
}

RatFunc apply_prolonged(const ProlongedField &P, const RatFunc &f, const Chart &chart) {
  RatFunc r = apply_field(P.base, f, chart);
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    if (!P.eta1[a].is_zero())
      r += P.eta1[a] * derivative(f, chart.dot(a));
    if (P.order == 2 && !P.eta2[a].is_zero())
      r += P.eta2[a] * derivative(f, chart.ddot(a));
    else if (P.order < 2 && f.depends_on(chart.ddot(a)))
      throw MathError("first prolongation applied to a second-order expression");
  }
  return r;
}

} // namespace liesym
