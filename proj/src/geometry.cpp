#include "liesym/geometry.hpp"

#include "liesym/errors.hpp"
#include "liesym/jets.hpp"
#include "liesym/numeric.hpp"

#include <cmath>
#include <set>

namespace liesym {

namespace {

void all_kernels(const RatFunc &f, std::vector<Kernel> &out) {
  for (const auto &k : f.kernels()) {
    out.push_back(k);
    if (k.kind() != KernelKind::Symbol && k.kind() != KernelKind::Opaque)
      all_kernels(k.arg(), out);
  }
}

} // namespace

Metric make_metric(std::string id, Chart chart, Matrix g) {
  chart.validate();
  const std::size_t n = chart.dim();
  if (g.size() != n)
    throw MathError("metric has " + std::to_string(g.size()) + " rows for " + std::to_string(n) +
                    " coordinates");
  for (const auto &row : g)
    if (row.size() != n)
      throw MathError("metric row has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(g[i][j] == g[j][i]))
        throw MathError("metric is not symmetric at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
  std::set<std::string> allowed(chart.coords.begin(), chart.coords.end());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Kernel> ks;
      all_kernels(g[i][j], ks);
      for (const auto &k : ks) {
        if (k.kind() == KernelKind::Symbol && !allowed.count(k.name()))
          throw MathError("metric component g " + std::to_string(i) + " " + std::to_string(j) +
                          " uses undeclared symbol '" + k.name() + "'");
        if (k.kind() == KernelKind::Opaque) {
          auto it = chart.functions.find(k.name());
          if (it == chart.functions.end() || it->second != k.args())
            throw MathError("metric uses undeclared function '" + k.key() + "'");
          for (const auto &a : k.args())
            if (!allowed.count(a))
              throw MathError("metric function '" + k.name() + "' must depend on coordinates only");
        }
      }
    }
  if (determinant(g).is_zero())
    throw MathError("metric is singular (determinant is identically zero)");
  return Metric{std::move(id), std::move(chart), std::move(g)};
}

RatFunc determinant(const Matrix &m0) {
  Matrix m = m0;
  const std::size_t n = m.size();
  RatFunc det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero())
      ++p;
    if (p == n)
      return RatFunc(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero())
        continue;
      RatFunc f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Matrix inverse(const Matrix &m0) {
  const std::size_t n = m0.size();
  Matrix a = m0;
  Matrix inv(n, std::vector<RatFunc>(n));
  for (std::size_t i = 0; i < n; ++i)
    inv[i][i] = RatFunc(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero())
      ++p;
    if (p == n)
      throw MathError("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    RatFunc piv = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] = a[c][k] / piv;
      inv[c][k] = inv[c][k] / piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero())
        continue;
      RatFunc f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[c][k].is_zero())
          a[r][k] -= f * a[c][k];
        if (!inv[c][k].is_zero())
          inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

Matrix inverse_metric(const Metric &g) { return inverse(g.g); }

ChristoffelTensor christoffel(const Metric &g) {
  const std::size_t n = g.chart.dim();
  Matrix ginv = inverse_metric(g);
  // dg[(l*n + j)*n + k] = d_k g_{lj}
  std::vector<RatFunc> dg(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        dg[(l * n + j) * n + k] = derivative(g.g[l][j], g.chart.coords[k]);
  ChristoffelTensor G;
  G.n = n;
  G.data.resize(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        RatFunc s;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv[i][l].is_zero())
            continue;
          RatFunc t = dg[(l * n + j) * n + k] + dg[(l * n + k) * n + j] - dg[(j * n + k) * n + l];
          if (!t.is_zero())
            s += ginv[i][l] * t;
        }
        s = RatFunc(Rational(1, 2)) * s;
        G.data[(i * n + j) * n + k] = s;
        G.data[(i * n + k) * n + j] = s;
      }
  return G;
}

GeodesicSystem geodesic_system(const Metric &g) { return geodesic_system(g, christoffel(g)); }

GeodesicSystem geodesic_system(const Metric &g, const ChristoffelTensor &gamma) {
  const std::size_t n = g.chart.dim();
  GeodesicSystem sys;
  sys.chart = g.chart;
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc acc;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const RatFunc &c = gamma(i, j, k);
        if (!c.is_zero())
          acc += c * RatFunc::symbol(g.chart.dot(j)) * RatFunc::symbol(g.chart.dot(k));
      }
    sys.G.push_back(-acc);
    sys.E.push_back(RatFunc::symbol(g.chart.ddot(i)) + acc);
  }
  return sys;
}

RatFunc geodesic_lagrangian(const Metric &g) {
  const std::size_t n = g.chart.dim();
  RatFunc L;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!g.g[i][j].is_zero())
        L += g.g[i][j] * RatFunc::symbol(g.chart.dot(i)) * RatFunc::symbol(g.chart.dot(j));
  return L;
}

std::vector<RatFunc> euler_lagrange(const RatFunc &L, const Chart &chart) {
  std::vector<RatFunc> out;
  for (std::size_t i = 0; i < chart.dim(); ++i)
    out.push_back(total_derivative(derivative(L, chart.dot(i)), chart) -
                  derivative(L, chart.coords[i]));
  return out;
}

GeodesicTrace integrate_geodesic(const GeodesicSystem &sys, const KernelBindings &bindings,
                                 const std::vector<double> &x0, const std::vector<double> &v0,
                                 double step, double span) {
  const std::size_t n = sys.chart.dim();
  if (x0.size() != n || v0.size() != n)
    throw MathError("initial state must have " + std::to_string(n) + " positions and velocities");
  if (!(step > 0) || !(span > 0) || !std::isfinite(step) || !std::isfinite(span))
    throw MathError("step and span must be positive");
  std::vector<std::string> vars{sys.chart.param};
  vars.insert(vars.end(), sys.chart.coords.begin(), sys.chart.coords.end());
  for (std::size_t i = 0; i < n; ++i)
    vars.push_back(sys.chart.dot(i));
  std::vector<NumericFunction> G;
  for (const auto &gi : sys.G)
    G.emplace_back(substitute(gi, bindings), vars);

  auto rhs = [&](double s, const std::vector<double> &y) {
    std::vector<double> in(1 + 2 * n);
    in[0] = s;
    for (std::size_t i = 0; i < 2 * n; ++i)
      in[1 + i] = y[i];
    std::vector<double> dy(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      dy[i] = y[n + i];
      dy[n + i] = G[i](in);
    }
    return dy;
  };

  auto steps = static_cast<std::size_t>(std::llround(span / step));
  GeodesicTrace tr;
  tr.step = step;
  std::vector<double> y(x0);
  y.insert(y.end(), v0.begin(), v0.end());
  auto record = [&](double s) {
    tr.s.push_back(s);
    tr.x.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    tr.xdot.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(n), y.end());
  };
  record(0.0);
  std::vector<double> tmp(2 * n);
  for (std::size_t k = 0; k < steps; ++k) {
    double s = static_cast<double>(k) * step;
    auto k1 = rhs(s, y);
    for (std::size_t i = 0; i < 2 * n; ++i)
      tmp[i] = y[i] + 0.5 * step * k1[i];
    auto k2 = rhs(s + 0.5 * step, tmp);
    for (std::size_t i = 0; i < 2 * n; ++i)
      tmp[i] = y[i] + 0.5 * step * k2[i];
    auto k3 = rhs(s + 0.5 * step, tmp);
    for (std::size_t i = 0; i < 2 * n; ++i)
      tmp[i] = y[i] + step * k3[i];
    auto k4 = rhs(s + step, tmp);
    for (std::size_t i = 0; i < 2 * n; ++i) {
      y[i] += step / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!std::isfinite(y[i]))
        throw SingularityError("integration produced a non-finite state at s = " +
                               std::to_string(s + step));
    }
    record(static_cast<double>(k + 1) * step);
  }
  return tr;
}

} // namespace liesym
