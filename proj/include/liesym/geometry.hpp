#pragma once

#include "liesym/chart.hpp"
#include "liesym/ratfunc.hpp"

#include <string>
#include <vector>

namespace liesym {

using Matrix = std::vector<std::vector<RatFunc>>;

struct Metric {
  std::string id;
  Chart chart;
  Matrix g;
};

/// Builds a metric from its components, mirroring the upper triangle when
/// the lower one is empty, and validates symmetry and declared symbols.
Metric make_metric(std::string id, Chart chart, Matrix g);

RatFunc determinant(const Matrix &m);
/// Throws MathError when the matrix is singular.
Matrix inverse(const Matrix &m);
Matrix inverse_metric(const Metric &g);

/// Gamma^i_{jk}, stored at [(i * n + j) * n + k].
struct ChristoffelTensor {
  std::size_t n = 0;
  std::vector<RatFunc> data;
  const RatFunc &operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * n + j) * n + k];
  }
};

ChristoffelTensor christoffel(const Metric &g);

/// E_i = xddot^i - G^i with G^i = -Gamma^i_{jk} xdot^j xdot^k.
struct GeodesicSystem {
  Chart chart;
  std::vector<RatFunc> E;
  std::vector<RatFunc> G;
};

GeodesicSystem geodesic_system(const Metric &g);
GeodesicSystem geodesic_system(const Metric &g, const ChristoffelTensor &gamma);

/// L = g_{ij} xdot^i xdot^j.
RatFunc geodesic_lagrangian(const Metric &g);

/// d/ds(dL/dxdot^i) - dL/dx^i.
std::vector<RatFunc> euler_lagrange(const RatFunc &L, const Chart &chart);

struct GeodesicTrace {
  double step = 0;
  std::vector<double> s;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> xdot;
};

/// Fixed-step classical RK4. `bindings` must bind every opaque function.
GeodesicTrace integrate_geodesic(const GeodesicSystem &sys, const KernelBindings &bindings,
                                 const std::vector<double> &x0, const std::vector<double> &v0,
                                 double step, double span);

} // namespace liesym
