#include "doctest.h"
#include "support.hpp"

#include "liesym/errors.hpp"
#include "liesym/geometry.hpp"
#include "liesym/numeric.hpp"

#include <cmath>

using namespace liesym;
using testing::rf;

TEST_CASE("polar Christoffel symbols") {
  const Metric g = testing::metric("polar.metric");
  const ChristoffelTensor G = christoffel(g);
  CHECK(G(0, 1, 1) == rf("-r"));
  CHECK(G(1, 0, 1) == rf("1/r"));
  CHECK(G(1, 1, 0) == rf("1/r"));
  CHECK(G(0, 0, 0).is_zero());
  const GeodesicSystem sys = geodesic_system(g);
  CHECK(sys.E[0] == rf("rddot - r*phidot^2"));
  CHECK(sys.E[1] == rf("phiddot + 2*rdot*phidot/r"));
}

TEST_CASE("Vaidya-Bonner geodesic equations for M = 1, Q = t") {
  const Metric g = testing::metric("vaidya_bonner_M1_Qt.metric");
  const GeodesicSystem sys = geodesic_system(g);
  // hand-derived: E_t from d/ds(dL/drdot) - dL/dr with g_tr = -1
  CHECK(sys.E[0] ==
        rf("tddot + (2*t - r)/(2*r^3)*tdot^2 + r*thetadot^2 + r*sin(theta)^2*phidot^2"));
  CHECK(sys.E[2] == rf("thetaddot + 2*rdot*thetadot/r - sin(theta)*cos(theta)*phidot^2"));
  CHECK(sys.E[3] == rf("phiddot + 2*rdot*phidot/r + 2*cos(theta)/sin(theta)*thetadot*phidot"));
}

TEST_CASE("metric validation") {
  Chart c;
  c.coords = {"x", "y"};
  CHECK_THROWS_AS(make_metric("m", c, {{1, 1}, {1, 1}}), MathError);
  CHECK_THROWS_AS(make_metric("m", c, {{1, 0}, {2, 1}}), MathError);
  CHECK_THROWS_AS(make_metric("m", c, {{rf("z"), 0}, {0, 1}}), MathError);
  const Metric ok = make_metric("m", c, {{1, 0}, {0, rf("x^2")}});
  CHECK(determinant(ok.g) == rf("x^2"));
  CHECK(inverse(ok.g)[1][1] == rf("1/x^2"));
}

TEST_CASE("property: Euler-Lagrange equals twice the lowered geodesic equations") {
  for (const char *file :
       {"flat1d.metric", "flat2d.metric", "polar.metric", "sphere.metric", "vaidya_bonner.metric",
        "vaidya_bonner_M1_Qt.metric", "vaidya_bonner_Mt_Qt2.metric"}) {
    CAPTURE(file);
    const Metric g = testing::metric(file);
    const GeodesicSystem sys = geodesic_system(g);
    const auto el = euler_lagrange(geodesic_lagrangian(g), g.chart);
    const std::size_t n = g.chart.dim();
    for (std::size_t i = 0; i < n; ++i) {
      RatFunc lowered;
      for (std::size_t j = 0; j < n; ++j)
        lowered += g.g[i][j] * sys.E[j];
      CHECK(el[i] == RatFunc(2) * lowered);
    }
  }
}

TEST_CASE("RK4 on the flat plane in polar coordinates follows a straight line") {
  const Metric g = testing::metric("polar.metric");
  const GeodesicSystem sys = geodesic_system(g);
  // start at (1, 0) moving with unit speed in y
  const GeodesicTrace tr = integrate_geodesic(sys, {}, {1, 0}, {0, 1}, 1e-3, 2.0);
  const auto &x = tr.x.back();
  CHECK(std::abs(x[0] * std::cos(x[1]) - 1) < 1e-9);
  CHECK(std::abs(x[0] * std::sin(x[1]) - 2) < 1e-9);
  CHECK(tr.s.back() == doctest::Approx(2.0));
}

TEST_CASE("integration reports a singularity instead of producing NaN") {
  const Metric g = testing::metric("polar.metric");
  const GeodesicSystem sys = geodesic_system(g);
  CHECK_THROWS_AS(integrate_geodesic(sys, {}, {1, 0}, {-1, 0}, 1e-2, 2.0), SingularityError);
}

TEST_CASE("opaque functions must be bound before numeric evaluation") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  CHECK_THROWS_AS(NumericFunction(g.g[0][0], {"t", "r"}), MathError);
  const Metric b = bind_functions(g, {{"M", "1"}, {"Q", "t"}});
  CHECK(b.g == testing::metric("vaidya_bonner_M1_Qt.metric").g);
  CHECK(b.chart.functions.empty());
}
