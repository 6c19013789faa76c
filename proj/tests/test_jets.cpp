#include "doctest.h"
#include "support.hpp"

#include "liesym/errors.hpp"
#include "liesym/jets.hpp"

#include <random>

using namespace liesym;
using testing::rf;

namespace {

Chart plane() {
  Chart c;
  c.coords = {"x", "y"};
  return c;
}

RatFunc d(const RatFunc &f, const std::string &v) { return derivative(f, v); }

// Random polynomial of total degree <= 2 in (s, x, y).
RatFunc random_poly(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  const RatFunc vars[] = {RatFunc(1), RatFunc::symbol("s"), RatFunc::symbol("x"),
                          RatFunc::symbol("y")};
  RatFunc p;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      p += RatFunc(coef(rng)) * vars[i] * vars[j];
  return p;
}

} // namespace

TEST_CASE("total derivative") {
  const Chart c = plane();
  CHECK(total_derivative(rf("x*y + s"), c) == rf("xdot*y + x*ydot + 1"));
  CHECK(total_derivative(rf("xdot^2"), c) == rf("2*xdot*xddot"));
  CHECK_THROWS_AS(total_derivative(rf("xddot"), c), MathError);
}

TEST_CASE("field validation") {
  const Chart c = plane();
  CHECK_THROWS_AS(validate_field({"X", rf("1"), {rf("0")}}, c), MathError);
  CHECK_THROWS_AS(validate_field({"X", rf("xdot"), {rf("0"), rf("0")}}, c), MathError);
  CHECK_NOTHROW(validate_field({"X", rf("s"), {rf("x"), rf("y")}}, c));
}

TEST_CASE("prolongation of rotations and scalings") {
  const Chart c = plane();
  const BundleVectorField rot{"R", RatFunc(0), {rf("-y"), rf("x")}};
  const ProlongedField p = prolong(rot, c, 2);
  CHECK(p.eta1[0] == rf("-ydot"));
  CHECK(p.eta1[1] == rf("xdot"));
  CHECK(p.eta2[0] == rf("-yddot"));
  const BundleVectorField scale{"S", rf("s"), {RatFunc(0), RatFunc(0)}};
  const ProlongedField q = prolong(scale, c, 2);
  CHECK(q.eta1[0] == rf("-xdot"));
  CHECK(q.eta2[0] == rf("-2*xddot"));
  CHECK(apply_prolonged(q, rf("xdot^2 + ydot^2"), c) == rf("-2*xdot^2 - 2*ydot^2"));
}

TEST_CASE("property: prolongation recursion matches the explicit expansion") {
  const Chart c = plane();
  std::mt19937_64 rng(200);
  const std::vector<std::string> xs{"x", "y"};
  for (int trial = 0; trial < 200; ++trial) {
    const BundleVectorField X{"X", random_poly(rng), {random_poly(rng), random_poly(rng)}};
    const ProlongedField P = prolong(X, c, 2);
    for (std::size_t nu = 0; nu < 2; ++nu) {
      const RatFunc xdot_nu = RatFunc::symbol(c.dot(nu));
      const RatFunc xddot_nu = RatFunc::symbol(c.ddot(nu));
      // eta_(1) = eta_s + eta_,mu xdot^mu - xi_s xdot^nu - xi_,mu xdot^mu xdot^nu
      RatFunc e1 = d(X.eta[nu], "s") - d(X.xi, "s") * xdot_nu;
      for (std::size_t mu = 0; mu < 2; ++mu) {
        const RatFunc xdot_mu = RatFunc::symbol(c.dot(mu));
        e1 += d(X.eta[nu], xs[mu]) * xdot_mu - d(X.xi, xs[mu]) * xdot_mu * xdot_nu;
      }
      CHECK(P.eta1[nu] == e1);
      // eta_(2) = D^2 eta - xdot D^2 xi - 2 xddot D xi, D^2 expanded by hand
      auto D2 = [&](const RatFunc &f) {
        RatFunc r = d(d(f, "s"), "s");
        for (std::size_t mu = 0; mu < 2; ++mu) {
          const RatFunc xm = RatFunc::symbol(c.dot(mu));
          r += RatFunc(2) * d(d(f, "s"), xs[mu]) * xm + d(f, xs[mu]) * RatFunc::symbol(c.ddot(mu));
          for (std::size_t la = 0; la < 2; ++la)
            r += d(d(f, xs[mu]), xs[la]) * xm * RatFunc::symbol(c.dot(la));
        }
        return r;
      };
      auto D1 = [&](const RatFunc &f) {
        RatFunc r = d(f, "s");
        for (std::size_t mu = 0; mu < 2; ++mu)
          r += d(f, xs[mu]) * RatFunc::symbol(c.dot(mu));
        return r;
      };
      const RatFunc e2 = D2(X.eta[nu]) - xdot_nu * D2(X.xi) - RatFunc(2) * xddot_nu * D1(X.xi);
      CHECK(P.eta2[nu] == e2);
    }
  }
}
