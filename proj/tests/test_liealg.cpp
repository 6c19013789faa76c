#include "doctest.h"
#include "support.hpp"

#include "liesym/errors.hpp"
#include "liesym/liealg.hpp"
#include "liesym/optimal.hpp"

using namespace liesym;
using testing::rf;

namespace {

Mat transpose(const Mat &a) {
  Mat t(a.empty() ? 0 : a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      t[j][i] = a[i][j];
  return t;
}

Mat mul(const Mat &a, const Mat &b) {
  Mat c(a.size(), Vec(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j)
        c[i][j] += a[i][k] * b[k][j];
  return c;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

std::vector<std::vector<RatFunc>> rmul(const std::vector<std::vector<RatFunc>> &a,
                                       const std::vector<std::vector<RatFunc>> &b) {
  std::vector<std::vector<RatFunc>> c(a.size(), std::vector<RatFunc>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j)
        c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::vector<std::vector<RatFunc>> rename(const std::vector<std::vector<RatFunc>> &m,
                                         const std::string &from, const RatFunc &to) {
  auto out = m;
  for (auto &row : out)
    for (auto &x : row)
      x = substitute(x, {{Kernel::symbol(from), to}});
  return out;
}

LieAlgebra field_algebra(const char *metric, const char *gens) {
  const Metric g = testing::metric(metric);
  return structure_constants(testing::gens(gens, g.chart), g.chart);
}

// The three algebras the Vaidya-Bonner analyses produce, as fields.
std::vector<LieAlgebra> vb_algebras() {
  return {field_algebra("vaidya_bonner.metric", "vb_noether_general_cot.gens"),
          field_algebra("vaidya_bonner_M1_Qt.metric", "vb_M1_Qt_liepoint.gens"),
          field_algebra("vaidya_bonner_Mt_Qt2.metric", "vb_Mt_Qt2_noether.gens")};
}

} // namespace

TEST_CASE("field bracket of rotations") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  const auto X = testing::gens("vb_noether_general_cot.gens", g.chart);
  const BundleVectorField b = field_bracket(X[3], X[4], g.chart);
  CHECK(b.is_zero() == false);
  CHECK(express_field({X[2]}, b) == Vec{1});
  CHECK(field_bracket(X[0], X[3], g.chart).is_zero());
}

TEST_CASE("structure constants of the general algebra") {
  const LieAlgebra g = field_algebra("vaidya_bonner.metric", "vb_noether_general_cot.gens");
  CHECK(g.c == general_algebra().c);
  CHECK(check_jacobi(g).empty());
}

TEST_CASE("non-closure names the pair and the remainder") {
  const Metric m = testing::metric("vaidya_bonner.metric");
  const auto Y = testing::gens("nonclosing.gens", m.chart);
  try {
    structure_constants(Y, m.chart);
    FAIL("expected NonClosureError");
  } catch (const NonClosureError &e) {
    CHECK(e.i() == 0);
    CHECK(e.j() == 1);
    CHECK(e.remainder().find("cos(theta)") != std::string::npos);
  }
  CHECK_THROWS_AS(structure_constants({Y[0], Y[0]}, m.chart), MathError);
  CHECK_FALSE(fields_independent({Y[0], Y[0]}));
}

TEST_CASE("property: antisymmetry and Jacobi on every algebra") {
  for (const auto &g : vb_algebras()) {
    CHECK(check_jacobi(g).empty());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j)
        for (std::size_t k = 0; k < g.dim(); ++k)
          CHECK(g.c[i][j][k] == -g.c[j][i][k]);
  }
  // a deliberately broken algebra is caught
  auto c = general_algebra().c;
  c[2][3][4] = 2;
  CHECK_FALSE(check_jacobi(abstract_algebra(c)).empty());
}

TEST_CASE("Killing form, derived series and radical of the general algebra") {
  const LieAlgebra g = general_algebra();
  const Mat K = killing_form(g);
  Mat expect(5, Vec(5));
  expect[2][2] = expect[3][3] = expect[4][4] = -2;
  CHECK(K == expect);
  CHECK_FALSE(is_semisimple(g));
  const auto series = derived_series(g);
  REQUIRE(series.size() == 3);
  CHECK(series[0].size() == 5);
  CHECK(series[1] == coordinate_subspace(5, {2, 3, 4}));
  CHECK(series[2] == series[1]);
  CHECK_FALSE(is_solvable(g));
  const Subspace r = radical(g);
  CHECK(r == coordinate_subspace(5, {0, 1}));
  CHECK(is_ideal(g, r));
  CHECK(is_solvable(g, r));
  CHECK(levi_check(g, r, coordinate_subspace(5, {2, 3, 4})));
  CHECK_FALSE(levi_check(g, coordinate_subspace(5, {2, 3, 4}), r));
  CHECK(is_subalgebra(g, coordinate_subspace(5, {2, 3, 4})));
  CHECK_FALSE(is_subalgebra(g, coordinate_subspace(5, {2, 3})));
}

TEST_CASE("a solvable algebra") {
  // [X1, X2] = X2
  std::vector<std::vector<Vec>> c(2, std::vector<Vec>(2, Vec(2)));
  c[0][1][1] = 1;
  c[1][0][1] = -1;
  const LieAlgebra g = abstract_algebra(c);
  CHECK(is_solvable(g));
  CHECK(radical(g).size() == 2);
  CHECK(derived_series(g).back().empty());
}

TEST_CASE("property: Killing form is ad-invariant and Ad-invariant") {
  for (const auto &g : vb_algebras()) {
    const std::size_t m = g.dim();
    const Mat K = killing_form(g);
    CHECK(K == transpose(K));
    for (std::size_t i = 0; i < m; ++i) {
      // K([z, x], y) + K(x, [z, y]) = 0  <=>  ad_z^T K + K ad_z = 0
      const Mat A = ad_matrix(g, unit(m, i));
      const Mat s = mul(transpose(A), K);
      const Mat t = mul(K, A);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          CHECK((s[a][b] + t[a][b]).is_zero());
    }
    for (std::size_t i = 0; i < m; ++i) {
      const AdjointMap ad = adjoint_exp(g, i, "q");
      std::vector<std::vector<RatFunc>> Kr(m, std::vector<RatFunc>(m));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          Kr[a][b] = K[a][b];
      // rows of M are images of basis vectors: M K M^T = K
      std::vector<std::vector<RatFunc>> Mt(m, std::vector<RatFunc>(m));
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          Mt[a][b] = ad.M[b][a];
      CHECK(rmul(rmul(ad.M, Kr), Mt) == Kr);
    }
  }
}

TEST_CASE("adjoint matrices of the general algebra") {
  const LieAlgebra g = general_algebra();
  const RatFunc c = rf("cos(q)"), s = rf("sin(q)");
  const RatFunc o = 1, z = 0;
  using R = std::vector<std::vector<RatFunc>>;
  const R id{{o, z, z, z, z}, {z, o, z, z, z}, {z, z, o, z, z}, {z, z, z, o, z}, {z, z, z, z, o}};
  CHECK(adjoint_exp(g, 0, "q").M == id);
  CHECK(adjoint_exp(g, 1, "q").M == id);
  CHECK(adjoint_exp(g, 2, "q").M ==
        R{{o, z, z, z, z}, {z, o, z, z, z}, {z, z, o, z, z}, {z, z, z, c, -s}, {z, z, z, s, c}});
  CHECK(adjoint_exp(g, 3, "q").M ==
        R{{o, z, z, z, z}, {z, o, z, z, z}, {z, z, c, z, s}, {z, z, z, o, z}, {z, z, -s, z, c}});
  CHECK(adjoint_exp(g, 4, "q").M ==
        R{{o, z, z, z, z}, {z, o, z, z, z}, {z, z, c, -s, z}, {z, z, s, c, z}, {z, z, z, z, o}});
}

TEST_CASE("property: adjoint maps form one-parameter groups") {
  for (const auto &g : vb_algebras()) {
    for (std::size_t i = 0; i < g.dim(); ++i) {
      const AdjointMap ad = adjoint_exp(g, i, "q");
      const auto A = rename(ad.M, "q", RatFunc::symbol("a"));
      const auto B = rename(ad.M, "q", RatFunc::symbol("b"));
      const auto AB = rename(ad.M, "q", rf("a + b"));
      CHECK(rmul(A, B) == AB);
      const auto zero = rename(ad.M, "q", 0);
      for (std::size_t a = 0; a < g.dim(); ++a)
        for (std::size_t b = 0; b < g.dim(); ++b)
          CHECK(zero[a][b] == RatFunc(a == b ? 1 : 0));
    }
  }
}

TEST_CASE("property: Taylor expansion of the exponential matches the Lie series") {
  for (const auto &g : vb_algebras()) {
    for (std::size_t i = 0; i < g.dim(); ++i) {
      const AdjointMap ad = adjoint_exp(g, i, "q");
      const auto series = lie_series(g, i, "q", 6);
      for (std::size_t a = 0; a < g.dim(); ++a)
        for (std::size_t b = 0; b < g.dim(); ++b)
          CHECK(taylor(ad.M[a][b], "q", 6) == series[a][b]);
    }
  }
}

TEST_CASE("property: adjoint maps are automorphisms") {
  for (const auto &g : vb_algebras()) {
    const std::size_t m = g.dim();
    for (std::size_t i = 0; i < m; ++i) {
      const AdjointMap ad = adjoint_exp(g, i, "q");
      // Ad[X_a, X_b] = [Ad X_a, Ad X_b]
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          std::vector<RatFunc> lhs(m), rhs(m);
          for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l)
              lhs[l] += RatFunc(g.c[a][b][k]) * ad.M[k][l];
          for (std::size_t p = 0; p < m; ++p)
            for (std::size_t r = 0; r < m; ++r)
              for (std::size_t l = 0; l < m; ++l)
                if (!g.c[p][r][l].is_zero())
                  rhs[l] += ad.M[a][p] * ad.M[b][r] * RatFunc(g.c[p][r][l]);
          CHECK(lhs == rhs);
        }
    }
  }
}

TEST_CASE("nilpotent and hyperbolic adjoint actions") {
  // Heisenberg: [X1, X2] = X3
  std::vector<std::vector<Vec>> h(3, std::vector<Vec>(3, Vec(3)));
  h[0][1][2] = 1;
  h[1][0][2] = -1;
  const AdjointMap ad = adjoint_exp(abstract_algebra(h), 0, "q");
  CHECK(ad.M[1][2] == rf("-q"));
  // [X1, X2] = X2 gives an exponential
  std::vector<std::vector<Vec>> e(2, std::vector<Vec>(2, Vec(2)));
  e[0][1][1] = 1;
  e[1][0][1] = -1;
  CHECK(adjoint_exp(abstract_algebra(e), 0, "q").M[1][1] == rf("exp(-q)"));
}

TEST_CASE("irrational eigenvalues are unsupported") {
  // ad X1 acts on <X2, X3> by [[0, 2], [1, 0]], eigenvalues +-sqrt(2)
  std::vector<std::vector<Vec>> c(3, std::vector<Vec>(3, Vec(3)));
  c[0][1][2] = 1;
  c[1][0][2] = -1;
  c[0][2][1] = 2;
  c[2][0][1] = -2;
  const LieAlgebra g = abstract_algebra(c);
  REQUIRE(check_jacobi(g).empty());
  CHECK_THROWS_AS(adjoint_exp(g, 0, "q"), UnsupportedError);
}
