#include "liesym/liealg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

namespace liesym {

namespace {

// Coordinates of a family of vector fields: for each component, the fields
// are brought over a common polynomial denominator and the numerators are
// read off monomial by monomial.
struct FieldCoordinates {
  std::vector<Poly> den; // per component
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
  std::vector<std::pair<std::size_t, Monomial>> columns;
  Mat vectors; // one per field

  BundleVectorField field_of(const Vec &v, std::size_t ncomp, const std::string &name) const {
    std::vector<RatFunc> comps(ncomp, RatFunc(0));
    std::vector<Poly> nums(ncomp);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c].is_zero())
        continue;
      const auto &[a, m] = columns[c];
      nums[a] += Poly::monomial(m, v[c]);
    }
    for (std::size_t a = 0; a < ncomp; ++a)
      comps[a] = RatFunc::fraction(nums[a], den[a]);
    return BundleVectorField::from_components(name, comps);
  }
};

FieldCoordinates coordinates(const std::vector<BundleVectorField> &fields) {
  FieldCoordinates fc;
  if (fields.empty())
    return fc;
  const std::size_t ncomp = fields[0].eta.size() + 1;
  std::vector<std::vector<RatFunc>> comps;
  for (const auto &f : fields) {
    if (f.eta.size() + 1 != ncomp)
      throw MathError("vector fields of different dimension");
    comps.push_back(f.components());
  }
  fc.den.assign(ncomp, Poly(1));
  for (std::size_t a = 0; a < ncomp; ++a)
    for (const auto &c : comps) {
      const Poly &d = c[a].den();
      if (d.is_one())
        continue;
      Poly g = poly_gcd(fc.den[a], d);
      fc.den[a] = poly_div_exact(fc.den[a] * d, g);
    }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> raw(fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f)
    for (std::size_t a = 0; a < ncomp; ++a) {
      RatFunc scaled = comps[f][a] * RatFunc(fc.den[a]);
      if (!scaled.is_polynomial())
        throw MathError("internal: common denominator failed");
      for (const auto &t : scaled.num().terms()) {
        auto key = std::make_pair(a, t.mono);
        auto it = fc.index.find(key);
        std::size_t col;
        if (it == fc.index.end()) {
          col = fc.columns.size();
          fc.index.emplace(key, col);
          fc.columns.push_back(key);
        } else {
          col = it->second;
        }
        raw[f].emplace_back(col, t.coef);
      }
    }
  for (const auto &r : raw) {
    Vec v(fc.columns.size());
    for (const auto &[c, x] : r)
      v[c] += x;
    fc.vectors.push_back(std::move(v));
  }
  return fc;
}

Vec unit(std::size_t m, std::size_t i) {
  Vec v(m);
  v[i] = Rational(1);
  return v;
}

// --- univariate rational polynomials, low degree first ---------------------

using UPoly = std::vector<Rational>;

void trim(UPoly &p) {
  while (!p.empty() && p.back().is_zero())
    p.pop_back();
}

Rational eval(const UPoly &p, const Rational &x) {
  Rational r(0);
  for (std::size_t k = p.size(); k-- > 0;)
    r = r * x + p[k];
  return r;
}

// p / (x - r), exact when r is a root.
UPoly deflate(const UPoly &p, const Rational &r) {
  const std::size_t n = p.size();
  UPoly q(n - 1);
  Rational carry(0);
  for (std::size_t k = n; k-- > 1;) {
    carry = carry * r + p[k];
    q[k - 1] = carry;
  }
  return q;
}

std::int64_t to_int64(const Rational &r) {
  if (!r.fits64() || !r.is_integer())
    throw UnsupportedError("minimal polynomial coefficients too large");
  return r.num64();
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  n = std::llabs(n);
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      d.push_back(k);
      if (k != n / k)
        d.push_back(n / k);
    }
  std::sort(d.begin(), d.end());
  return d;
}

// Rational roots with multiplicity; p is replaced by the cofactor.
std::vector<std::pair<Rational, int>> rational_roots(UPoly &p) {
  std::vector<std::pair<Rational, int>> roots;
  trim(p);
  int zero_mult = 0;
  while (p.size() > 1 && p[0].is_zero()) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult)
    roots.emplace_back(Rational(0), zero_mult);
  if (p.size() <= 1)
    return roots;
  // clear denominators
  UPoly ip = p;
  Rational l(1);
  for (const auto &c : ip) {
    if (c.is_zero())
      continue;
    Rational d(to_int64(Rational::parse(c.denominator_str())));
    l = l * d / Rational(std::gcd(to_int64(l), to_int64(d)));
  }
  for (auto &c : ip)
    c *= l;
  auto num_div = divisors(to_int64(ip.front()));
  auto den_div = divisors(to_int64(ip.back()));
  std::vector<Rational> cands;
  for (auto a : num_div)
    for (auto b : den_div) {
      cands.emplace_back(a, b);
      cands.emplace_back(-a, b);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto &r : cands) {
    int mult = 0;
    while (p.size() > 1 && eval(p, r).is_zero()) {
      p = deflate(p, r);
      ++mult;
    }
    if (mult)
      roots.emplace_back(r, mult);
  }
  return roots;
}

Rational falling(int n, int j) {
  Rational r(1);
  for (int k = 0; k < j; ++k)
    r *= Rational(n - k);
  return r;
}

using RMat = std::vector<std::vector<RatFunc>>;

Mat matmul(const Mat &a, const Mat &b) {
  const std::size_t n = a.size();
  Mat c(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero())
        continue;
      for (std::size_t j = 0; j < n; ++j)
        c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = Rational(1);
  return m;
}

Vec flatten(const Mat &m) {
  Vec v;
  for (const auto &r : m)
    v.insert(v.end(), r.begin(), r.end());
  return v;
}

// exp(q B) for a rational matrix B, via the minimal polynomial of B.
RMat matrix_exp(const Mat &B, const std::string &q) {
  const std::size_t n = B.size();
  std::vector<Mat> powers{identity(n)};
  Mat flat_basis{flatten(powers[0])};
  UPoly mu;
  for (;;) {
    Mat next = matmul(powers.back(), B);
    auto c = express(flat_basis, flatten(next));
    if (c) {
      mu.assign(c->size() + 1, Rational(0));
      for (std::size_t k = 0; k < c->size(); ++k)
        mu[k] = -(*c)[k];
      mu.back() = Rational(1);
      break;
    }
    powers.push_back(next);
    flat_basis.push_back(flatten(next));
  }
  const std::size_t d = powers.size();

  UPoly rest = mu;
  auto real_roots = rational_roots(rest);
  std::vector<std::pair<Rational, int>> imag_roots; // omega > 0, multiplicity
  trim(rest);
  if (rest.size() > 1) {
    for (std::size_t k = 1; k < rest.size(); k += 2)
      if (!rest[k].is_zero())
        throw UnsupportedError("adjoint map has complex eigenvalues off the imaginary axis");
    UPoly s;
    for (std::size_t k = 0; k < rest.size(); k += 2)
      s.push_back(rest[k]);
    auto sq = rational_roots(s);
    trim(s);
    if (s.size() > 1)
      throw UnsupportedError("adjoint map has eigenvalues outside the supported class");
    for (const auto &[mu0, mult] : sq) {
      Rational omega;
      if (mu0.sign() >= 0 || !(-mu0).exact_sqrt(omega))
        throw UnsupportedError(
            "adjoint map has eigenvalues that are neither rational nor rational multiples of i");
      imag_roots.emplace_back(omega, mult);
    }
  }

  const RatFunc qq = RatFunc::symbol(q);
  Mat W;
  std::vector<RatFunc> rhs;
  for (const auto &[r, mult] : real_roots)
    for (int j = 0; j < mult; ++j) {
      Vec row(d);
      for (std::size_t k = 0; k < d; ++k)
        if (static_cast<int>(k) >= j)
          row[k] = falling(static_cast<int>(k), j) * r.pow(static_cast<int>(k) - j);
      W.push_back(row);
      rhs.push_back(qq.pow(j) * exp_of(RatFunc(r) * qq));
    }
  for (const auto &[w, mult] : imag_roots)
    for (int j = 0; j < mult; ++j) {
      Vec re(d), im(d);
      for (std::size_t k = 0; k < d; ++k) {
        const int e = static_cast<int>(k) - j;
        if (e < 0)
          continue;
        Rational mag = falling(static_cast<int>(k), j) * w.pow(e);
        switch (e % 4) {
        case 0:
          re[k] = mag;
          break;
        case 1:
          im[k] = mag;
          break;
        case 2:
          re[k] = -mag;
          break;
        default:
          im[k] = -mag;
          break;
        }
      }
      W.push_back(re);
      rhs.push_back(qq.pow(j) * cos_of(RatFunc(w) * qq));
      W.push_back(im);
      rhs.push_back(qq.pow(j) * sin_of(RatFunc(w) * qq));
    }
  if (W.size() != d)
    throw MathError("internal: minimal polynomial factorization incomplete");

  // invert W through [W | I]
  RowReducer red(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    Vec row(2 * d);
    for (std::size_t k = 0; k < d; ++k)
      row[k] = W[i][k];
    row[d + i] = Rational(1);
    red.add(row);
  }
  Mat rr = red.rref();
  auto piv = red.pivots();
  if (piv.size() != d || piv[d - 1] != d - 1)
    throw MathError("internal: interpolation matrix is singular");

  RMat E(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (std::size_t k = 0; k < d; ++k) {
    RatFunc alpha(0);
    for (std::size_t l = 0; l < d; ++l)
      if (!rr[k][d + l].is_zero())
        alpha += RatFunc(rr[k][d + l]) * rhs[l];
    if (alpha.is_zero())
      continue;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!powers[k][a][b].is_zero())
          E[a][b] += RatFunc(powers[k][a][b]) * alpha;
  }
  return E;
}

Mat minus_ad(const LieAlgebra &g, std::size_t i) {
  if (i >= g.dim())
    throw MathError("generator index out of range");
  Mat A = ad_matrix(g, unit(g.dim(), i));
  for (auto &r : A)
    for (auto &x : r)
      x = -x;
  return A;
}

RMat transpose(const RMat &m) {
  const std::size_t n = m.size();
  RMat t(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[j][i] = m[i][j];
  return t;
}

} // namespace

BundleVectorField field_bracket(const BundleVectorField &X, const BundleVectorField &Y,
                                const Chart &chart) {
  auto xc = X.components();
  auto yc = Y.components();
  if (xc.size() != yc.size() || xc.size() != chart.dim() + 1)
    throw MathError("bracket of fields with mismatched dimension");
  std::vector<RatFunc> out;
  for (std::size_t a = 0; a < xc.size(); ++a)
    out.push_back(apply_field(X, yc[a], chart) - apply_field(Y, xc[a], chart));
  return BundleVectorField::from_components("[" + X.name + "," + Y.name + "]", out);
}

std::string LieAlgebra::name(std::size_t i) const {
  if (i < basis.size() && !basis[i].name.empty())
    return basis[i].name;
  return "X" + std::to_string(i + 1);
}

Vec LieAlgebra::bracket(const Vec &a, const Vec &b) const {
  const std::size_t m = dim();
  Vec out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].is_zero())
      continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (b[j].is_zero())
        continue;
      Rational f = a[i] * b[j];
      for (std::size_t k = 0; k < m; ++k)
        if (!c[i][j][k].is_zero())
          out[k] += f * c[i][j][k];
    }
  }
  return out;
}

bool fields_independent(const std::vector<BundleVectorField> &fields) {
  if (fields.empty())
    return true;
  auto fc = coordinates(fields);
  return rank(fc.vectors) == fields.size();
}

std::optional<Vec> express_field(const std::vector<BundleVectorField> &basis,
                                 const BundleVectorField &target) {
  auto all = basis;
  all.push_back(target);
  auto fc = coordinates(all);
  Vec t = fc.vectors.back();
  fc.vectors.pop_back();
  if (basis.empty())
    return is_zero(t) ? std::optional<Vec>(Vec{}) : std::nullopt;
  return express(fc.vectors, t);
}

LieAlgebra structure_constants(const std::vector<BundleVectorField> &basis, const Chart &chart) {
  const std::size_t m = basis.size();
  LieAlgebra g;
  g.chart = chart;
  g.basis = basis;
  g.c.assign(m, std::vector<Vec>(m, Vec(m)));
  for (std::size_t i = 0; i < m; ++i) {
    validate_field(basis[i], chart);
    if (g.basis[i].name.empty())
      g.basis[i].name = "X" + std::to_string(i + 1);
  }
  if (m == 0)
    return g;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<BundleVectorField> all = g.basis;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      pairs.emplace_back(i, j);
      all.push_back(field_bracket(g.basis[i], g.basis[j], chart));
    }
  auto fc = coordinates(all);
  Mat bvec(fc.vectors.begin(), fc.vectors.begin() + static_cast<std::ptrdiff_t>(m));
  RowReducer red(fc.columns.size());
  for (const auto &v : bvec)
    if (!red.add(v))
      throw MathError("generators are linearly dependent");

  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const Vec &target = fc.vectors[m + p];
    auto coeffs = express(bvec, target);
    if (!coeffs) {
      Vec rem = red.remainder(target);
      auto rf = fc.field_of(rem, chart.dim() + 1, "R");
      std::ostringstream os;
      os << "xi = " << to_string(rf.xi);
      for (std::size_t a = 0; a < rf.eta.size(); ++a)
        os << ", eta" << (a + 1) << " = " << to_string(rf.eta[a]);
      const std::string msg = "bracket [" + g.name(i) + ", " + g.name(j) +
                              "] is not in the span of the generators; remainder " + os.str();
      throw NonClosureError(i, j, os.str(), msg);
    }
    g.c[i][j] = *coeffs;
    for (std::size_t k = 0; k < m; ++k)
      g.c[j][i][k] = -(*coeffs)[k];
  }
  return g;
}

LieAlgebra abstract_algebra(std::vector<std::vector<Vec>> c) {
  const std::size_t m = c.size();
  for (const auto &row : c) {
    if (row.size() != m)
      throw MathError("structure constants must be m x m x m");
    for (const auto &v : row)
      if (v.size() != m)
        throw MathError("structure constants must be m x m x m");
  }
  LieAlgebra g;
  g.c = std::move(c);
  return g;
}

std::vector<std::string> check_jacobi(const LieAlgebra &g) {
  std::vector<std::string> bad;
  const std::size_t m = g.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (g.c[i][j][k] != -g.c[j][i][k]) {
          bad.push_back("antisymmetry fails for (" + g.name(i) + ", " + g.name(j) + ")");
          k = m;
        }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Vec ei = unit(m, i), ej = unit(m, j), ek = unit(m, k);
        Vec s = g.bracket(ei, g.bracket(ej, ek));
        Vec t = g.bracket(ej, g.bracket(ek, ei));
        Vec u = g.bracket(ek, g.bracket(ei, ej));
        for (std::size_t l = 0; l < m; ++l)
          s[l] += t[l] + u[l];
        if (!is_zero(s))
          bad.push_back("Jacobi identity fails for (" + g.name(i) + ", " + g.name(j) + ", " +
                        g.name(k) + ")");
      }
  return bad;
}

Subspace coordinate_subspace(std::size_t dim, const std::vector<std::size_t> &indices) {
  Mat v;
  for (auto i : indices) {
    if (i >= dim)
      throw MathError("basis index out of range");
    v.push_back(unit(dim, i));
  }
  return span_basis(v);
}

Subspace bracket_span(const LieAlgebra &g, const Subspace &a, const Subspace &b) {
  Mat v;
  for (const auto &x : a)
    for (const auto &y : b)
      v.push_back(g.bracket(x, y));
  Mat s = span_basis(v);
  return s;
}

std::vector<Subspace> derived_series(const LieAlgebra &g) {
  std::vector<Subspace> out;
  Mat all;
  for (std::size_t i = 0; i < g.dim(); ++i)
    all.push_back(unit(g.dim(), i));
  out.push_back(span_basis(all));
  for (;;) {
    Subspace next = bracket_span(g, out.back(), out.back());
    const bool same = next.size() == out.back().size();
    out.push_back(std::move(next));
    if (same)
      break;
  }
  return out;
}

bool is_solvable(const LieAlgebra &g) { return derived_series(g).back().empty(); }

bool is_solvable(const LieAlgebra &g, const Subspace &s) {
  Subspace cur = s;
  for (;;) {
    if (cur.empty())
      return true;
    Subspace next = bracket_span(g, cur, cur);
    if (next.size() == cur.size())
      return false;
    cur = std::move(next);
  }
}

bool contains(const Subspace &s, const Vec &v) {
  if (is_zero(v))
    return true;
  RowReducer r(v.size());
  for (const auto &row : s)
    r.add(row);
  return !r.add(v);
}

bool is_ideal(const LieAlgebra &g, const Subspace &s) {
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (const auto &r : s)
      if (!contains(s, g.bracket(unit(g.dim(), i), r)))
        return false;
  return true;
}

bool is_subalgebra(const LieAlgebra &g, const Subspace &s) {
  for (const auto &a : s)
    for (const auto &b : s)
      if (!contains(s, g.bracket(a, b)))
        return false;
  return true;
}

Mat ad_matrix(const LieAlgebra &g, const Vec &v) {
  const std::size_t m = g.dim();
  Mat A(m, Vec(m));
  for (std::size_t j = 0; j < m; ++j) {
    Vec col = g.bracket(v, unit(m, j));
    for (std::size_t k = 0; k < m; ++k)
      A[k][j] = col[k];
  }
  return A;
}

Mat killing_form(const LieAlgebra &g) {
  const std::size_t m = g.dim();
  std::vector<Mat> ad;
  for (std::size_t i = 0; i < m; ++i)
    ad.push_back(ad_matrix(g, unit(m, i)));
  Mat K(m, Vec(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Rational t(0);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l)
          if (!ad[i][k][l].is_zero() && !ad[j][l][k].is_zero())
            t += ad[i][k][l] * ad[j][l][k];
      K[i][j] = t;
      K[j][i] = t;
    }
  return K;
}

bool is_semisimple(const LieAlgebra &g) {
  return g.dim() > 0 && !determinant(killing_form(g)).is_zero();
}

Subspace radical(const LieAlgebra &g) {
  const std::size_t m = g.dim();
  Mat K = killing_form(g);
  Subspace d1 = derived_series(g)[1];
  Mat rows;
  for (const auto &w : d1) {
    Vec u(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        u[i] += K[i][j] * w[j];
    rows.push_back(u);
  }
  Subspace r = span_basis(nullspace(rows, m));
  if (!is_ideal(g, r) || !is_solvable(g, r))
    throw MathError("internal: Killing complement of [g, g] is not a solvable ideal");
  return r;
}

bool levi_check(const LieAlgebra &g, const Subspace &r, const Subspace &h) {
  const std::size_t m = g.dim();
  Mat both = r;
  both.insert(both.end(), h.begin(), h.end());
  if (r.size() + h.size() != m || rank(both) != m)
    return false;
  if (!is_ideal(g, r) || !is_solvable(g, r) || !is_subalgebra(g, h))
    return false;
  if (h.empty())
    return true;
  const Mat K = killing_form(g);
  const std::size_t k = h.size();
  Mat H(k, Vec(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!h[a][i].is_zero() && !h[b][j].is_zero())
            H[a][b] += h[a][i] * K[i][j] * h[b][j];
  return !determinant(H).is_zero();
}

AdjointMap adjoint_exp(const LieAlgebra &g, std::size_t i, const std::string &q) {
  AdjointMap out;
  out.index = i;
  out.param = q;
  out.M = transpose(matrix_exp(minus_ad(g, i), q));
  return out;
}

std::vector<std::vector<RatFunc>> lie_series(const LieAlgebra &g, std::size_t i,
                                             const std::string &q, int n) {
  Mat B = minus_ad(g, i);
  const std::size_t m = g.dim();
  RMat S(m, std::vector<RatFunc>(m, RatFunc(0)));
  Mat P = identity(m);
  RatFunc coef(1);
  const RatFunc qq = RatFunc::symbol(q);
  for (int k = 0; k <= n; ++k) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (!P[a][b].is_zero())
          S[a][b] += RatFunc(P[a][b]) * coef;
    P = matmul(P, B);
    coef = coef * qq * RatFunc(Rational(1, k + 1));
  }
  return transpose(S);
}

RatFunc taylor(const RatFunc &f, const std::string &q, int n) {
  const KernelBindings at0{{Kernel::symbol(q), RatFunc(0)}};
  const RatFunc qq = RatFunc::symbol(q);
  RatFunc out(0), d = f;
  Rational fact(1);
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      d = derivative(d, q);
      fact *= Rational(k);
    }
    RatFunc c = substitute(d, at0);
    if (!c.is_zero())
      out += c * RatFunc(fact.inverse()) * qq.pow(k);
  }
  return out;
}

} // namespace liesym
