#include "liesym/symmetry.hpp"

#include "liesym/errors.hpp"
#include "liesym/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace liesym {

std::string mode_name(Mode m) { return m == Mode::Noether ? "noether" : "liepoint"; }

namespace {

KernelBindings solved_form(const GeodesicSystem &sys) {
  KernelBindings b;
  for (std::size_t i = 0; i < sys.chart.dim(); ++i)
    b.emplace_back(Kernel::symbol(sys.chart.ddot(i)), sys.G[i]);
  return b;
}

// Largest total degree in the first-order jets; -1 for zero.
int jet_degree(const RatFunc &f, const Chart &chart) {
  if (f.is_zero())
    return -1;
  auto dots = chart.dots();
  auto c = collect(f, std::span<const std::string>(dots));
  int d = 0;
  for (const auto &[m, coef] : c)
    d = std::max(d, m.total_degree());
  return d;
}

void check_degree(const RatFunc &r, const Chart &chart, const char *what) {
  int d = jet_degree(r, chart);
  if (d > 3)
    throw MathError(std::string("internal: ") + what + " residual has jet degree " +
                    std::to_string(d) + " > 3");
}

void check_no_jets(const RatFunc &A, const Chart &chart) {
  for (std::size_t i = 0; i < chart.dim(); ++i)
    if (A.depends_on(chart.dot(i)) || A.depends_on(chart.ddot(i)))
      throw MathError("gauge function may not depend on jet variables");
}

} // namespace

RatFunc noether_residual(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                         const Chart &chart) {
  check_no_jets(A, chart);
  ProlongedField P = prolong(X, chart, 1);
  RatFunc r = apply_prolonged(P, L, chart);
  RatFunc dxi = total_derivative(X.xi, chart);
  if (!dxi.is_zero())
    r += dxi * L;
  if (!A.is_zero())
    r -= total_derivative(A, chart);
  return r;
}

std::vector<RatFunc> liepoint_residuals(const BundleVectorField &X, const GeodesicSystem &sys) {
  ProlongedField P = prolong(X, sys.chart, 2);
  KernelBindings b = solved_form(sys);
  std::vector<RatFunc> out;
  for (const auto &E : sys.E)
    out.push_back(substitute(apply_prolonged(P, E, sys.chart), b));
  return out;
}

RatFunc noether_charge(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                       const Chart &chart) {
  RatFunc I = A - X.xi * L;
  for (std::size_t a = 0; a < chart.dim(); ++a) {
    RatFunc w = X.eta[a] - X.xi * RatFunc::symbol(chart.dot(a));
    if (!w.is_zero())
      I -= w * derivative(L, chart.dot(a));
  }
  return I;
}

RatFunc noether_first_integral(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                               const Chart &chart) {
  if (!noether_residual(X, L, A, chart).is_zero())
    throw MathError("first integral requested for '" + X.name +
                    "', which is not a Noether symmetry");
  return noether_charge(X, L, A, chart);
}

RatFunc on_shell_derivative(const RatFunc &I, const GeodesicSystem &sys) {
  return substitute(total_derivative(I, sys.chart), solved_form(sys));
}

SymmetryReport verify_noether(const BundleVectorField &X, const Metric &g, const RatFunc &A) {
  validate_field(X, g.chart);
  RatFunc L = geodesic_lagrangian(g);
  SymmetryReport rep;
  rep.field = X;
  rep.mode = Mode::Noether;
  RatFunc r = noether_residual(X, L, A, g.chart);
  check_degree(r, g.chart, "noether");
  rep.residuals.push_back(r);
  rep.pass = r.is_zero();
  if (rep.pass)
    rep.first_integral = noether_first_integral(X, L, A, g.chart);
  return rep;
}

SymmetryReport verify_liepoint(const BundleVectorField &X, const GeodesicSystem &sys) {
  validate_field(X, sys.chart);
  SymmetryReport rep;
  rep.field = X;
  rep.mode = Mode::LiePoint;
  rep.residuals = liepoint_residuals(X, sys);
  rep.pass = true;
  for (const auto &r : rep.residuals) {
    check_degree(r, sys.chart, "lie point");
    rep.pass = rep.pass && r.is_zero();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Determining systems

namespace {

std::string fresh_name(const std::string &base, const Chart &chart,
                       const std::set<std::string> &taken) {
  std::string n = base;
  auto clash = [&](const std::string &s) {
    return taken.count(s) || chart.functions.count(s) || chart.index_of(s) >= 0 || s == chart.param;
  };
  while (clash(n))
    n += "_";
  return n;
}

DeterminingSystem skeleton(const Chart &chart, Mode mode, bool gauge) {
  DeterminingSystem ds;
  ds.mode = mode;
  ds.chart = chart;
  ds.gauge = gauge && mode == Mode::Noether;
  ds.args.push_back(chart.param);
  ds.args.insert(ds.args.end(), chart.coords.begin(), chart.coords.end());
  std::set<std::string> taken;
  auto add = [&](const std::string &b) {
    std::string n = fresh_name(b, chart, taken);
    taken.insert(n);
    ds.unknowns.push_back(n);
  };
  add("xi");
  for (std::size_t a = 0; a < chart.dim(); ++a)
    add("eta" + std::to_string(a + 1));
  if (ds.gauge)
    add("A");
  return ds;
}

BundleVectorField unknown_field(const DeterminingSystem &ds) {
  BundleVectorField X;
  X.name = "X";
  X.xi = RatFunc::kernel(Kernel::opaque(ds.unknowns[0], ds.args, {}));
  for (std::size_t a = 0; a < ds.chart.dim(); ++a)
    X.eta.push_back(RatFunc::kernel(Kernel::opaque(ds.unknowns[a + 1], ds.args, {})));
  return X;
}

void add_equations(DeterminingSystem &ds, const RatFunc &residual, std::size_t idx) {
  auto dots = ds.chart.dots();
  auto coeffs = collect(residual, std::span<const std::string>(dots));
  for (auto &[m, c] : coeffs) {
    if (m.total_degree() > 3)
      throw MathError("internal: determining residual has jet degree > 3");
    if (!c.is_zero())
      ds.equations.push_back({c, idx, m});
  }
}

} // namespace

DeterminingSystem determining_system_noether(const RatFunc &L, const Chart &chart, bool gauge) {
  DeterminingSystem ds = skeleton(chart, Mode::Noether, gauge);
  BundleVectorField X = unknown_field(ds);
  RatFunc A =
      ds.gauge ? RatFunc::kernel(Kernel::opaque(ds.unknowns.back(), ds.args, {})) : RatFunc(0);
  add_equations(ds, noether_residual(X, L, A, chart), 0);
  return ds;
}

DeterminingSystem determining_system_liepoint(const GeodesicSystem &sys) {
  DeterminingSystem ds = skeleton(sys.chart, Mode::LiePoint, false);
  BundleVectorField X = unknown_field(ds);
  auto res = liepoint_residuals(X, sys);
  for (std::size_t i = 0; i < res.size(); ++i)
    add_equations(ds, res[i], i);
  return ds;
}

DeterminingSystem determining_system(const Metric &g, Mode mode, bool gauge) {
  if (mode == Mode::Noether)
    return determining_system_noether(geodesic_lagrangian(g), g.chart, gauge);
  return determining_system_liepoint(geodesic_system(g));
}

// ---------------------------------------------------------------------------
// Ansatz

Ansatz default_ansatz(const Chart &chart, const AnsatzConfig &cfg) {
  if (cfg.degree < 0)
    throw MathError("ansatz degree must be non-negative");
  Ansatz a;
  a.degree = cfg.degree;
  std::vector<std::string> poly_vars{chart.param};
  std::vector<std::string> angle_vars;
  for (const auto &c : chart.coords)
    (chart.is_angle(c) ? angle_vars : poly_vars).push_back(c);

  // monomials of total degree <= d, by degree then lexicographic
  std::vector<RatFunc> monos;
  std::vector<std::vector<int>> exps{{}};
  for (std::size_t v = 0; v < poly_vars.size(); ++v) {
    std::vector<std::vector<int>> next;
    for (const auto &e : exps)
      for (int k = 0; k <= cfg.degree; ++k) {
        auto f = e;
        f.push_back(k);
        next.push_back(f);
      }
    exps = std::move(next);
  }
  std::vector<std::pair<int, std::vector<int>>> ordered;
  for (const auto &e : exps) {
    int t = 0;
    for (int k : e)
      t += k;
    if (t <= cfg.degree)
      ordered.emplace_back(t, e);
  }
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto &x, const auto &y) {
    if (x.first != y.first)
      return x.first < y.first;
    return x.second > y.second;
  });
  for (const auto &[t, e] : ordered) {
    RatFunc m(1);
    for (std::size_t v = 0; v < e.size(); ++v)
      m *= RatFunc::symbol(poly_vars[v]).pow(e[v]);
    monos.push_back(m);
  }

  std::vector<RatFunc> trig{RatFunc(1)};
  for (std::size_t i = 0; i < angle_vars.size(); ++i) {
    RatFunc u = RatFunc::symbol(angle_vars[i]);
    RatFunc s = sin_of(u), c = cos_of(u);
    std::vector<RatFunc> fs{RatFunc(1)};
    if (i == 0) {
      if (cfg.use_sin) {
        fs.push_back(s);
        a.kernels.push_back("sin(" + angle_vars[i] + ")");
      }
      if (cfg.use_cos) {
        fs.push_back(c);
        a.kernels.push_back("cos(" + angle_vars[i] + ")");
      }
      if (cfg.use_cot) {
        fs.push_back(c / s);
        a.kernels.push_back("cot(" + angle_vars[i] + ")");
      }
      if (cfg.use_csc) {
        fs.push_back(RatFunc(1) / s);
        a.kernels.push_back("csc(" + angle_vars[i] + ")");
      }
    } else {
      fs.push_back(s);
      fs.push_back(c);
      a.kernels.push_back("sin(" + angle_vars[i] + ")");
      a.kernels.push_back("cos(" + angle_vars[i] + ")");
    }
    std::vector<RatFunc> next;
    for (const auto &t : trig)
      for (const auto &f : fs)
        next.push_back(t * f);
    trig = std::move(next);
  }
  for (const auto &m : monos)
    for (const auto &t : trig)
      a.basis.push_back(m * t);
  for (const auto &b : a.basis)
    if (!b.is_constant())
      a.gauge_basis.push_back(b);
  return a;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

bool has_high_cos(const Monomial &m) {
  for (const auto &f : m.factors())
    if (f.kernel.kind() == KernelKind::Cos && f.exp >= 2)
      return true;
  return false;
}

class DerivativeCache {
public:
  DerivativeCache(const std::vector<RatFunc> &basis, const std::vector<std::string> &args)
      : basis_(basis), args_(args) {}

  const Poly &get(std::size_t k, const std::vector<int> &orders) {
    auto key = std::make_pair(k, orders);
    auto it = cache_.find(key);
    if (it != cache_.end())
      return it->second;
    RatFunc f;
    // differentiate from the closest cached lower order
    std::vector<int> lower = orders;
    std::size_t last = orders.size();
    for (std::size_t i = orders.size(); i-- > 0;)
      if (orders[i] > 0) {
        last = i;
        break;
      }
    if (last == orders.size()) {
      f = basis_[k];
    } else {
      --lower[last];
      f = RatFunc(get(k, lower));
      f = derivative(f, args_[last]);
    }
    if (!f.is_polynomial())
      throw MathError("ansatz is not derivative-closed: a derivative of " + to_string(basis_[k]) +
                      " is not a Laurent polynomial in the kernels");
    return cache_.emplace(key, f.num()).first->second;
  }

private:
  const std::vector<RatFunc> &basis_;
  const std::vector<std::string> &args_;
  std::map<std::pair<std::size_t, std::vector<int>>, Poly> cache_;
};

} // namespace

Solution solve_determining(const DeterminingSystem &ds, const Ansatz &a) {
  if (a.basis.empty())
    throw MathError("empty ansatz");
  for (std::size_t i = 0; i < a.basis.size(); ++i)
    for (std::size_t j = i + 1; j < a.basis.size(); ++j)
      if (a.basis[i] == a.basis[j])
        throw MathError("ansatz basis elements must be distinct");
  const std::size_t K = a.basis.size();
  const std::size_t nfield = ds.chart.dim() + 1;
  const std::size_t KG = ds.gauge ? a.gauge_basis.size() : 0;
  const std::size_t ncols = nfield * K + KG;

  std::map<std::string, std::size_t> unknown_index;
  for (std::size_t u = 0; u < ds.unknowns.size(); ++u)
    unknown_index[ds.unknowns[u]] = u;

  DerivativeCache field_cache(a.basis, ds.args);
  DerivativeCache gauge_cache(a.gauge_basis, ds.args);

  RowReducer reducer(ncols);
  Solution sol;
  sol.unknown_count = ncols;

  for (const auto &eq : ds.equations) {
    std::map<Monomial, std::map<std::size_t, Rational>> rows;
    auto put = [&](const Monomial &m, std::size_t col, const Rational &c) {
      if (has_high_cos(m)) {
        Poly expanded = Poly::monomial(m, c);
        for (const auto &t : expanded.terms()) {
          Rational &slot = rows[t.mono][col];
          slot += t.coef;
        }
      } else {
        Rational &slot = rows[m][col];
        slot += c;
      }
    };
    for (const auto &t : eq.expr.num().terms()) {
      std::optional<std::size_t> u;
      std::vector<int> orders;
      Monomial rest;
      for (const auto &f : t.mono.factors()) {
        if (f.kernel.kind() == KernelKind::Opaque && unknown_index.count(f.kernel.name()) &&
            f.kernel.args() == ds.args) {
          if (u || f.exp != 1)
            throw MathError("determining equation is not linear in the unknowns");
          u = unknown_index[f.kernel.name()];
          orders = f.kernel.orders();
        } else {
          rest = rest * Monomial(f.kernel, f.exp);
        }
      }
      if (!u)
        throw MathError("determining equation has a term free of the unknowns");
      bool is_gauge = ds.gauge && *u == nfield;
      std::size_t nk = is_gauge ? KG : K;
      for (std::size_t k = 0; k < nk; ++k) {
        const Poly &d = is_gauge ? gauge_cache.get(k, orders) : field_cache.get(k, orders);
        std::size_t col = is_gauge ? nfield * K + k : *u * K + k;
        for (const auto &dt : d.terms())
          put(rest * dt.mono, col, t.coef * dt.coef);
      }
    }
    for (auto &[m, row] : rows) {
      SparseVec sv;
      for (auto &[c, x] : row)
        if (!x.is_zero())
          sv.emplace_back(c, x);
      if (sv.empty())
        continue;
      ++sol.row_count;
      reducer.add(sv);
    }
  }
  sol.rank = reducer.rank();
  Mat null = span_basis(reducer.nullspace());
  for (std::size_t v = 0; v < null.size(); ++v) {
    std::vector<RatFunc> comps(nfield);
    for (std::size_t f = 0; f < nfield; ++f)
      for (std::size_t k = 0; k < K; ++k)
        if (!null[v][f * K + k].is_zero())
          comps[f] += RatFunc(null[v][f * K + k]) * a.basis[k];
    RatFunc gauge;
    for (std::size_t k = 0; k < KG; ++k)
      if (!null[v][nfield * K + k].is_zero())
        gauge += RatFunc(null[v][nfield * K + k]) * a.gauge_basis[k];
    sol.fields.push_back(BundleVectorField::from_components("Y" + std::to_string(v + 1), comps));
    sol.gauges.push_back(gauge);
  }
  return sol;
}

} // namespace liesym
