#include "liesym/report.hpp"

#include "liesym/errors.hpp"
#include "liesym/io.hpp"
#include "liesym/numeric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace liesym {

using ojson = nlohmann::ordered_json;

namespace {

std::string str(const RatFunc &f) { return to_string(f); }
std::string tex(const RatFunc &f) { return to_latex(to_expr(f)); }
std::string tex_symbol(const std::string &s) { return to_latex(Expr::symbol(s)); }

std::string fmt(double x, const char *spec = "%.6e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::vector<std::string> component_vars(const Chart &c) {
  std::vector<std::string> v{c.param};
  v.insert(v.end(), c.coords.begin(), c.coords.end());
  return v;
}

// Joins signed terms: {"a", "-b"} -> "a - b".
std::string join_terms(const std::vector<std::string> &terms) {
  if (terms.empty())
    return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] == '-')
      out += " - " + terms[i].substr(1);
    else
      out += " + " + terms[i];
  }
  return out;
}

bool is_sum(const RatFunc &f) { return to_expr(f).kind() == Expr::Kind::Sum; }

std::string chart_line(const Chart &c) {
  std::string s = "parameter " + c.param + "; coordinates";
  for (const auto &x : c.coords)
    s += " " + x;
  if (!c.angles.empty()) {
    s += "; angles";
    for (const auto &x : c.angles)
      s += " " + x;
  }
  if (!c.functions.empty()) {
    s += "; functions";
    for (const auto &[name, args] : c.functions) {
      s += " " + name + "(";
      for (std::size_t i = 0; i < args.size(); ++i)
        s += (i ? ", " : "") + args[i];
      s += ")";
    }
  }
  return s;
}

std::string rational_matrix_text(const Mat &m, const std::string &indent) {
  std::vector<std::vector<std::string>> cells;
  std::size_t w = 1;
  for (const auto &r : m) {
    cells.emplace_back();
    for (const auto &x : r) {
      cells.back().push_back(x.str());
      w = std::max(w, cells.back().back().size());
    }
  }
  std::string out;
  for (const auto &r : cells) {
    out += indent + "[";
    for (std::size_t j = 0; j < r.size(); ++j)
      out += std::string(w - r[j].size() + (j ? 1 : 0), ' ') + r[j];
    out += " ]\n";
  }
  return out;
}

std::string bmatrix(const std::vector<std::vector<std::string>> &m) {
  std::string out = "\\begin{bmatrix}\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out += (j ? " & " : "") + m[i][j];
    out += i + 1 < m.size() ? " \\\\\n" : "\n";
  }
  return out + "\\end{bmatrix}";
}

std::vector<std::vector<std::string>> rational_cells(const Mat &m, bool latex) {
  std::vector<std::vector<std::string>> c;
  for (const auto &r : m) {
    c.emplace_back();
    for (const auto &x : r)
      c.back().push_back(latex ? tex(RatFunc(x)) : x.str());
  }
  return c;
}

std::string subspace_text(const Subspace &s, const std::vector<std::string> &names) {
  if (s.empty())
    return "0";
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? ", " : "") + combination_to_string(s[i], names);
  return out + ">";
}

ojson subspace_json(const Subspace &s) {
  ojson a = ojson::array();
  for (const auto &r : s) {
    ojson row = ojson::array();
    for (const auto &x : r)
      row.push_back(x.str());
    a.push_back(row);
  }
  return a;
}

std::vector<std::string> names_of(const LieAlgebra &g) {
  std::vector<std::string> n;
  for (std::size_t i = 0; i < g.dim(); ++i)
    n.push_back(g.name(i));
  return n;
}

std::string tex_name(const std::string &n) {
  // X12 -> {\bf X}_{12}
  std::size_t k = n.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1])))
    --k;
  if (k == 0 || k == n.size())
    return "\\mathrm{" + n + "}";
  return "{\\bf " + n.substr(0, k) + "}_{" + n.substr(k) + "}";
}

std::string combination_latex(const Vec &v, const std::vector<std::string> &names) {
  std::vector<std::string> t;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero())
      continue;
    std::string c;
    if (v[k] == Rational(-1))
      c = "-";
    else if (!v[k].is_one())
      c = tex(RatFunc(v[k]));
    t.push_back(c + tex_name(names[k]));
  }
  return join_terms(t);
}

struct ModeRun {
  Mode mode;
  DeterminingSystem ds;
  Ansatz ansatz;
  Solution sol;
  std::vector<SymmetryReport> checks;
};

ModeRun run_mode(const Metric &g, const GeodesicSystem &sys, Mode mode, const AnsatzConfig &cfg) {
  ModeRun r{mode,
            mode == Mode::Noether ? determining_system(g, mode) : determining_system_liepoint(sys),
            default_ansatz(g.chart, cfg),
            {},
            {}};
  r.sol = solve_determining(r.ds, r.ansatz);
  for (const auto &X : r.sol.fields)
    r.checks.push_back(mode == Mode::Noether ? verify_noether(X, g) : verify_liepoint(X, sys));
  return r;
}

ojson report_json(const SymmetryReport &rep, const Chart &chart) {
  ojson j;
  j["name"] = rep.field.name;
  j["xi"] = str(rep.field.xi);
  ojson eta = ojson::array();
  for (const auto &e : rep.field.eta)
    eta.push_back(str(e));
  j["eta"] = eta;
  j["operator"] = field_to_string(rep.field, chart);
  j["pass"] = rep.pass;
  ojson res = ojson::array();
  for (const auto &r : rep.residuals)
    res.push_back(str(r));
  j["residuals"] = res;
  if (rep.first_integral)
    j["first_integral"] = str(*rep.first_integral);
  return j;
}

} // namespace

Format parse_format(const std::string &s) {
  if (s == "text")
    return Format::Text;
  if (s == "json")
    return Format::Json;
  if (s == "latex")
    return Format::Latex;
  throw ParseError("unknown output format '" + s + "' (expected text, json or latex)", 0);
}

std::string field_to_string(const BundleVectorField &X, const Chart &chart) {
  auto vars = component_vars(chart);
  auto comps = X.components();
  std::vector<std::string> terms;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    const RatFunc &c = comps[a];
    if (c.is_zero())
      continue;
    const std::string d = "D_" + vars[a];
    if (c == RatFunc(1))
      terms.push_back(d);
    else if (c == RatFunc(-1))
      terms.push_back("-" + d);
    else if (is_sum(c))
      terms.push_back("(" + str(c) + ")*" + d);
    else
      terms.push_back(str(c) + "*" + d);
  }
  return join_terms(terms);
}

std::string field_to_latex(const BundleVectorField &X, const Chart &chart) {
  auto vars = component_vars(chart);
  auto comps = X.components();
  std::vector<std::string> terms;
  for (std::size_t a = 0; a < comps.size(); ++a) {
    const RatFunc &c = comps[a];
    if (c.is_zero())
      continue;
    const std::string d = "\\partial_{" + tex_symbol(vars[a]) + "}";
    if (c == RatFunc(1))
      terms.push_back(d);
    else if (c == RatFunc(-1))
      terms.push_back("-" + d);
    else if (is_sum(c))
      terms.push_back("\\left(" + tex(c) + "\\right)" + d);
    else
      terms.push_back(tex(c) + "\\," + d);
  }
  return join_terms(terms);
}

std::string combination_to_string(const Vec &v, const std::vector<std::string> &names) {
  std::vector<std::string> t;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero())
      continue;
    std::string c;
    if (v[k] == Rational(-1))
      c = "-";
    else if (!v[k].is_one())
      c = v[k].str() + "*";
    t.push_back(c + names[k]);
  }
  return join_terms(t);
}

// --- analyze ---------------------------------------------------------------

Report analyze_report(const Metric &g, const AnalyzeOptions &opt, Format f) {
  const GeodesicSystem sys = geodesic_system(g);
  const RatFunc L = geodesic_lagrangian(g);
  std::vector<ModeRun> runs;
  if (opt.noether)
    runs.push_back(run_mode(g, sys, Mode::Noether, opt.ansatz));
  if (opt.liepoint)
    runs.push_back(run_mode(g, sys, Mode::LiePoint, opt.ansatz));

  Report rep;
  for (const auto &r : runs)
    for (const auto &c : r.checks)
      rep.pass = rep.pass && c.pass;

  const Chart &chart = g.chart;
  if (f == Format::Json) {
    auto mode_json = [&](const ModeRun &r) {
      ojson j;
      j["mode"] = mode_name(r.mode);
      j["metric_id"] = g.id;
      ojson gens = ojson::array();
      for (const auto &c : r.checks)
        gens.push_back(report_json(c, chart));
      j["generators"] = gens;
      j["determining_equations_count"] = r.ds.equations.size();
      j["nullspace_dim"] = r.sol.fields.size();
      j["unknown_coefficients"] = r.sol.unknown_count;
      j["rank"] = r.sol.rank;
      j["ansatz"] = {{"degree", r.ansatz.degree}, {"kernels", r.ansatz.kernels}};
      return j;
    };
    ojson out;
    if (runs.size() == 1) {
      out = mode_json(runs[0]);
    } else {
      out["metric_id"] = g.id;
      out["analyses"] = ojson::array();
      for (const auto &r : runs)
        out["analyses"].push_back(mode_json(r));
    }
    out["lagrangian"] = str(L);
    ojson eqs = ojson::array();
    for (const auto &e : sys.E)
      eqs.push_back(str(e));
    out["geodesic_equations"] = eqs;
    rep.text = out.dump(2) + "\n";
    return rep;
  }

  std::ostringstream os;
  if (f == Format::Latex) {
    os << "% metric " << g.id << "\n";
    os << "\\begin{equation*}\n\\mathcal{L} = " << tex(L) << "\n\\end{equation*}\n";
    os << "\\begin{eqnarray*}\n";
    for (std::size_t i = 0; i < sys.E.size(); ++i)
      os << "E_{" << i + 1 << "}: & " << tex(sys.E[i]) << " = 0"
         << (i + 1 < sys.E.size() ? " \\\\[2mm]\n" : "\n");
    os << "\\end{eqnarray*}\n";
    for (const auto &r : runs) {
      os << "% " << mode_name(r.mode) << " symmetries, dimension " << r.sol.fields.size() << "\n";
      os << "\\begin{align*}\n";
      for (std::size_t i = 0; i < r.checks.size(); ++i)
        os << tex_name(r.checks[i].field.name) << " &= " << field_to_latex(r.checks[i].field, chart)
           << (i + 1 < r.checks.size() ? " \\\\\n" : "\n");
      os << "\\end{align*}\n";
    }
    rep.text = os.str();
    return rep;
  }

  os << "metric: " << g.id << "\n";
  os << "chart: " << chart_line(chart) << "\n";
  os << "lagrangian: L = " << str(L) << "\n";
  os << "geodesic equations:\n";
  for (std::size_t i = 0; i < sys.E.size(); ++i)
    os << "  E_" << chart.coords[i] << " = " << str(sys.E[i]) << "\n";
  for (const auto &r : runs) {
    os << "\n" << mode_name(r.mode) << " symmetries: dimension " << r.sol.fields.size() << "\n";
    os << "  determining equations: " << r.ds.equations.size()
       << ", unknown coefficients: " << r.sol.unknown_count << ", rank: " << r.sol.rank << "\n";
    os << "  ansatz: degree " << r.ansatz.degree << ", kernels";
    for (const auto &k : r.ansatz.kernels)
      os << " " << k;
    os << "\n";
    for (const auto &c : r.checks) {
      os << "  " << c.field.name << " = " << field_to_string(c.field, chart) << "   ["
         << (c.pass ? "verified" : "FAILED verification") << "]\n";
      if (c.first_integral)
        os << "      first integral: " << str(*c.first_integral) << "\n";
    }
  }
  rep.text = os.str();
  return rep;
}

// --- verify ------------------------------------------------------------------

Report verify_report(const Metric &g, const std::vector<BundleVectorField> &gens, bool noether,
                     bool liepoint, Format f) {
  const GeodesicSystem sys = geodesic_system(g);
  std::vector<SymmetryReport> reps;
  for (const auto &X : gens) {
    if (noether)
      reps.push_back(verify_noether(X, g));
    if (liepoint)
      reps.push_back(verify_liepoint(X, sys));
  }
  Report rep;
  std::size_t passed = 0;
  for (const auto &r : reps) {
    rep.pass = rep.pass && r.pass;
    passed += r.pass;
  }
  const Chart &chart = g.chart;
  if (f == Format::Json) {
    ojson out;
    out["metric_id"] = g.id;
    ojson res = ojson::array();
    for (const auto &r : reps) {
      ojson j = report_json(r, chart);
      j["mode"] = mode_name(r.mode);
      res.push_back(j);
    }
    out["results"] = res;
    out["passed"] = passed;
    out["checks"] = reps.size();
    out["all_pass"] = rep.pass;
    rep.text = out.dump(2) + "\n";
    return rep;
  }
  std::ostringstream os;
  if (f == Format::Latex) {
    os << "\\begin{tabular}{l l l l}\n\\hline\\hline\n"
       << "mode & generator & & result \\\\\n\\hline\n";
    for (const auto &r : reps)
      os << mode_name(r.mode) << " & $" << tex_name(r.field.name) << "$ & $"
         << field_to_latex(r.field, chart) << "$ & " << (r.pass ? "pass" : "fail") << " \\\\\n";
    os << "\\hline\n\\end{tabular}\n";
    rep.text = os.str();
    return rep;
  }
  os << "metric: " << g.id << "\n";
  for (const auto &r : reps) {
    os << (r.pass ? "PASS " : "FAIL ") << mode_name(r.mode) << " " << r.field.name << " = "
       << field_to_string(r.field, chart) << "\n";
    if (!r.pass) {
      for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        if (r.residuals[i].is_zero())
          continue;
        const std::string label =
            r.mode == Mode::Noether ? "residual" : "residual E_" + chart.coords[i];
        os << "     " << label << ": " << str(r.residuals[i]) << "\n";
      }
    } else if (r.first_integral) {
      os << "     first integral: " << str(*r.first_integral) << "\n";
    }
  }
  os << passed << " of " << reps.size() << " checks passed\n";
  rep.text = os.str();
  return rep;
}

// --- algebra -------------------------------------------------------------------

Report algebra_report(const LieAlgebra &g, Format f) {
  const std::size_t m = g.dim();
  const auto names = names_of(g);
  Report rep;
  const auto jacobi = check_jacobi(g);
  rep.pass = jacobi.empty();
  const Mat K = killing_form(g);
  const bool semisimple = is_semisimple(g);
  const auto series = derived_series(g);
  const bool solvable = series.back().empty();
  const Subspace r = radical(g);
  std::vector<std::size_t> h_idx;
  {
    std::vector<bool> piv(m, false);
    for (const auto &row : r)
      for (std::size_t k = 0; k < m; ++k)
        if (!row[k].is_zero()) {
          piv[k] = true;
          break;
        }
    for (std::size_t k = 0; k < m; ++k)
      if (!piv[k])
        h_idx.push_back(k);
  }
  const Subspace h = coordinate_subspace(m, h_idx);
  const bool levi = levi_check(g, r, h);

  struct Adj {
    std::optional<AdjointMap> map;
    std::string error;
  };
  std::vector<Adj> adj;
  for (std::size_t i = 0; i < m; ++i) {
    try {
      adj.push_back({adjoint_exp(g, i, "q"), {}});
    } catch (const UnsupportedError &e) {
      adj.push_back({std::nullopt, e.what()});
      rep.unsupported = true;
    }
  }

  if (f == Format::Json) {
    ojson out;
    out["basis"] = names;
    if (!g.basis.empty()) {
      ojson fields = ojson::array();
      for (const auto &X : g.basis)
        fields.push_back(field_to_string(X, g.chart));
      out["fields"] = fields;
    }
    ojson c = ojson::array();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
          if (!g.c[i][j][k].is_zero())
            c.push_back({i + 1, j + 1, k + 1, g.c[i][j][k].str()});
    out["c"] = c;
    out["jacobi_failures"] = jacobi;
    out["killing_form"] = subspace_json(K);
    out["semisimple"] = semisimple;
    ojson ser = ojson::array();
    for (const auto &s : series)
      ser.push_back(subspace_json(s));
    out["derived_series"] = ser;
    out["solvable"] = solvable;
    out["radical"] = subspace_json(r);
    out["levi"] = {{"r", subspace_json(r)}, {"h", subspace_json(h)}, {"pass", levi}};
    ojson ad = ojson::array();
    for (std::size_t i = 0; i < m; ++i) {
      ojson a;
      a["generator"] = names[i];
      a["parameter"] = "q";
      if (adj[i].map) {
        ojson mat = ojson::array();
        for (const auto &row : adj[i].map->M) {
          ojson rr = ojson::array();
          for (const auto &x : row)
            rr.push_back(str(x));
          mat.push_back(rr);
        }
        a["matrix"] = mat;
      } else {
        a["error"] = adj[i].error;
      }
      ad.push_back(a);
    }
    out["adjoint"] = ad;
    rep.text = out.dump(2) + "\n";
    return rep;
  }

  std::ostringstream os;
  if (f == Format::Latex) {
    if (!g.basis.empty()) {
      os << "\\begin{align*}\n";
      for (std::size_t i = 0; i < m; ++i)
        os << tex_name(names[i]) << " &= " << field_to_latex(g.basis[i], g.chart)
           << (i + 1 < m ? " \\\\\n" : "\n");
      os << "\\end{align*}\n";
    }
    os << "\\begin{table}[ht]\n\\caption{commutator table}\n\\centering\n\\begin{tabular}{c";
    for (std::size_t i = 0; i < m; ++i)
      os << " c";
    os << "}\n\\hline\\hline\n  [~,~]";
    for (std::size_t j = 0; j < m; ++j)
      os << " & $" << tex_name(names[j]) << "$";
    os << " \\\\\n\\hline\n";
    for (std::size_t i = 0; i < m; ++i) {
      os << "$" << tex_name(names[i]) << "$";
      for (std::size_t j = 0; j < m; ++j)
        os << " & $" << combination_latex(g.c[i][j], names) << "$";
      os << " \\\\\n\\hline\n";
    }
    os << "\\end{tabular}\n\\end{table}\n";
    os << "$$ k=\n" << bmatrix(rational_cells(K, true)) << "\n$$\n";
    for (std::size_t i = 0; i < m; ++i) {
      if (!adj[i].map) {
        os << "% adjoint map of " << names[i] << ": " << adj[i].error << "\n";
        continue;
      }
      std::vector<std::vector<std::string>> cells;
      for (const auto &row : adj[i].map->M) {
        cells.emplace_back();
        for (const auto &x : row)
          cells.back().push_back(tex(x));
      }
      os << "$$M_{" << i + 1 << "}^{q}=\n" << bmatrix(cells) << "\n$$\n";
    }
    rep.text = os.str();
    return rep;
  }

  if (!g.basis.empty()) {
    os << "basis:\n";
    for (std::size_t i = 0; i < m; ++i)
      os << "  " << names[i] << " = " << field_to_string(g.basis[i], g.chart) << "\n";
  }
  os << "commutator table [row, column]:\n";
  std::vector<std::vector<std::string>> cells(m + 1, std::vector<std::string>(m + 1));
  cells[0][0] = "[ , ]";
  for (std::size_t i = 0; i < m; ++i) {
    cells[0][i + 1] = names[i];
    cells[i + 1][0] = names[i];
    for (std::size_t j = 0; j < m; ++j)
      cells[i + 1][j + 1] = combination_to_string(g.c[i][j], names);
  }
  std::vector<std::size_t> w(m + 1, 0);
  for (const auto &row : cells)
    for (std::size_t j = 0; j <= m; ++j)
      w[j] = std::max(w[j], row[j].size());
  for (const auto &row : cells) {
    std::string line = " ";
    for (std::size_t j = 0; j <= m; ++j)
      line += " " + row[j] + std::string(w[j] - row[j].size(), ' ');
    while (!line.empty() && line.back() == ' ')
      line.pop_back();
    os << line << "\n";
  }
  os << "jacobi identity: " << (jacobi.empty() ? "holds" : "FAILS") << "\n";
  for (const auto &j : jacobi)
    os << "  " << j << "\n";
  os << "killing form:\n" << rational_matrix_text(K, "  ");
  os << "semisimple: " << (semisimple ? "yes" : "no") << "\n";
  os << "derived series:\n";
  for (std::size_t k = 0; k < series.size(); ++k)
    os << "  g(" << k << ") = " << subspace_text(series[k], names) << "  (dim " << series[k].size()
       << ")\n";
  os << "solvable: " << (solvable ? "yes" : "no") << "\n";
  os << "radical: " << subspace_text(r, names) << "\n";
  os << "levi split: r = " << subspace_text(r, names) << ", h = " << subspace_text(h, names) << ": "
     << (levi ? "valid" : "not valid") << "\n";
  os << "adjoint maps, M[j][k] = coefficient of X_k in Ad(exp(q X_i)) X_j:\n";
  for (std::size_t i = 0; i < m; ++i) {
    os << "  " << names[i] << ":";
    if (!adj[i].map) {
      os << " unsupported (" << adj[i].error << ")\n";
      continue;
    }
    os << "\n";
    for (const auto &row : adj[i].map->M) {
      os << "    [";
      for (std::size_t k = 0; k < row.size(); ++k)
        os << (k ? ", " : "") << str(row[k]);
      os << "]\n";
    }
  }
  rep.text = os.str();
  return rep;
}

// --- optimal -------------------------------------------------------------------

Report optimal_report(const LieAlgebra &g, std::size_t samples, std::uint64_t seed, Format f) {
  if (g.dim() != 5 || g.c != general_algebra().c)
    throw UnsupportedError("the optimal-system schedule is available only for the algebra with "
                           "two central elements X1, X2 and a rotation triple X3, X4, X5 "
                           "([X3,X4]=X5, [X3,X5]=-X4, [X4,X5]=X3)");
  const auto reps = general_representatives();
  const auto inv = orbit_invariants_check(g, general_invariants());
  const CoverageReport cov = verify_optimal_cover(g, reps, samples, seed);
  OrbitReducer red(g, reps, general_schedule());
  const std::vector<Vec> examples{{0, 0, 0, 1, 0}, {0, 0, 0, 0, 7}, {1, 2, 3, 4, 0}};
  std::vector<ReductionTrace> traces;
  for (const auto &v : examples)
    traces.push_back(red.reduce(v));

  Report rep;
  rep.pass = cov.unmatched.empty() && cov.invariant_drift_max < 1e-9;

  auto vec_str = [](const Vec &v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k)
      s += (k ? ", " : "") + v[k].str();
    return s + ")";
  };
  auto dvec_str = [](const std::vector<double> &v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k)
      s += (k ? ", " : "") + fmt(v[k] == 0 ? 0.0 : v[k], "%.10g");
    return s + ")";
  };

  if (f == Format::Json) {
    ojson out;
    ojson rj = ojson::array();
    for (const auto &r : reps)
      rj.push_back({{"case", r.id}, {"pattern", r.label()}});
    out["reps"] = rj;
    out["samples"] = cov.samples;
    out["seed"] = cov.seed;
    out["valid"] = cov.valid;
    out["invalid"] = cov.invalid;
    out["exact"] = cov.exact;
    ojson mj = ojson::object();
    for (const auto &[k, v] : cov.matched)
      mj[std::to_string(k)] = v;
    out["matched"] = mj;
    ojson uj = ojson::array();
    for (const auto &t : cov.unmatched)
      uj.push_back({{"input", vec_str(t.input)}, {"reduced", dvec_str(t.output)}});
    out["unmatched"] = uj;
    out["invariant_drift_max"] = cov.invariant_drift_max;
    out["replay_error_max"] = cov.replay_error_max;
    ojson ij = ojson::array();
    for (const auto &x : inv)
      ij.push_back(
          {{"name", x.name}, {"invariant", x.invariant}, {"per_generator", x.per_generator}});
    out["invariants"] = ij;
    ojson sj = ojson::array();
    for (const auto &[a, b] : cov.separation_failures)
      sj.push_back({a, b});
    out["separation_failures"] = sj;
    ojson ej = ojson::array();
    for (const auto &t : traces) {
      ojson moves = ojson::array();
      for (const auto &mv : t.moves)
        moves.push_back({{"generator", mv.generator + 1},
                         {"zeroes", "a" + std::to_string(mv.zeroed + 1)},
                         {"parameter", mv.param_text},
                         {"exact", mv.exact}});
      ej.push_back({{"input", vec_str(t.input)},
                    {"moves", moves},
                    {"scale", t.exact_scale ? t.exact_scale->str() : fmt(t.scale, "%.17g")},
                    {"output", t.exact_output ? vec_str(*t.exact_output) : dvec_str(t.output)},
                    {"case", t.matched}});
    }
    out["examples"] = ej;
    rep.text = out.dump(2) + "\n";
    return rep;
  }

  std::ostringstream os;
  os << "representatives:\n";
  for (const auto &r : reps)
    os << "  " << r.id << ") " << r.label() << "\n";
  os << "orbit invariants:\n";
  for (const auto &x : inv) {
    os << "  " << x.name << ": " << (x.invariant ? "invariant" : "NOT invariant") << " (";
    for (std::size_t i = 0; i < x.per_generator.size(); ++i)
      os << (i ? " " : "") << "Ad" << i + 1 << (x.per_generator[i] ? "+" : "-");
    os << ")\n";
  }
  os << "coverage: " << cov.samples << " samples, seed " << cov.seed << ", " << cov.valid
     << " valid, " << cov.invalid << " invalid, " << cov.exact << " reduced exactly\n";
  for (const auto &[k, v] : cov.matched)
    os << "  case " << k << ": " << v << "\n";
  os << "  unmatched: " << cov.unmatched.size() << "\n";
  for (const auto &t : cov.unmatched)
    os << "    " << vec_str(t.input) << " -> " << dvec_str(t.output) << "\n";
  os << "invariant drift max: " << fmt(cov.invariant_drift_max) << "\n";
  os << "replay error max: " << fmt(cov.replay_error_max) << "\n";
  if (cov.separation_failures.empty()) {
    os << "separation: every pair of representatives is separated by the invariants\n";
  } else {
    os << "separation: pairs not separated by the invariants (possibly conjugate):";
    for (const auto &[a, b] : cov.separation_failures)
      os << " (" << a << "," << b << ")";
    os << "\n";
  }
  os << "examples:\n";
  for (const auto &t : traces) {
    os << "  " << vec_str(t.input) << ":";
    if (t.moves.empty())
      os << " no moves;";
    for (const auto &mv : t.moves)
      os << " F" << mv.generator + 1 << "(" << mv.param_text << ") zeroes a" << mv.zeroed + 1
         << ";";
    os << " scale " << (t.exact_scale ? t.exact_scale->str() : fmt(t.scale, "%.10g")) << " -> "
       << (t.exact_output ? vec_str(*t.exact_output) : dvec_str(t.output)) << ", case " << t.matched
       << "\n";
  }
  rep.text = os.str();
  return rep;
}

// --- integrate -------------------------------------------------------------------

IntegrationResult integrate_with_charges(const Metric &bound, const IntegrateOptions &opt) {
  const Chart &chart = bound.chart;
  if (!chart.functions.empty())
    throw MathError("every declared function must be bound before integrating (missing '" +
                    chart.functions.begin()->first + "')");
  const std::size_t n = chart.dim();
  if (opt.init.size() != 2 * n)
    throw MathError("expected " + std::to_string(2 * n) + " initial values (positions then " +
                    "velocities), got " + std::to_string(opt.init.size()));
  if (!(opt.step > 0) || !(opt.span > 0))
    throw MathError("step and span must be positive");

  const GeodesicSystem sys = geodesic_system(bound);
  const RatFunc L = geodesic_lagrangian(bound);
  std::vector<BundleVectorField> gens = opt.gens;
  if (!opt.gens_given)
    gens =
        solve_determining(determining_system(bound, Mode::Noether), default_ansatz(chart)).fields;

  std::vector<std::pair<ChargeDrift, RatFunc>> charges;
  charges.push_back({{"L", true, 0, 0}, L});
  for (const auto &X : gens) {
    validate_field(X, chart);
    const bool sym = noether_residual(X, L, RatFunc(0), chart).is_zero();
    charges.push_back({{X.name, sym, 0, 0}, noether_charge(X, L, RatFunc(0), chart)});
  }

  std::vector<double> x0(opt.init.begin(), opt.init.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> v0(opt.init.begin() + static_cast<std::ptrdiff_t>(n), opt.init.end());
  IntegrationResult res;
  res.trace = integrate_geodesic(sys, {}, x0, v0, opt.step, opt.span);

  std::vector<std::string> vars{chart.param};
  vars.insert(vars.end(), chart.coords.begin(), chart.coords.end());
  for (std::size_t a = 0; a < n; ++a)
    vars.push_back(chart.dot(a));
  for (auto &[cd, I] : charges) {
    NumericFunction F(I, vars);
    std::vector<double> pt(vars.size());
    for (std::size_t k = 0; k < res.trace.s.size(); ++k) {
      pt[0] = res.trace.s[k];
      for (std::size_t a = 0; a < n; ++a) {
        pt[1 + a] = res.trace.x[k][a];
        pt[1 + n + a] = res.trace.xdot[k][a];
      }
      const double v = F(pt);
      if (k == 0)
        cd.initial = v;
      else
        cd.max_drift = std::max(cd.max_drift, std::abs(v - cd.initial));
    }
    res.charges.push_back(cd);
  }
  return res;
}

Report integrate_report(const Metric &g, const IntegrateOptions &opt, Format f) {
  const Metric bound = bind_functions(g, opt.bindings);
  IntegrateOptions o = opt;
  const FunctionBinding fb = bind_chart(g.chart, opt.bindings);
  for (auto &X : o.gens)
    X = bind_field(X, fb);
  const IntegrationResult res = integrate_with_charges(bound, o);
  const Chart &chart = bound.chart;
  const auto &tr = res.trace;
  Report rep;
  const std::size_t last = tr.s.size() - 1;

  if (f == Format::Json) {
    ojson out;
    out["metric_id"] = g.id;
    ojson b = ojson::object();
    for (const auto &[k, v] : opt.bindings)
      b[k] = v;
    out["bindings"] = b;
    out["step"] = opt.step;
    out["span"] = opt.span;
    out["steps"] = last;
    out["coords"] = chart.coords;
    out["initial"] = {{"x", tr.x[0]}, {"xdot", tr.xdot[0]}};
    out["final"] = {{"s", tr.s[last]}, {"x", tr.x[last]}, {"xdot", tr.xdot[last]}};
    ojson cj = ojson::array();
    for (const auto &c : res.charges)
      cj.push_back({{"name", c.name},
                    {"noether_symmetry", c.symmetry},
                    {"initial", c.initial},
                    {"max_drift", c.max_drift}});
    out["charges"] = cj;
    rep.text = out.dump(2) + "\n";
    return rep;
  }
  std::ostringstream os;
  if (f == Format::Latex) {
    os << "\\begin{tabular}{l l r r}\n\\hline\\hline\ncharge & symmetry & initial & max drift "
          "\\\\\n\\hline\n";
    for (const auto &c : res.charges)
      os << "$" << (c.name == "L" ? std::string("\\mathcal{L}") : tex_name(c.name)) << "$ & "
         << (c.symmetry ? "yes" : "no") << " & " << fmt(c.initial) << " & " << fmt(c.max_drift)
         << " \\\\\n";
    os << "\\hline\n\\end{tabular}\n";
    rep.text = os.str();
    return rep;
  }
  os << "metric: " << g.id;
  for (const auto &[k, v] : opt.bindings)
    os << ", " << k << " = " << v;
  os << "\n";
  os << "rk4: step " << fmt(opt.step, "%g") << ", span " << fmt(opt.span, "%g") << ", " << last
     << " steps\n";
  auto state = [&](std::size_t k) {
    std::string s;
    for (std::size_t a = 0; a < chart.dim(); ++a)
      s += " " + chart.coords[a] + "=" + fmt(tr.x[k][a], "%.10g");
    for (std::size_t a = 0; a < chart.dim(); ++a)
      s += " " + chart.dot(a) + "=" + fmt(tr.xdot[k][a], "%.10g");
    return s;
  };
  os << "initial:" << state(0) << "\n";
  os << "final (s=" << fmt(tr.s[last], "%g") << "):" << state(last) << "\n";
  os << "charges (A = 0):\n";
  for (const auto &c : res.charges)
    os << "  " << c.name << (c.symmetry ? "" : " [not a Noether symmetry]") << ": initial "
       << fmt(c.initial) << ", max drift " << fmt(c.max_drift) << "\n";
  rep.text = os.str();
  return rep;
}

} // namespace liesym
