#include "liesym/io.hpp"

#include "liesym/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace liesym {

namespace {

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

struct Line {
  std::size_t number;
  std::string text; // comment stripped, not trimmed
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t n = 1, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string l(text.substr(start, end - start));
    if (!l.empty() && l.back() == '\r')
      l.pop_back();
    if (auto h = l.find('#'); h != std::string::npos)
      l.erase(h);
    out.push_back({n++, l});
    if (end == text.size())
      break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string &s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  for (std::string x; is >> x;)
    w.push_back(x);
  return w;
}

std::size_t first_non_space(const std::string &s, std::size_t from = 0) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from])))
    ++from;
  return from;
}

// Parses `text` (a slice starting at 0-based `offset` of the line) and maps
// expression errors onto file positions.
Expr parse_at(std::string_view text, std::size_t offset, const ParseOptions &opts, std::size_t line,
              const std::string &source) {
  try {
    return parse_expr(text, opts);
  } catch (const ParseError &e) {
    throw ParseError(e.cause(), offset + (e.column() ? e.column() : 1), line, source);
  }
}

void check_symbols(const Expr &e, const std::set<std::string> &allowed, std::size_t column,
                   std::size_t line, const std::string &source) {
  for (const auto &s : symbols_of(e))
    if (!allowed.count(s))
      throw ParseError("undeclared symbol '" + s + "'", column, line, source);
}

std::set<std::string> chart_symbols(const Chart &chart, bool with_param) {
  std::set<std::string> s(chart.coords.begin(), chart.coords.end());
  if (with_param)
    s.insert(chart.param);
  return s;
}

std::string stem(const std::string &path) {
  std::string base = path;
  if (auto p = base.find_last_of('/'); p != std::string::npos)
    base = base.substr(p + 1);
  if (auto d = base.find_last_of('.'); d != std::string::npos && d > 0)
    base = base.substr(0, d);
  return base;
}

} // namespace

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Metric parse_metric(std::string_view text, const std::string &source, const std::string &id) {
  Chart chart;
  bool have_coords = false;
  struct Entry {
    std::size_t i, j;
    Expr e;
  };
  std::vector<Entry> entries;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  for (const auto &[ln, raw] : split_lines(text)) {
    auto w = words(raw);
    if (w.empty())
      continue;
    const std::string &kw = w[0];
    const std::size_t kw_col = first_non_space(raw) + 1;
    auto fail = [&](const std::string &msg, std::size_t col = 0) {
      throw ParseError(msg, col ? col : kw_col, ln, source);
    };
    if (kw == "param") {
      if (w.size() != 2 || !is_ident(w[1]))
        fail("expected 'param <name>'");
      if (have_coords)
        fail("'param' must precede 'coords'");
      chart.param = w[1];
    } else if (kw == "coords") {
      if (have_coords)
        fail("duplicate 'coords' line");
      if (w.size() < 2)
        fail("expected at least one coordinate");
      for (std::size_t k = 1; k < w.size(); ++k) {
        if (!is_ident(w[k]))
          fail("invalid coordinate name '" + w[k] + "'");
        if (w[k] == chart.param)
          fail("coordinate '" + w[k] + "' clashes with the parameter");
        for (const auto &c : chart.coords)
          if (c == w[k])
            fail("duplicate coordinate '" + w[k] + "'");
        chart.coords.push_back(w[k]);
      }
      have_coords = true;
    } else if (kw == "angles") {
      if (!have_coords)
        fail("'angles' must follow 'coords'");
      for (std::size_t k = 1; k < w.size(); ++k) {
        if (chart.index_of(w[k]) < 0)
          fail("angle '" + w[k] + "' is not a coordinate");
        chart.angles.push_back(w[k]);
      }
    } else if (kw == "function") {
      if (!have_coords)
        fail("'function' must follow 'coords'");
      std::string rest = raw.substr(raw.find("function") + 8);
      auto open = rest.find('('), close = rest.rfind(')');
      if (open == std::string::npos || close == std::string::npos || close < open)
        fail("expected 'function <name>(<arg>, ...)'");
      std::string name = rest.substr(0, open);
      name.erase(0, first_non_space(name));
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
        name.pop_back();
      if (!is_ident(name))
        fail("invalid function name '" + name + "'");
      if (!words(rest.substr(close + 1)).empty())
        fail("unexpected text after function declaration");
      std::vector<std::string> args;
      std::string inner = rest.substr(open + 1, close - open - 1);
      std::stringstream ss(inner);
      for (std::string a; std::getline(ss, a, ',');) {
        auto aw = words(a);
        if (aw.size() != 1 || !is_ident(aw[0]))
          fail("invalid argument list for '" + name + "'");
        if (chart.index_of(aw[0]) < 0)
          fail("argument '" + aw[0] + "' of '" + name + "' is not a coordinate");
        args.push_back(aw[0]);
      }
      if (args.empty())
        fail("function '" + name + "' needs at least one argument");
      if (chart.functions.count(name))
        fail("duplicate function '" + name + "'");
      chart.functions[name] = args;
    } else if (kw == "g") {
      if (!have_coords)
        fail("'g' lines must follow 'coords'");
      auto eq = raw.find('=');
      if (eq == std::string::npos)
        fail("expected 'g <i> <j> = <expr>'");
      auto idx = words(raw.substr(0, eq));
      if (idx.size() != 3)
        fail("expected 'g <i> <j> = <expr>'");
      std::size_t ij[2];
      for (int k = 0; k < 2; ++k) {
        const std::string &t = idx[1 + k];
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
          fail("index '" + t + "' is not a non-negative integer");
        ij[k] = std::stoul(t);
        if (ij[k] >= chart.dim())
          fail("index " + t + " out of range for " + std::to_string(chart.dim()) + " coordinates");
      }
      if (ij[0] > ij[1])
        fail("only the upper triangle (i <= j) may be given");
      if (!seen.insert({ij[0], ij[1]}).second)
        fail("component g " + idx[1] + " " + idx[2] + " given twice");
      ParseOptions opts;
      opts.functions = chart.functions;
      const std::string expr_text = raw.substr(eq + 1);
      Expr e = parse_at(expr_text, eq + 1, opts, ln, source);
      check_symbols(e, chart_symbols(chart, false), eq + 2, ln, source);
      entries.push_back({ij[0], ij[1], e});
    } else {
      fail("unknown directive '" + kw + "'");
    }
  }
  if (!have_coords)
    throw ParseError("missing 'coords' line", 0, 0, source);
  try {
    chart.validate();
  } catch (const MathError &e) {
    throw ParseError(e.what(), 0, 0, source);
  }
  const std::size_t n = chart.dim();
  Matrix g(n, std::vector<RatFunc>(n, RatFunc(0)));
  for (const auto &en : entries) {
    RatFunc v = to_ratfunc(en.e);
    g[en.i][en.j] = v;
    g[en.j][en.i] = v;
  }
  try {
    return make_metric(id, chart, g);
  } catch (const MathError &e) {
    throw MathError(source + ": " + e.what());
  }
}

Metric load_metric(const std::string &path) {
  return parse_metric(read_file(path), path, stem(path));
}

RatFunc parse_chart_expr(std::string_view text, const Chart &chart, bool allow_param) {
  ParseOptions opts;
  opts.functions = chart.functions;
  Expr e = parse_expr(text, opts);
  check_symbols(e, chart_symbols(chart, allow_param), 0, 0, {});
  return to_ratfunc(e);
}

std::vector<BundleVectorField> parse_generators(std::string_view text, const Chart &chart,
                                                const std::string &source) {
  const std::size_t n = chart.dim();
  ParseOptions opts;
  opts.functions = chart.functions;
  const auto allowed = chart_symbols(chart, true);
  std::vector<BundleVectorField> out;
  std::set<std::string> names;

  auto add = [&](BundleVectorField X, std::size_t line) {
    if (!names.insert(X.name).second)
      throw ParseError("duplicate generator name '" + X.name + "'", 0, line, source);
    out.push_back(std::move(X));
  };

  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), 0, 0, source);
    }
    const nlohmann::json *gens = nullptr;
    if (j.contains("generators"))
      gens = &j["generators"];
    else if (j.contains("analyses") && j["analyses"].is_array() && !j["analyses"].empty() &&
             j["analyses"][0].contains("generators"))
      gens = &j["analyses"][0]["generators"];
    if (!gens || !gens->is_array())
      throw ParseError("JSON input has no 'generators' array", 0, 0, source);
    std::size_t k = 0;
    for (const auto &gj : *gens) {
      ++k;
      const std::string where = "generator #" + std::to_string(k);
      if (!gj.is_object() || !gj.contains("xi") || !gj.contains("eta") || !gj["xi"].is_string() ||
          !gj["eta"].is_array())
        throw ParseError(where + " needs string 'xi' and array 'eta'", 0, 0, source);
      if (gj["eta"].size() != n)
        throw ParseError(where + " has " + std::to_string(gj["eta"].size()) +
                             " eta components, expected " + std::to_string(n),
                         0, 0, source);
      BundleVectorField X;
      X.name = gj.contains("name") && gj["name"].is_string() ? gj["name"].get<std::string>()
                                                             : "X" + std::to_string(k);
      auto conv = [&](const nlohmann::json &s) {
        if (!s.is_string())
          throw ParseError(where + ": components must be strings", 0, 0, source);
        Expr e;
        try {
          e = parse_expr(s.get<std::string>(), opts);
        } catch (const ParseError &pe) {
          throw ParseError(where + ": " + pe.cause(), pe.column(), 0, source);
        }
        check_symbols(e, allowed, 0, 0, source);
        return to_ratfunc(e);
      };
      X.xi = conv(gj["xi"]);
      for (const auto &c : gj["eta"])
        X.eta.push_back(conv(c));
      add(std::move(X), 0);
    }
    return out;
  }

  for (const auto &[ln, raw] : split_lines(text)) {
    auto w = words(raw);
    if (w.empty())
      continue;
    const std::size_t kw_col = first_non_space(raw) + 1;
    if (w[0] != "gen")
      throw ParseError("expected 'gen <name> = <xi> | <eta> ...'", kw_col, ln, source);
    auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw ParseError("missing '='", kw_col, ln, source);
    auto head = words(raw.substr(0, eq));
    if (head.size() != 2 || !is_ident(head[1]))
      throw ParseError("expected 'gen <name> ='", kw_col, ln, source);
    BundleVectorField X;
    X.name = head[1];
    std::vector<std::pair<std::size_t, std::string>> parts;
    std::size_t start = eq + 1;
    for (;;) {
      auto bar = raw.find('|', start);
      parts.emplace_back(
          start, raw.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      if (bar == std::string::npos)
        break;
      start = bar + 1;
    }
    if (parts.size() != n + 1)
      throw ParseError("expected " + std::to_string(n + 1) +
                           " '|'-separated expressions (xi and one eta per coordinate), found " +
                           std::to_string(parts.size()),
                       eq + 2, ln, source);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      Expr e = parse_at(parts[k].second, parts[k].first, opts, ln, source);
      check_symbols(e, allowed, parts[k].first + 1, ln, source);
      RatFunc f = to_ratfunc(e);
      if (k == 0)
        X.xi = f;
      else
        X.eta.push_back(f);
    }
    add(std::move(X), ln);
  }
  return out;
}

std::vector<BundleVectorField> load_generators(const std::string &path, const Chart &chart) {
  return parse_generators(read_file(path), chart, path);
}

FunctionBinding bind_chart(const Chart &chart,
                           const std::vector<std::pair<std::string, std::string>> &b) {
  FunctionBinding out{chart, {}};
  for (const auto &[name, text] : b) {
    auto it = chart.functions.find(name);
    if (it == chart.functions.end())
      throw ParseError("'" + name + "' is not a declared function", 0);
    const auto &args = it->second;
    ParseOptions opts;
    opts.functions = FunctionTable{};
    Expr e = parse_expr(text, opts);
    for (const auto &s : symbols_of(e))
      if (std::find(args.begin(), args.end(), s) == args.end())
        throw ParseError(
            "binding for '" + name + "' uses '" + s + "', which is not among its arguments", 0);
    out.kernels.emplace_back(Kernel::opaque(name, args, std::vector<int>(args.size(), 0)),
                             to_ratfunc(e));
    out.chart.functions.erase(name);
  }
  return out;
}

Metric bind_functions(const Metric &g, const std::vector<std::pair<std::string, std::string>> &b) {
  const FunctionBinding fb = bind_chart(g.chart, b);
  Matrix m = g.g;
  for (auto &row : m)
    for (auto &x : row)
      x = substitute(x, fb.kernels);
  return make_metric(g.id, fb.chart, m);
}

BundleVectorField bind_field(const BundleVectorField &X, const FunctionBinding &fb) {
  BundleVectorField out = X;
  out.xi = substitute(X.xi, fb.kernels);
  for (auto &e : out.eta)
    e = substitute(e, fb.kernels);
  return out;
}

} // namespace liesym
