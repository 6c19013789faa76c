// liesym command-line front end. Talks to the library only through liesym.h.

#include "liesym/liesym.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kParse = 2, kUnsupported = 3 };

int exit_code(liesym_status s) {
  switch (s) {
  case LIESYM_OK:
    return kOk;
  case LIESYM_PARSE_ERROR:
  case LIESYM_IO_ERROR:
  case LIESYM_INVALID_ARGUMENT:
    return kParse;
  case LIESYM_UNSUPPORTED:
    return kUnsupported;
  case LIESYM_VERIFY_FAILED:
  case LIESYM_MATH_ERROR:
  case LIESYM_INTERNAL_ERROR:
    return kVerifyFailed;
  }
  return kVerifyFailed;
}

struct Freer {
  void operator()(liesym_metric *p) const { liesym_metric_free(p); }
  void operator()(liesym_generators *p) const { liesym_generators_free(p); }
  void operator()(liesym_algebra *p) const { liesym_algebra_free(p); }
  void operator()(char *p) const { liesym_string_free(p); }
};
using MetricPtr = std::unique_ptr<liesym_metric, Freer>;
using GensPtr = std::unique_ptr<liesym_generators, Freer>;
using AlgebraPtr = std::unique_ptr<liesym_algebra, Freer>;
using StringPtr = std::unique_ptr<char, Freer>;

// Thrown to unwind with an exit code after the message has been printed.
struct Abort {
  int code;
};

void check(liesym_status s) {
  if (s == LIESYM_OK)
    return;
  std::cerr << "liesym: " << liesym_status_name(s) << ": " << liesym_last_error() << "\n";
  throw Abort{exit_code(s)};
}

MetricPtr load_metric(const std::string &path) {
  liesym_metric *m = nullptr;
  check(liesym_metric_load(path.c_str(), &m));
  return MetricPtr(m);
}

GensPtr load_generators(const std::string &path, const liesym_metric *m) {
  liesym_generators *g = nullptr;
  check(liesym_generators_load(path.c_str(), m, &g));
  return GensPtr(g);
}

AlgebraPtr make_algebra(const liesym_generators *g) {
  liesym_algebra *a = nullptr;
  check(liesym_algebra_from_generators(g, &a));
  return AlgebraPtr(a);
}

// Prints the report (if any) and converts the status into an exit code.
int emit(liesym_status s, char *report) {
  StringPtr owned(report);
  if (report)
    std::fputs(report, stdout);
  std::fflush(stdout);
  if (s != LIESYM_OK)
    std::cerr << "liesym: " << liesym_status_name(s) << ": " << liesym_last_error() << "\n";
  return exit_code(s);
}

liesym_format parse_format(const std::string &f) {
  if (f == "json")
    return LIESYM_FORMAT_JSON;
  if (f == "latex")
    return LIESYM_FORMAT_LATEX;
  return LIESYM_FORMAT_TEXT;
}

int modes(bool noether, bool liepoint) {
  if (!noether && !liepoint)
    return LIESYM_MODE_NOETHER | LIESYM_MODE_LIEPOINT;
  return (noether ? LIESYM_MODE_NOETHER : 0) | (liepoint ? LIESYM_MODE_LIEPOINT : 0);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Symmetry analysis of geodesic equations"};
  app.set_version_flag("--version", liesym_version());
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "json", "latex"};
  std::string format = "text";
  std::string metric_path, gens_path;
  bool noether = false, liepoint = false;
  int ansatz_degree = 2;

  auto *analyze = app.add_subcommand("analyze", "Derive and verify the symmetries of a metric");
  analyze->add_option("metric", metric_path, "Metric file")->required();
  analyze->add_flag("--noether", noether, "Noether symmetries");
  analyze->add_flag("--liepoint", liepoint, "Lie point symmetries of the geodesic equations");
  analyze->add_option("--ansatz-degree", ansatz_degree, "Polynomial degree of the ansatz")
      ->check(CLI::Range(0, 8));
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto *verify = app.add_subcommand("verify", "Check a list of generators against a metric");
  verify->add_option("metric", metric_path, "Metric file")->required();
  verify->add_option("gens", gens_path, "Generator file")->required();
  auto *vn = verify->add_flag("--noether", noether, "Noether check only");
  auto *vl = verify->add_flag("--liepoint", liepoint, "Lie point check only");
  vn->excludes(vl);
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto *algebra = app.add_subcommand("algebra", "Structure of the algebra spanned by generators");
  algebra->add_option("gens", gens_path, "Generator file")->required();
  algebra->add_option("--metric", metric_path, "Metric file supplying the chart")->required();
  algebra->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  std::uint64_t samples = 1000, seed = 1;
  auto *optimal = app.add_subcommand("optimal", "One-dimensional optimal system and its coverage");
  optimal->add_option("gens", gens_path, "Generator file")->required();
  optimal->add_option("--metric", metric_path, "Metric file supplying the chart")->required();
  optimal->add_option("--samples", samples, "Random vectors to reduce")->check(CLI::PositiveNumber);
  optimal->add_option("--seed", seed, "Random seed");
  optimal->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  std::vector<std::string> binds;
  std::vector<double> init;
  double step = 1e-3, span = 1.0;
  auto *integrate = app.add_subcommand("integrate", "Integrate a geodesic and monitor charges");
  integrate->add_option("metric", metric_path, "Metric file")->required();
  integrate->add_option("--bind", binds, "Function binding NAME=EXPR")->allow_extra_args(false);
  integrate->add_option("--init", init, "Positions then velocities")
      ->required()
      ->delimiter(',')
      ->expected(1, -1);
  integrate->add_option("--step", step, "RK4 step")->check(CLI::PositiveNumber);
  integrate->add_option("--span", span, "Parameter span")->check(CLI::PositiveNumber);
  integrate->add_option("--gens", gens_path, "Generators whose charges are monitored");
  integrate->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  std::string expr;
  auto *canon = app.add_subcommand("canon", "Print the canonical form of an expression");
  canon->add_option("expr", expr, "Expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kParse;
  }

  const liesym_format fmt = parse_format(format);
  try {
    char *report = nullptr;
    if (*analyze) {
      auto m = load_metric(metric_path);
      const liesym_status st =
          liesym_analyze(m.get(), modes(noether, liepoint), ansatz_degree, fmt, &report);
      return emit(st, report);
    }
    if (*verify) {
      auto m = load_metric(metric_path);
      auto g = load_generators(gens_path, m.get());
      const liesym_status st =
          liesym_verify(m.get(), g.get(), modes(noether, liepoint), fmt, &report);
      return emit(st, report);
    }
    if (*algebra) {
      auto m = load_metric(metric_path);
      auto g = load_generators(gens_path, m.get());
      auto a = make_algebra(g.get());
      const liesym_status st = liesym_algebra_report(a.get(), fmt, &report);
      return emit(st, report);
    }
    if (*optimal) {
      auto m = load_metric(metric_path);
      auto g = load_generators(gens_path, m.get());
      auto a = make_algebra(g.get());
      const liesym_status st = liesym_optimal_report(a.get(), samples, seed, fmt, &report);
      return emit(st, report);
    }
    if (*integrate) {
      auto m = load_metric(metric_path);
      std::vector<std::string> names, exprs;
      for (const auto &b : binds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
          std::cerr << "liesym: parse error: --bind expects NAME=EXPR, got '" << b << "'\n";
          return kParse;
        }
        names.push_back(b.substr(0, eq));
        exprs.push_back(b.substr(eq + 1));
      }
      std::vector<const char *> np, ep;
      for (std::size_t i = 0; i < names.size(); ++i) {
        np.push_back(names[i].c_str());
        ep.push_back(exprs[i].c_str());
      }
      GensPtr g;
      if (!gens_path.empty())
        g = load_generators(gens_path, m.get());
      liesym_integrate_options opt{np.data(),   ep.data(), names.size(), init.data(),
                                   init.size(), step,      span,         g.get()};
      const liesym_status st = liesym_integrate(m.get(), &opt, fmt, &report);
      return emit(st, report);
    }
    if (*canon) {
      liesym_status s = liesym_canonicalize(expr.c_str(), &report);
      if (s == LIESYM_OK) {
        StringPtr owned(report);
        std::printf("%s\n", report);
        return kOk;
      }
      return emit(s, nullptr);
    }
  } catch (const Abort &a) {
    return a.code;
  }
  return kOk;
}
