#include "liesym/liesym.h"

#include "liesym/errors.hpp"
#include "liesym/io.hpp"
#include "liesym/report.hpp"
#include "liesym/symexpr.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct liesym_metric {
  liesym::Metric m;
};

struct liesym_generators {
  liesym::Chart chart;
  std::vector<liesym::BundleVectorField> fields;
};

struct liesym_algebra {
  liesym::LieAlgebra g;
};

namespace {

thread_local std::string last_error;

liesym_status fail(liesym_status s, const std::string &msg) {
  last_error = msg;
  return s;
}

template <class F> liesym_status guarded(F &&f) {
  last_error.clear();
  try {
    return f();
  } catch (const liesym::ParseError &e) {
    return fail(LIESYM_PARSE_ERROR, e.what());
  } catch (const liesym::UnsupportedError &e) {
    return fail(LIESYM_UNSUPPORTED, e.what());
  } catch (const liesym::MathError &e) {
    return fail(LIESYM_MATH_ERROR, e.what());
  } catch (const liesym::IoError &e) {
    return fail(LIESYM_IO_ERROR, e.what());
  } catch (const std::bad_alloc &) {
    return fail(LIESYM_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception &e) {
    return fail(LIESYM_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(LIESYM_INTERNAL_ERROR, "unknown error");
  }
}

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (!p)
    throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

liesym::Format to_format(liesym_format f) {
  switch (f) {
  case LIESYM_FORMAT_TEXT:
    return liesym::Format::Text;
  case LIESYM_FORMAT_JSON:
    return liesym::Format::Json;
  case LIESYM_FORMAT_LATEX:
    return liesym::Format::Latex;
  }
  throw std::invalid_argument("unknown format");
}

liesym_status deliver(const liesym::Report &r, char **report) {
  *report = dup(r.text);
  if (r.unsupported)
    return fail(LIESYM_UNSUPPORTED, "part of the report is unsupported");
  if (!r.pass)
    return fail(LIESYM_VERIFY_FAILED, "one or more requested checks failed");
  return LIESYM_OK;
}

#define REQUIRE(cond, what)                                                                        \
  do {                                                                                             \
    if (!(cond))                                                                                   \
      return fail(LIESYM_INVALID_ARGUMENT, what);                                                  \
  } while (0)

} // namespace

extern "C" {

const char *liesym_version(void) { return "0.1.0"; }

const char *liesym_status_name(liesym_status s) {
  switch (s) {
  case LIESYM_OK:
    return "ok";
  case LIESYM_VERIFY_FAILED:
    return "verification failed";
  case LIESYM_PARSE_ERROR:
    return "parse error";
  case LIESYM_UNSUPPORTED:
    return "unsupported";
  case LIESYM_MATH_ERROR:
    return "math error";
  case LIESYM_IO_ERROR:
    return "io error";
  case LIESYM_INVALID_ARGUMENT:
    return "invalid argument";
  case LIESYM_INTERNAL_ERROR:
    return "internal error";
  }
  return "unknown status";
}

const char *liesym_last_error(void) { return last_error.c_str(); }

void liesym_string_free(char *s) { std::free(s); }

liesym_status liesym_canonicalize(const char *expr, char **out) {
  REQUIRE(expr && out, "null argument");
  return guarded([&] {
    *out = dup(liesym::to_string(liesym::to_canonical(liesym::parse_expr(expr))));
    return LIESYM_OK;
  });
}

liesym_status liesym_metric_load(const char *path, liesym_metric **out) {
  REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new liesym_metric{liesym::load_metric(path)};
    return LIESYM_OK;
  });
}

liesym_status liesym_metric_parse(const char *text, const char *id, liesym_metric **out) {
  REQUIRE(text && out, "null argument");
  return guarded([&] {
    const std::string name = id ? id : "metric";
    *out = new liesym_metric{liesym::parse_metric(text, name, name)};
    return LIESYM_OK;
  });
}

liesym_status liesym_metric_bind(const liesym_metric *m, const char *name, const char *expr,
                                 liesym_metric **out) {
  REQUIRE(m && name && expr && out, "null argument");
  return guarded([&] {
    *out = new liesym_metric{liesym::bind_functions(m->m, {{name, expr}})};
    return LIESYM_OK;
  });
}

size_t liesym_metric_dim(const liesym_metric *m) { return m ? m->m.chart.dim() : 0; }

const char *liesym_metric_id(const liesym_metric *m) { return m ? m->m.id.c_str() : ""; }

void liesym_metric_free(liesym_metric *m) { delete m; }

liesym_status liesym_generators_load(const char *path, const liesym_metric *m,
                                     liesym_generators **out) {
  REQUIRE(path && m && out, "null argument");
  return guarded([&] {
    *out = new liesym_generators{m->m.chart, liesym::load_generators(path, m->m.chart)};
    return LIESYM_OK;
  });
}

liesym_status liesym_generators_parse(const char *text, const liesym_metric *m,
                                      liesym_generators **out) {
  REQUIRE(text && m && out, "null argument");
  return guarded([&] {
    *out =
        new liesym_generators{m->m.chart, liesym::parse_generators(text, m->m.chart, "generators")};
    return LIESYM_OK;
  });
}

size_t liesym_generators_count(const liesym_generators *g) { return g ? g->fields.size() : 0; }

void liesym_generators_free(liesym_generators *g) { delete g; }

liesym_status liesym_algebra_from_generators(const liesym_generators *g, liesym_algebra **out) {
  REQUIRE(g && out, "null argument");
  liesym_status s = guarded([&] {
    *out = new liesym_algebra{liesym::structure_constants(g->fields, g->chart)};
    return LIESYM_OK;
  });
  // Dependence and non-closure are findings about the input, not failures
  // of the computation.
  return s == LIESYM_MATH_ERROR ? LIESYM_VERIFY_FAILED : s;
}

size_t liesym_algebra_dim(const liesym_algebra *a) { return a ? a->g.dim() : 0; }

liesym_status liesym_algebra_constant(const liesym_algebra *a, size_t i, size_t j, size_t k,
                                      char **out) {
  REQUIRE(a && out, "null argument");
  const size_t m = a->g.dim();
  REQUIRE(i < m && j < m && k < m, "index out of range");
  return guarded([&] {
    *out = dup(a->g.c[i][j][k].str());
    return LIESYM_OK;
  });
}

void liesym_algebra_free(liesym_algebra *a) { delete a; }

liesym_status liesym_analyze(const liesym_metric *m, int modes, int ansatz_degree,
                             liesym_format fmt, char **report) {
  REQUIRE(m && report, "null argument");
  REQUIRE(modes & (LIESYM_MODE_NOETHER | LIESYM_MODE_LIEPOINT), "no mode selected");
  return guarded([&] {
    liesym::AnalyzeOptions opt;
    opt.noether = modes & LIESYM_MODE_NOETHER;
    opt.liepoint = modes & LIESYM_MODE_LIEPOINT;
    if (ansatz_degree > 0)
      opt.ansatz.degree = ansatz_degree;
    return deliver(liesym::analyze_report(m->m, opt, to_format(fmt)), report);
  });
}

liesym_status liesym_verify(const liesym_metric *m, const liesym_generators *g, int modes,
                            liesym_format fmt, char **report) {
  REQUIRE(m && g && report, "null argument");
  REQUIRE(modes & (LIESYM_MODE_NOETHER | LIESYM_MODE_LIEPOINT), "no mode selected");
  REQUIRE(g->chart == m->m.chart, "generators were parsed against a different chart");
  return guarded([&] {
    return deliver(liesym::verify_report(m->m, g->fields, modes & LIESYM_MODE_NOETHER,
                                         modes & LIESYM_MODE_LIEPOINT, to_format(fmt)),
                   report);
  });
}

liesym_status liesym_algebra_report(const liesym_algebra *a, liesym_format fmt, char **report) {
  REQUIRE(a && report, "null argument");
  return guarded([&] { return deliver(liesym::algebra_report(a->g, to_format(fmt)), report); });
}

liesym_status liesym_optimal_report(const liesym_algebra *a, uint64_t samples, uint64_t seed,
                                    liesym_format fmt, char **report) {
  REQUIRE(a && report, "null argument");
  return guarded(
      [&] { return deliver(liesym::optimal_report(a->g, samples, seed, to_format(fmt)), report); });
}

liesym_status liesym_integrate(const liesym_metric *m, const liesym_integrate_options *opt,
                               liesym_format fmt, char **report) {
  REQUIRE(m && opt && report, "null argument");
  REQUIRE(opt->n_bindings == 0 || (opt->bind_names && opt->bind_exprs), "null bindings");
  REQUIRE(opt->n_init == 0 || opt->init, "null initial state");
  return guarded([&] {
    liesym::IntegrateOptions o;
    for (size_t i = 0; i < opt->n_bindings; ++i)
      o.bindings.emplace_back(opt->bind_names[i], opt->bind_exprs[i]);
    o.init.assign(opt->init, opt->init + opt->n_init);
    o.step = opt->step;
    o.span = opt->span;
    if (opt->gens) {
      o.gens = opt->gens->fields;
      o.gens_given = true;
    }
    return deliver(liesym::integrate_report(m->m, o, to_format(fmt)), report);
  });
}

} // extern "C"
