#include "doctest.h"

#include "liesym/liesym.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string data(const std::string &f) { return std::string(LIESYM_DATA_DIR) + "/" + f; }

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Run cli(const std::string &args) {
  const std::string cmd = std::string(LIESYM_CLI) + " " + args + " 2>&1";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0)
    out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string &s, const std::string &needle) {
  return s.find(needle) != std::string::npos;
}

struct Str {
  char *p = nullptr;
  ~Str() { liesym_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

} // namespace

TEST_CASE("C API: canonicalization and errors") {
  Str s;
  CHECK(liesym_canonicalize("sin(x)^2 + cos(x)^2", &s.p) == LIESYM_OK);
  CHECK(s.str() == "1");
  Str bad;
  CHECK(liesym_canonicalize("(x", &bad.p) == LIESYM_PARSE_ERROR);
  CHECK(has(liesym_last_error(), "column"));
  CHECK(liesym_canonicalize(nullptr, &bad.p) == LIESYM_INVALID_ARGUMENT);
  CHECK(std::strcmp(liesym_status_name(LIESYM_UNSUPPORTED), "unsupported") == 0);
}

TEST_CASE("C API: metric, generators and reports") {
  liesym_metric *m = nullptr;
  REQUIRE(liesym_metric_load(data("vaidya_bonner.metric").c_str(), &m) == LIESYM_OK);
  CHECK(liesym_metric_dim(m) == 4);
  CHECK(std::string(liesym_metric_id(m)) == "vaidya_bonner");

  liesym_generators *g = nullptr;
  REQUIRE(liesym_generators_load(data("vb_general.gens").c_str(), m, &g) == LIESYM_OK);
  CHECK(liesym_generators_count(g) == 5);
  Str rep;
  CHECK(liesym_verify(m, g, LIESYM_MODE_NOETHER, LIESYM_FORMAT_TEXT, &rep.p) ==
        LIESYM_VERIFY_FAILED);
  CHECK(has(rep.str(), "FAIL noether X2"));

  liesym_algebra *a = nullptr;
  CHECK(liesym_algebra_from_generators(g, &a) == LIESYM_OK);
  CHECK(liesym_algebra_dim(a) == 5);
  Str c;
  CHECK(liesym_algebra_constant(a, 3, 4, 2, &c.p) == LIESYM_OK);
  CHECK(c.str() == "1");
  CHECK(liesym_algebra_constant(a, 9, 0, 0, &c.p) == LIESYM_INVALID_ARGUMENT);
  Str opt;
  CHECK(liesym_optimal_report(a, 100, 3, LIESYM_FORMAT_JSON, &opt.p) == LIESYM_OK);
  CHECK(has(opt.str(), "\"separation_failures\""));
  liesym_algebra_free(a);

  liesym_metric *bound = nullptr;
  CHECK(liesym_metric_bind(m, "M", "1", &bound) == LIESYM_OK);
  liesym_metric_free(bound);
  CHECK(liesym_metric_bind(m, "Z", "1", &bound) == LIESYM_PARSE_ERROR);

  liesym_generators_free(g);
  liesym_metric_free(m);
}

TEST_CASE("C API: non-closing generators and unsupported requests") {
  liesym_metric *m = nullptr;
  REQUIRE(liesym_metric_load(data("vaidya_bonner.metric").c_str(), &m) == LIESYM_OK);
  liesym_generators *g = nullptr;
  REQUIRE(liesym_generators_load(data("nonclosing.gens").c_str(), m, &g) == LIESYM_OK);
  liesym_algebra *a = nullptr;
  CHECK(liesym_algebra_from_generators(g, &a) == LIESYM_VERIFY_FAILED);
  CHECK(has(liesym_last_error(), "Y1"));
  liesym_generators_free(g);

  REQUIRE(liesym_generators_load(data("vb_general_symmetric.gens").c_str(), m, &g) == LIESYM_OK);
  REQUIRE(liesym_algebra_from_generators(g, &a) == LIESYM_OK);
  Str rep;
  CHECK(liesym_optimal_report(a, 10, 1, LIESYM_FORMAT_TEXT, &rep.p) == LIESYM_UNSUPPORTED);
  liesym_algebra_free(a);
  liesym_generators_free(g);
  liesym_metric_free(m);

  CHECK(liesym_metric_load("/nonexistent.metric", &m) == LIESYM_IO_ERROR);
}

TEST_CASE("C API: integration") {
  liesym_metric *m = nullptr;
  REQUIRE(liesym_metric_load(data("vaidya_bonner.metric").c_str(), &m) == LIESYM_OK);
  const char *names[] = {"M", "Q"};
  const char *exprs[] = {"1", "t"};
  const double init[] = {0, 5, 1.5707963267948966, 0, 1, 0, 0, 0.05};
  liesym_integrate_options o{names, exprs, 2, init, 8, 1e-3, 1.0, nullptr};
  Str rep;
  CHECK(liesym_integrate(m, &o, LIESYM_FORMAT_JSON, &rep.p) == LIESYM_OK);
  CHECK(has(rep.str(), "\"max_drift\""));
  o.n_init = 7;
  Str bad;
  CHECK(liesym_integrate(m, &o, LIESYM_FORMAT_TEXT, &bad.p) == LIESYM_MATH_ERROR);
  o.n_init = 8;
  o.n_bindings = 1;
  CHECK(liesym_integrate(m, &o, LIESYM_FORMAT_TEXT, &bad.p) == LIESYM_MATH_ERROR);
  liesym_metric_free(m);
}

TEST_CASE("CLI: documented examples and exit codes") {
  SUBCASE("analyze with JSON output") {
    const Run r =
        cli("analyze " + data("vaidya_bonner_M1_Qt.metric") + " --liepoint --format json");
    CHECK(r.code == 0);
    CHECK(has(r.out, "\"mode\": \"liepoint\""));
  }
  SUBCASE("verify flags D_t on the general metric") {
    const Run r =
        cli("verify " + data("vb_general.metric") + " " + data("vb_general.gens") + " --noether");
    CHECK(r.code == 1);
    CHECK(has(r.out, "FAIL noether X2 = D_t"));
    CHECK(has(r.out, "PASS noether X1"));
    CHECK(has(r.out, "PASS noether X3"));
    CHECK(has(r.out, "PASS noether X4"));
    CHECK(has(r.out, "PASS noether X5"));
  }
  SUBCASE("parse errors exit 2 with file and position") {
    const Run r = cli("analyze " + data("broken.metric"));
    CHECK(r.code == 2);
    CHECK(has(r.out, "broken.metric:7:"));
  }
  SUBCASE("arity errors exit 2") {
    const Run r = cli("verify " + data("vb_general.metric") + " " + data("arity.gens"));
    CHECK(r.code == 2);
    CHECK(has(r.out, "arity.gens:2"));
  }
  SUBCASE("missing files exit 2") { CHECK(cli("analyze /nonexistent.metric").code == 2); }
  SUBCASE("bad flags exit 2") {
    CHECK(cli("analyze " + data("flat1d.metric") + " --format yaml").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("verify " + data("vb_general.metric") + " " + data("vb_general.gens") +
              " --noether --liepoint")
              .code == 2);
  }
  SUBCASE("unsupported adjoint maps exit 3") {
    const Run r = cli("algebra " + data("irrational.gens") + " --metric " + data("flat2d.metric"));
    CHECK(r.code == 3);
    CHECK(has(r.out, "X1: unsupported"));
  }
  SUBCASE("optimal system requires the general algebra") {
    CHECK(cli("optimal " + data("vb_general_symmetric.gens") + " --metric " +
              data("vaidya_bonner.metric"))
              .code == 3);
    const Run r = cli("optimal " + data("vb_noether_general_cot.gens") + " --metric " +
                      data("vaidya_bonner.metric") + " --samples 200 --seed 9");
    CHECK(r.code == 0);
    CHECK(has(r.out, "unmatched: 0"));
  }
  SUBCASE("non-closing generators fail verification") {
    const Run r =
        cli("algebra " + data("nonclosing.gens") + " --metric " + data("vaidya_bonner.metric"));
    CHECK(r.code == 1);
  }
  SUBCASE("integrate") {
    const Run r = cli("integrate " + data("vaidya_bonner.metric") +
                      " --bind M=1 --bind Q=t --init 0,5,1.5707963267948966,0,1,0,0,0.05"
                      " --step 1e-3 --span 0.5");
    CHECK(r.code == 0);
    CHECK(has(r.out, "max drift"));
    CHECK(cli("integrate " + data("vaidya_bonner.metric") + " --bind M --init 0").code == 2);
  }
}

TEST_CASE("CLI: reports are byte-deterministic") {
  for (const std::string args :
       {"analyze " + data("vaidya_bonner_Mt_Qt2.metric") + " --format json",
        "algebra " + data("vb_Mt_Qt2_noether.gens") + " --metric " +
            data("vaidya_bonner_Mt_Qt2.metric") + " --format latex",
        "optimal " + data("vb_noether_general_cot.gens") + " --metric " +
            data("vaidya_bonner.metric") + " --samples 300 --seed 5"}) {
    const Run a = cli(args), b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("CLI: analyze JSON re-ingests as a clean generator file") {
  for (const char *metric : {"vaidya_bonner.metric", "vaidya_bonner_M1_Qt.metric",
                             "vaidya_bonner_Mt_Qt2.metric", "sphere.metric"}) {
    CAPTURE(metric);
    const Run a = cli("analyze " + data(metric) + " --format json");
    REQUIRE(a.code == 0);
    const std::string tmp = std::string("roundtrip_") + metric + ".json";
    std::ofstream(tmp) << a.out;
    const Run v = cli("verify " + data(metric) + " " + tmp);
    CHECK(v.code == 0);
    std::remove(tmp.c_str());
  }
}
