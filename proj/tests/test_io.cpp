#include "doctest.h"
#include "support.hpp"

#include "liesym/errors.hpp"
#include "liesym/io.hpp"

#include <string>

using namespace liesym;
using testing::rf;

namespace {

ParseError metric_error(const std::string &text) {
  try {
    parse_metric(text, "m.metric", "m");
  } catch (const ParseError &e) {
    return e;
  }
  FAIL("expected ParseError");
  return ParseError("", 0);
}

const char *kHead = "param s\ncoords t r\n";

} // namespace

TEST_CASE("shipped Vaidya-Bonner metric") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  CHECK(g.id == "vaidya_bonner");
  CHECK(g.chart.coords == std::vector<std::string>{"t", "r", "theta", "phi"});
  CHECK(g.chart.angles == std::vector<std::string>{"theta", "phi"});
  CHECK(g.chart.functions.at("M") == std::vector<std::string>{"t"});
  CHECK(g.g[0][0] == rf("-(1 - M(t)/r + Q(t)/r^2)"));
  CHECK(g.g[0][1] == RatFunc(-1));
  CHECK(g.g[1][0] == RatFunc(-1));
  CHECK(g.g[3][3] == rf("r^2*sin(theta)^2"));
  CHECK(g.g[1][1].is_zero());
}

TEST_CASE("metric format errors carry file, line and column") {
  ParseError e = metric_error(std::string(kHead) + "g 0 0 = (1 + r\n");
  CHECK(e.source() == "m.metric");
  CHECK(e.line() == 3);
  CHECK(e.column() > 8);
  CHECK(std::string(e.what()).rfind("m.metric:3:", 0) == 0);

  CHECK(metric_error(std::string(kHead) + "g 0 2 = 1\n").cause().find("out of range") !=
        std::string::npos);
  CHECK(metric_error(std::string(kHead) + "g 1 0 = 1\n").cause().find("upper triangle") !=
        std::string::npos);
  CHECK(metric_error(std::string(kHead) + "g 0 0 = 1\ng 0 0 = 2\n").cause().find("twice") !=
        std::string::npos);
  CHECK(metric_error(std::string(kHead) + "g 0 0 = z\n").cause().find("undeclared") !=
        std::string::npos);
  CHECK(metric_error(std::string(kHead) + "metric 1\n").cause().find("unknown directive") !=
        std::string::npos);
  CHECK(metric_error("g 0 0 = 1\n").line() == 1);
  CHECK(metric_error("param s\n").cause().find("coords") != std::string::npos);
  CHECK(metric_error(std::string(kHead) + "function F(x)\n").cause().find("not a coordinate") !=
        std::string::npos);
}

TEST_CASE("singular metrics are rejected") {
  CHECK_THROWS_AS(parse_metric(std::string(kHead) + "g 0 0 = 1\n", "m", "m"), MathError);
}

TEST_CASE("broken preset reports the position") {
  try {
    testing::metric("broken.metric");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 7);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("generator files") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  const auto X = testing::gens("vb_general.gens", g.chart);
  REQUIRE(X.size() == 5);
  CHECK(X[1].eta[0] == RatFunc(1));
  CHECK(X[4].eta[3] == rf("cot(theta)*cos(phi)"));
  CHECK_THROWS_AS(testing::gens("arity.gens", g.chart), ParseError);
  try {
    parse_generators("gen A = 1 | 0 | 0 | 0 | 0\ngen A = 0 | 1 | 0 | 0 | 0\n", g.chart, "x.gens");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_generators("gen A = tdot | 0 | 0 | 0 | 0", g.chart, "x"), ParseError);
  CHECK_THROWS_AS(parse_generators("{not json", g.chart, "x"), ParseError);
}

TEST_CASE("JSON generator input") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  const char *json = R"({"generators": [{"name": "R", "xi": "0", "eta": ["0", "0", "0", "1"]}]})";
  const auto X = parse_generators(json, g.chart, "j");
  REQUIRE(X.size() == 1);
  CHECK(X[0].name == "R");
  CHECK(X[0].eta[3] == RatFunc(1));
  const char *nested =
      R"({"analyses": [{"generators": [{"name": "T", "xi": "1", "eta": ["0", "0", "0", "0"]}]}]})";
  CHECK(parse_generators(nested, g.chart, "j").at(0).xi == RatFunc(1));
}

TEST_CASE("function bindings") {
  const Metric g = testing::metric("vaidya_bonner.metric");
  CHECK_THROWS_AS(bind_functions(g, {{"N", "t"}}), ParseError);
  CHECK_THROWS_AS(bind_functions(g, {{"M", "r"}}), ParseError);
  const FunctionBinding fb = bind_chart(g.chart, {{"M", "t"}});
  CHECK(fb.chart.functions.count("M") == 0);
  const BundleVectorField X{"X", rf("D(M, t)"), {rf("M(t)"), 0, 0, 0}};
  const BundleVectorField b = bind_field(X, fb);
  CHECK(b.xi == RatFunc(1));
  CHECK(b.eta[0] == rf("t"));
}

TEST_CASE("missing files are IO errors") {
  CHECK_THROWS_AS(load_metric("/nonexistent/x.metric"), IoError);
}
