#pragma once

#include "liesym/geometry.hpp"
#include "liesym/io.hpp"
#include "liesym/jets.hpp"
#include "liesym/symexpr.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string &file) {
  return std::string(LIESYM_DATA_DIR) + "/" + file;
}

inline liesym::Metric metric(const std::string &file) {
  return liesym::load_metric(data_path(file));
}

inline std::vector<liesym::BundleVectorField> gens(const std::string &file,
                                                   const liesym::Chart &chart) {
  return liesym::load_generators(data_path(file), chart);
}

inline liesym::RatFunc rf(const char *s) { return liesym::to_ratfunc(liesym::parse_expr(s)); }

/// Field from "xi | eta_0 | ..." over the given chart.
inline liesym::BundleVectorField field(const std::string &name, const std::string &spec,
                                       const liesym::Chart &chart) {
  return liesym::parse_generators("gen " + name + " = " + spec, chart, "test").at(0);
}

/// Random expression trees over a few symbols, trig and exp kernels.
class ExprGen {
public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  liesym::Expr operator()(int depth) {
    using liesym::Expr;
    if (depth <= 0 || pick(4) == 0)
      return leaf();
    switch (pick(8)) {
    case 0:
    case 1:
      return (*this)(depth - 1) + (*this)(depth - 1);
    case 2:
      return (*this)(depth - 1) - (*this)(depth - 1);
    case 3:
    case 4:
      return (*this)(depth - 1) * (*this)(depth - 1);
    case 5:
      // denominators stay nonzero: symbol plus a positive constant or a nonzero constant
      return (*this)(depth - 1) /
             (pick(2) ? Expr::symbol(sym()) + Expr(1 + pick(3)) : Expr(1 + pick(5)));
    case 6:
      return Expr::power((*this)(depth - 1), liesym::Rational(pick(3)));
    default: {
      static const liesym::Fn fns[] = {liesym::Fn::Sin, liesym::Fn::Cos, liesym::Fn::Exp,
                                       liesym::Fn::Tan, liesym::Fn::Cot};
      Expr arg = pick(2) ? Expr::symbol(sym()) : Expr::symbol(sym()) * Expr(1 + pick(2));
      return Expr::function(fns[pick(5)], arg);
    }
    }
  }

private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string sym() {
    static const char *names[] = {"x", "y", "theta"};
    return names[pick(3)];
  }
  liesym::Expr leaf() {
    using liesym::Expr;
    switch (pick(3)) {
    case 0:
      return Expr(liesym::Rational(pick(9) - 4, 1 + pick(3)));
    default:
      return Expr::symbol(sym());
    }
  }
  std::mt19937_64 rng_;
};

} // namespace testing
