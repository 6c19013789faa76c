#include "liesym/symexpr.hpp"

#include "liesym/errors.hpp"

#include <cstdlib>
#include <cstring>

namespace liesym {

Expr to_canonical(const Expr &e) { return to_expr(to_ratfunc(e)); }

Expr differentiate(const Expr &e, const std::string &v) {
  return to_expr(derivative(to_ratfunc(e), v));
}

KernelBindings kernel_bindings(const Bindings &b) {
  KernelBindings kb;
  for (const auto &[key, value] : b) {
    RatFunc k = to_ratfunc(key);
    const auto &terms = k.num().terms();
    if (!k.is_polynomial() || terms.size() != 1 || !terms[0].coef.is_one() ||
        terms[0].mono.factors().size() != 1 || terms[0].mono.factors()[0].exp != 1)
      throw MathError("binding key '" + to_string(key) + "' is not a single kernel");
    Kernel kk = terms[0].mono.factors()[0].kernel;
    for (const auto &[other, v] : kb)
      if (other == kk)
        throw MathError("duplicate binding key '" + to_string(key) + "'");
    kb.emplace_back(kk, to_ratfunc(value));
  }
  return kb;
}

Expr substitute(const Expr &e, const Bindings &b) {
  return to_expr(substitute(to_ratfunc(e), kernel_bindings(b)));
}

bool debug_sampler_enabled() {
  static const bool on = [] {
    const char *v = std::getenv("LIESYM_DEBUG_SAMPLER");
    return v != nullptr && std::strcmp(v, "1") == 0;
  }();
  return on;
}

bool is_zero(const Expr &e) {
  bool canonical = to_ratfunc(e).is_zero();
  if (debug_sampler_enabled()) {
    bool sampled = sampled_zero(e);
    if (sampled != canonical)
      throw MathError("zero test disagreement on " + to_string(e) + ": canonical says " +
                      (canonical ? "zero" : "nonzero") + ", sampler says " +
                      (sampled ? "zero" : "nonzero"));
  }
  return canonical;
}

Collected collect(const Expr &e, const std::vector<std::string> &vars) {
  auto m = collect(to_ratfunc(e), std::span<const std::string>(vars));
  Collected out;
  for (const auto &[mono, coef] : m) {
    std::vector<int> exps(vars.size(), 0);
    for (const auto &f : mono.factors())
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (f.kernel.is_symbol(vars[i]))
          exps[i] = f.exp;
    out.emplace(std::move(exps), to_expr(coef));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomized evaluation

namespace {

struct Singular {};

class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Rational eval(const Expr &e) {
    switch (e.kind()) {
    case Expr::Kind::Const:
      return e.value();
    case Expr::Kind::Symbol:
      return symbol(e.name());
    case Expr::Kind::Opaque:
      return atom("opaque:" + Kernel::opaque(e.name(), e.args(), e.orders()).key());
    case Expr::Kind::Sum: {
      Rational s;
      for (const auto &c : e.children())
        s += eval(c);
      return s;
    }
    case Expr::Kind::Product: {
      Rational p(1);
      for (const auto &c : e.children())
        p *= eval(c);
      return p;
    }
    case Expr::Kind::Power:
      return power(e.children()[0], e.exponent());
    case Expr::Kind::Function:
      return function(e.fn(), e.children()[0]);
    }
    return Rational();
  }

private:
  Rational random_rational() {
    std::uniform_int_distribution<int> num(-29, 29), den(1, 11);
    int n = 0;
    while (n == 0)
      n = num(rng_);
    return Rational(n, den(rng_));
  }

  std::pair<Rational, Rational> random_circle() {
    Rational m = random_rational();
    Rational d = Rational(1) + m * m;
    return {(Rational(1) - m * m) / d, Rational(2) * m / d};
  }

  Rational symbol(const std::string &n) {
    auto it = sym_.find(n);
    if (it != sym_.end())
      return it->second;
    return sym_[n] = random_rational();
  }

  Rational atom(const std::string &key) {
    auto it = atoms_.find(key);
    if (it != atoms_.end())
      return it->second;
    return atoms_[key] = random_rational();
  }

  std::pair<Rational, Rational> circle(const std::string &key) {
    auto it = circles_.find(key);
    if (it != circles_.end())
      return it->second;
    return circles_[key] = random_circle();
  }

  static Rational checked_inverse(const Rational &v) {
    if (v.is_zero())
      throw Singular{};
    return v.inverse();
  }

  Rational power(const Expr &base, const Rational &e) {
    if (e.is_integer()) {
      Rational b = eval(base);
      int k = static_cast<int>(e.num64());
      if (k < 0 && b.is_zero())
        throw Singular{};
      return b.pow(k);
    }
    RatFunc cb = to_ratfunc(base);
    Rational b = eval(base);
    int q = static_cast<int>(e.den64());
    std::int64_t fl = e.num64() / q;
    if (e.num64() < 0 && e.num64() % q != 0)
      --fl;
    int rem = static_cast<int>(e.num64() - fl * q);
    if (fl < 0 && b.is_zero())
      throw Singular{};
    Rational head = b.pow(static_cast<int>(fl));
    if (cb.is_constant() && q == 2) {
      Rational r;
      if (cb.constant_value().exact_sqrt(r))
        return head * r.pow(rem);
    }
    return head * atom("root:" + to_string(cb) + "#" + std::to_string(q)).pow(rem);
  }

  // Splits a canonical argument into sum k_u u (integer k_u) plus a rest,
  // mirroring the kernel choice of the canonical form.
  void split(const RatFunc &a, std::vector<std::pair<std::string, std::int64_t>> &lin,
             RatFunc &rest) {
    lin.clear();
    if (!a.is_polynomial()) {
      rest = a;
      return;
    }
    std::vector<Term> r;
    for (const auto &t : a.num().terms()) {
      const auto &fs = t.mono.factors();
      if (fs.size() == 1 && fs[0].exp == 1 && fs[0].kernel.kind() == KernelKind::Symbol &&
          t.coef.fits64()) {
        std::int64_t n = t.coef.num64(), d = t.coef.den64();
        std::int64_t f = n / d;
        if (n % d != 0 && n < 0)
          --f;
        if (f != 0)
          lin.emplace_back(fs[0].kernel.name(), f);
        Rational frac = t.coef - Rational(f);
        if (!frac.is_zero())
          r.push_back({t.mono, frac});
      } else {
        r.push_back(t);
      }
    }
    rest = RatFunc(Poly::from_terms(std::move(r)));
  }

  // (cos a, sin a)
  std::pair<Rational, Rational> trig(const Expr &arg) {
    std::vector<std::pair<std::string, std::int64_t>> lin;
    RatFunc rest;
    split(to_ratfunc(arg), lin, rest);
    Rational c(1), s(0);
    for (const auto &[u, k] : lin) {
      auto [cu, su] = circle("sym:" + u);
      if (k < 0)
        su = -su;
      for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) {
        Rational nc = c * cu - s * su;
        s = s * cu + c * su;
        c = nc;
      }
    }
    if (!rest.is_zero()) {
      bool neg = rest.num().leading().coef.sign() < 0;
      auto [cr, sr] = circle("gen:" + to_string(neg ? -rest : rest));
      if (neg)
        sr = -sr;
      Rational nc = c * cr - s * sr;
      s = s * cr + c * sr;
      c = nc;
    }
    return {c, s};
  }

  Rational exponential(const Expr &arg) {
    std::vector<std::pair<std::string, std::int64_t>> lin;
    RatFunc rest;
    split(to_ratfunc(arg), lin, rest);
    Rational v(1);
    for (const auto &[u, k] : lin) {
      Rational base = atom("exp:" + u).abs();
      v *= base.pow(static_cast<int>(k));
    }
    if (!rest.is_zero())
      v *= atom("expgen:" + to_string(rest)).abs();
    return v;
  }

  Rational function(Fn f, const Expr &arg) {
    switch (f) {
    case Fn::Sin:
      return trig(arg).second;
    case Fn::Cos:
      return trig(arg).first;
    case Fn::Tan: {
      auto [c, s] = trig(arg);
      return s * checked_inverse(c);
    }
    case Fn::Cot: {
      auto [c, s] = trig(arg);
      return c * checked_inverse(s);
    }
    case Fn::Csc:
      return checked_inverse(trig(arg).second);
    case Fn::Sec:
      return checked_inverse(trig(arg).first);
    case Fn::Exp:
      return exponential(arg);
    case Fn::Ln: {
      RatFunc a = to_ratfunc(arg);
      if (a.is_zero())
        throw Singular{};
      if (a.is_constant() && a.constant_value().is_one())
        return Rational(0);
      return atom("ln:" + to_string(a));
    }
    case Fn::Arctan: {
      RatFunc a = to_ratfunc(arg);
      if (a.is_zero())
        return Rational(0);
      bool neg = a.num().leading().coef.sign() < 0;
      Rational v = atom("atan:" + to_string(neg ? -a : a));
      return neg ? -v : v;
    }
    case Fn::Sqrt:
      return power(arg, Rational(1, 2));
    }
    return Rational();
  }

  std::mt19937_64 rng_;
  std::map<std::string, Rational> sym_;
  std::map<std::string, Rational> atoms_;
  std::map<std::string, std::pair<Rational, Rational>> circles_;
};

} // namespace

bool sampled_zero(const Expr &e, std::uint64_t seed, int points) {
  std::uint64_t s = seed;
  for (int p = 0; p < points; ++p) {
    bool done = false;
    for (int attempt = 0; attempt < 32 && !done; ++attempt) {
      Sampler sm(s++);
      try {
        if (!sm.eval(e).is_zero())
          return false;
        done = true;
      } catch (const Singular &) {
      } catch (const MathError &) {
      }
    }
    if (!done)
      throw MathError("sampler could not find a regular point for " + to_string(e));
  }
  return true;
}

} // namespace liesym
