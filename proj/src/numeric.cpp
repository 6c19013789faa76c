#include "liesym/numeric.hpp"

#include "liesym/errors.hpp"

#include <cmath>

namespace liesym {

namespace {

struct NTerm {
  double coef;
  std::vector<std::pair<std::size_t, int>> factors; // kernel slot, exponent
};

} // namespace

struct NumericFunction::Impl {
  struct Slot {
    KernelKind kind;
    std::size_t var = 0;
    int root = 0;
    std::unique_ptr<NumericFunction> arg;
  };
  std::vector<Slot> slots;
  std::vector<Kernel> keys;
  std::vector<NTerm> num, den;
  bool has_den = false;

  std::size_t slot_of(const Kernel &k, const std::vector<std::string> &vars) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == k)
        return i;
    Slot s;
    s.kind = k.kind();
    switch (k.kind()) {
    case KernelKind::Symbol: {
      bool found = false;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == k.name()) {
          s.var = i;
          found = true;
        }
      if (!found)
        throw MathError("numeric evaluation: unbound symbol '" + k.name() + "'");
      break;
    }
    case KernelKind::Opaque:
      throw MathError("numeric evaluation: opaque function '" + k.key() +
                      "' must be bound to an expression");
    case KernelKind::Root:
      s.root = k.root_index();
      s.arg = std::make_unique<NumericFunction>(k.arg(), vars);
      break;
    default:
      s.arg = std::make_unique<NumericFunction>(k.arg(), vars);
      break;
    }
    slots.push_back(std::move(s));
    keys.push_back(k);
    return slots.size() - 1;
  }

  std::vector<NTerm> compile(const Poly &p, const std::vector<std::string> &vars) {
    std::vector<NTerm> out;
    for (const auto &t : p.terms()) {
      NTerm nt{t.coef.to_double(), {}};
      for (const auto &f : t.mono.factors())
        nt.factors.emplace_back(slot_of(f.kernel, vars), f.exp);
      out.push_back(std::move(nt));
    }
    return out;
  }

  static double eval_terms(const std::vector<NTerm> &terms, const std::vector<double> &kv) {
    double s = 0;
    for (const auto &t : terms) {
      double v = t.coef;
      for (const auto &[slot, e] : t.factors) {
        double b = kv[slot];
        if (e < 0 && std::fabs(b) < kSingularTol)
          throw SingularityError("singularity: kernel value near zero in a denominator");
        v *= e == 1 ? b : std::pow(b, e);
      }
      s += v;
    }
    return s;
  }
};

NumericFunction::NumericFunction(const RatFunc &f, const std::vector<std::string> &vars)
    : impl_(std::make_unique<Impl>()) {
  impl_->num = impl_->compile(f.num(), vars);
  if (!f.is_polynomial()) {
    impl_->has_den = true;
    impl_->den = impl_->compile(f.den(), vars);
  }
}

NumericFunction::~NumericFunction() = default;
NumericFunction::NumericFunction(NumericFunction &&) noexcept = default;
NumericFunction &NumericFunction::operator=(NumericFunction &&) noexcept = default;

double NumericFunction::operator()(std::span<const double> x) const {
  if (!impl_)
    return 0.0;
  std::vector<double> kv(impl_->slots.size());
  for (std::size_t i = 0; i < kv.size(); ++i) {
    const auto &s = impl_->slots[i];
    switch (s.kind) {
    case KernelKind::Symbol:
      kv[i] = x[s.var];
      break;
    case KernelKind::Sin:
      kv[i] = std::sin((*s.arg)(x));
      break;
    case KernelKind::Cos:
      kv[i] = std::cos((*s.arg)(x));
      break;
    case KernelKind::Exp:
      kv[i] = std::exp((*s.arg)(x));
      break;
    case KernelKind::Ln: {
      double a = (*s.arg)(x);
      if (a <= kSingularTol)
        throw SingularityError("singularity: logarithm of a non-positive value");
      kv[i] = std::log(a);
      break;
    }
    case KernelKind::Arctan:
      kv[i] = std::atan((*s.arg)(x));
      break;
    case KernelKind::Root: {
      double a = (*s.arg)(x);
      if (a < 0 && s.root % 2 == 0)
        throw SingularityError("singularity: even root of a negative value");
      kv[i] = a < 0 ? -std::pow(-a, 1.0 / s.root) : std::pow(a, 1.0 / s.root);
      break;
    }
    case KernelKind::Opaque:
      throw MathError("numeric evaluation of an opaque function");
    }
  }
  double n = Impl::eval_terms(impl_->num, kv);
  if (impl_->has_den) {
    double d = Impl::eval_terms(impl_->den, kv);
    if (std::fabs(d) < kSingularTol)
      throw SingularityError("singularity: denominator near zero");
    n /= d;
  }
  if (!std::isfinite(n))
    throw SingularityError("non-finite value");
  return n;
}

} // namespace liesym
