#include "liesym/ratfunc.hpp"

#include "liesym/errors.hpp"
#include "liesym/expr.hpp"

#include <algorithm>
#include <cassert>

namespace liesym {

// ============================================================================
// Kernel
// ============================================================================

struct Kernel::Data {
  KernelKind kind = KernelKind::Symbol;
  std::string name;
  std::vector<std::string> args;
  std::vector<int> orders;
  std::shared_ptr<const RatFunc> arg;
  int root_index = 0;
  std::string key;
  std::vector<std::string> free;
  std::shared_ptr<const Data> partner; // cos -> sin
};

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

} // namespace

Kernel Kernel::symbol(std::string name) {
  auto d = std::make_shared<Data>();
  d->kind = KernelKind::Symbol;
  d->key = name;
  d->free = {name};
  d->name = std::move(name);
  return Kernel(std::move(d));
}

Kernel Kernel::opaque(std::string name, std::vector<std::string> args, std::vector<int> orders) {
  if (orders.empty())
    orders.assign(args.size(), 0);
  if (orders.size() != args.size())
    throw MathError("opaque function '" + name + "': orders/args size mismatch");
  auto d = std::make_shared<Data>();
  d->kind = KernelKind::Opaque;
  std::string key = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    key += (i ? "," : "") + args[i];
  key += ")";
  bool any = false;
  for (int o : orders) {
    if (o < 0)
      throw MathError("negative derivative order for '" + name + "'");
    any = any || o > 0;
  }
  if (any) {
    key += "_";
    for (std::size_t i = 0; i < orders.size(); ++i)
      key += (i ? "," : "") + std::to_string(orders[i]);
  }
  d->key = std::move(key);
  d->free = sorted_unique(args);
  d->name = std::move(name);
  d->args = std::move(args);
  d->orders = std::move(orders);
  return Kernel(std::move(d));
}

Kernel Kernel::elementary(KernelKind kind, const RatFunc &arg) {
  if (kind == KernelKind::Symbol || kind == KernelKind::Opaque || kind == KernelKind::Root)
    throw MathError("Kernel::elementary: not an elementary kind");
  auto d = std::make_shared<Data>();
  d->kind = kind;
  d->arg = std::make_shared<const RatFunc>(arg);
  d->key = to_string(arg);
  d->free = arg.free_symbols();
  if (kind == KernelKind::Cos)
    d->partner = elementary(KernelKind::Sin, arg).d_;
  return Kernel(std::move(d));
}

Kernel Kernel::root(const RatFunc &arg, int index) {
  if (index < 2)
    throw MathError("root index must be >= 2");
  auto d = std::make_shared<Data>();
  d->kind = KernelKind::Root;
  d->arg = std::make_shared<const RatFunc>(arg);
  d->root_index = index;
  d->key = to_string(arg) + "#" + std::to_string(index);
  d->free = arg.free_symbols();
  return Kernel(std::move(d));
}

KernelKind Kernel::kind() const { return d_->kind; }
const std::string &Kernel::name() const { return d_->name; }
const std::vector<std::string> &Kernel::args() const { return d_->args; }
const std::vector<int> &Kernel::orders() const { return d_->orders; }
const RatFunc &Kernel::arg() const {
  if (!d_->arg)
    throw MathError("kernel has no argument");
  return *d_->arg;
}
int Kernel::root_index() const { return d_->root_index; }
const std::string &Kernel::key() const { return d_->key; }
const std::vector<std::string> &Kernel::free_symbols() const { return d_->free; }

bool Kernel::depends_on(std::string_view sym) const {
  const auto &f = d_->free;
  if (f.size() == 1)
    return f[0] == sym;
  return std::binary_search(f.begin(), f.end(), sym, [](const auto &a, const auto &b) {
    return std::string_view(a) < std::string_view(b);
  });
}

Kernel Kernel::sin_partner() const {
  if (d_->kind != KernelKind::Cos)
    throw MathError("sin_partner on a non-cos kernel");
  return Kernel(d_->partner);
}

Kernel Kernel::opaque_base() const {
  if (d_->kind != KernelKind::Opaque)
    throw MathError("opaque_base on a non-opaque kernel");
  return opaque(d_->name, d_->args, {});
}

bool Kernel::is_symbol(std::string_view n) const {
  return d_->kind == KernelKind::Symbol && d_->name == n;
}

int compare(const Kernel &a, const Kernel &b) {
  if (a.d_ == b.d_)
    return 0;
  if (a.d_->kind != b.d_->kind)
    return a.d_->kind < b.d_->kind ? -1 : 1;
  int c = a.d_->key.compare(b.d_->key);
  return (c > 0) - (c < 0);
}

// ============================================================================
// Monomial
// ============================================================================

Monomial::Monomial(Kernel k, int e) {
  if (e != 0)
    f_.push_back({std::move(k), e});
}

int Monomial::exponent(const Kernel &k) const {
  for (const auto &f : f_)
    if (f.kernel == k)
      return f.exp;
  return 0;
}

bool Monomial::has_negative_exponent() const {
  return std::any_of(f_.begin(), f_.end(), [](const Factor &f) { return f.exp < 0; });
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto &f : f_)
    d += f.exp;
  return d;
}

Monomial Monomial::operator*(const Monomial &o) const {
  Monomial r;
  r.f_.reserve(f_.size() + o.f_.size());
  std::size_t i = 0, j = 0;
  while (i < f_.size() && j < o.f_.size()) {
    int c = compare(f_[i].kernel, o.f_[j].kernel);
    if (c == 0) {
      int e = f_[i].exp + o.f_[j].exp;
      if (e != 0)
        r.f_.push_back({f_[i].kernel, e});
      ++i;
      ++j;
    } else if (c < 0) {
      r.f_.push_back(f_[i++]);
    } else {
      r.f_.push_back(o.f_[j++]);
    }
  }
  while (i < f_.size())
    r.f_.push_back(f_[i++]);
  while (j < o.f_.size())
    r.f_.push_back(o.f_[j++]);
  return r;
}

Monomial Monomial::inverse() const {
  Monomial r = *this;
  for (auto &f : r.f_)
    f.exp = -f.exp;
  return r;
}

Monomial Monomial::without(const Kernel &k) const {
  Monomial r;
  for (const auto &f : f_)
    if (!(f.kernel == k))
      r.f_.push_back(f);
  return r;
}

Monomial Monomial::with_exponent(const Kernel &k, int e) const {
  Monomial r = without(k);
  if (e == 0)
    return r;
  return r * Monomial(k, e);
}

int compare(const Monomial &a, const Monomial &b) {
  std::size_t i = 0, j = 0;
  const auto &x = a.f_;
  const auto &y = b.f_;
  while (i < x.size() && j < y.size()) {
    int c = compare(x[i].kernel, y[j].kernel);
    if (c == 0) {
      if (x[i].exp != y[j].exp)
        return x[i].exp < y[j].exp ? -1 : 1;
      ++i;
      ++j;
    } else if (c < 0) {
      return x[i].exp > 0 ? 1 : -1;
    } else {
      return y[j].exp > 0 ? -1 : 1;
    }
  }
  if (i < x.size())
    return x[i].exp > 0 ? 1 : -1;
  if (j < y.size())
    return y[j].exp > 0 ? -1 : 1;
  return 0;
}

// ============================================================================
// Poly
// ============================================================================

namespace {

// Appends c*m to out, rewriting cos^2(u) as 1 - sin^2(u).
void emit(const Monomial &m, const Rational &c, std::vector<Term> &out) {
  const auto &fs = m.factors();
  for (const auto &f : fs) {
    if (f.kernel.kind() == KernelKind::Cos && f.exp >= 2) {
      Monomial rest = m.with_exponent(f.kernel, f.exp - 2);
      emit(rest, c, out);
      emit(rest * Monomial(f.kernel.sin_partner(), 2), -c, out);
      return;
    }
    if (f.kernel.kind() == KernelKind::Cos && f.exp < 0)
      throw MathError("internal: negative cos exponent in polynomial");
  }
  out.push_back({m, c});
}

void combine(std::vector<Term> &v) {
  std::sort(v.begin(), v.end(),
            [](const Term &a, const Term &b) { return compare(a.mono, b.mono) > 0; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    std::size_t s = r + 1;
    Rational c = v[r].coef;
    while (s < v.size() && compare(v[s].mono, v[r].mono) == 0)
      c += v[s++].coef;
    if (!c.is_zero()) {
      if (w != r)
        v[w].mono = std::move(v[r].mono);
      v[w].coef = c;
      ++w;
    }
    r = s;
  }
  v.resize(w);
}

bool has_cos(const Monomial &m) {
  for (const auto &f : m.factors())
    if (f.kernel.kind() == KernelKind::Cos)
      return true;
  return false;
}

} // namespace

Poly::Poly(const Rational &c) {
  if (!c.is_zero())
    t_.push_back({Monomial(), c});
}

Poly Poly::kernel(const Kernel &k, int e) {
  Poly p;
  if (e == 0)
    return Poly(1);
  if (k.kind() == KernelKind::Cos && e < 0)
    throw MathError("internal: negative cos power requested as polynomial");
  emit(Monomial(k, e), Rational(1), p.t_);
  combine(p.t_);
  return p;
}

Poly Poly::monomial(const Monomial &m, const Rational &c) {
  Poly p;
  if (c.is_zero())
    return p;
  emit(m, c, p.t_);
  combine(p.t_);
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.t_.reserve(terms.size());
  for (auto &t : terms) {
    if (t.coef.is_zero())
      continue;
    emit(t.mono, t.coef, p.t_);
  }
  combine(p.t_);
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.empty()); }

bool Poly::is_one() const { return t_.size() == 1 && t_[0].mono.empty() && t_[0].coef.is_one(); }

Rational Poly::constant_value() const {
  if (!is_constant())
    throw MathError("polynomial is not constant");
  return t_.empty() ? Rational(0) : t_[0].coef;
}

Rational Poly::constant_term() const {
  for (const auto &t : t_)
    if (t.mono.empty())
      return t.coef;
  return Rational(0);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto &t : r.t_)
    t.coef = -t.coef;
  return r;
}

Poly operator+(const Poly &a, const Poly &b) {
  if (a.t_.empty())
    return b;
  if (b.t_.empty())
    return a;
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() && j < b.t_.size()) {
    int c = compare(a.t_[i].mono, b.t_[j].mono);
    if (c == 0) {
      Rational s = a.t_[i].coef + b.t_[j].coef;
      if (!s.is_zero())
        r.t_.push_back({a.t_[i].mono, s});
      ++i;
      ++j;
    } else if (c > 0) {
      r.t_.push_back(a.t_[i++]);
    } else {
      r.t_.push_back(b.t_[j++]);
    }
  }
  while (i < a.t_.size())
    r.t_.push_back(a.t_[i++]);
  while (j < b.t_.size())
    r.t_.push_back(b.t_[j++]);
  return r;
}

Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }

Poly operator*(const Poly &a, const Poly &b) {
  if (a.t_.empty() || b.t_.empty())
    return Poly();
  if (a.is_constant())
    return b.scaled(a.t_[0].coef);
  if (b.is_constant())
    return a.scaled(b.t_[0].coef);
  if (b.t_.size() == 1 && !has_cos(b.t_[0].mono))
    return a.times(b.t_[0].mono).scaled(b.t_[0].coef);
  if (a.t_.size() == 1 && !has_cos(a.t_[0].mono))
    return b.times(a.t_[0].mono).scaled(a.t_[0].coef);
  Poly r;
  r.t_.reserve(a.t_.size() * b.t_.size());
  for (const auto &x : a.t_)
    for (const auto &y : b.t_)
      emit(x.mono * y.mono, x.coef * y.coef, r.t_);
  combine(r.t_);
  return r;
}

Poly Poly::scaled(const Rational &c) const {
  if (c.is_zero())
    return Poly();
  if (c.is_one())
    return *this;
  Poly r = *this;
  for (auto &t : r.t_)
    t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial &m) const {
  if (m.empty())
    return *this;
  if (has_cos(m) && contains_kind(KernelKind::Cos)) {
    std::vector<Term> v;
    for (const auto &t : t_)
      emit(t.mono * m, t.coef, v);
    return from_terms(std::move(v));
  }
  Poly r = *this;
  for (auto &t : r.t_)
    t.mono = t.mono * m;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U)
      result = result * base;
    e >>= 1U;
    if (e)
      base = base * base;
  }
  return result;
}

bool operator==(const Poly &a, const Poly &b) {
  if (a.t_.size() != b.t_.size())
    return false;
  for (std::size_t i = 0; i < a.t_.size(); ++i)
    if (!(a.t_[i].coef == b.t_[i].coef) || compare(a.t_[i].mono, b.t_[i].mono) != 0)
      return false;
  return true;
}

bool Poly::contains_kind(KernelKind k) const {
  for (const auto &t : t_)
    for (const auto &f : t.mono.factors())
      if (f.kernel.kind() == k)
        return true;
  return false;
}

bool Poly::contains(const Kernel &k) const {
  for (const auto &t : t_)
    for (const auto &f : t.mono.factors())
      if (f.kernel == k)
        return true;
  return false;
}

std::vector<Kernel> Poly::kernels() const {
  std::vector<Kernel> out;
  for (const auto &t : t_)
    for (const auto &f : t.mono.factors())
      out.push_back(f.kernel);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Monomial Poly::min_monomial() const {
  if (t_.empty())
    return Monomial();
  std::vector<Kernel> ks = kernels();
  Monomial m;
  for (const auto &k : ks) {
    int lo = 0;
    bool first = true;
    for (const auto &t : t_) {
      int e = t.mono.exponent(k);
      lo = first ? e : std::min(lo, e);
      first = false;
    }
    if (lo != 0)
      m = m * Monomial(k, lo);
  }
  return m;
}

int Poly::degree_in(const Kernel &k) const {
  int d = 0;
  bool first = true;
  for (const auto &t : t_) {
    int e = t.mono.exponent(k);
    d = first ? e : std::max(d, e);
    first = false;
  }
  return d;
}

int Poly::min_degree_in(const Kernel &k) const {
  int d = 0;
  bool first = true;
  for (const auto &t : t_) {
    int e = t.mono.exponent(k);
    d = first ? e : std::min(d, e);
    first = false;
  }
  return d;
}

// ============================================================================
// Polynomial gcd / exact division (cos-free, non-negative exponents)
// ============================================================================

namespace {

std::map<int, Poly> as_univariate(const Poly &p, const Kernel &x) {
  std::map<int, std::vector<Term>> buckets;
  for (const auto &t : p.terms()) {
    int e = t.mono.exponent(x);
    buckets[e].push_back({t.mono.without(x), t.coef});
  }
  std::map<int, Poly> out;
  for (auto &[e, v] : buckets)
    out[e] = Poly::from_terms(std::move(v));
  return out;
}

Poly monic(const Poly &p) {
  if (p.is_zero())
    return p;
  return p.scaled(p.leading().coef.inverse());
}

Poly content_in(const Poly &p, const Kernel &x);

Poly primitive_in(const Poly &p, const Kernel &x) {
  Poly c = content_in(p, x);
  if (c.is_constant())
    return p.scaled(c.constant_value().inverse());
  return poly_div_exact(p, c);
}

// Pseudo-remainder of a by b in x.
Poly prem(const Poly &a, const Poly &b, const Kernel &x) {
  auto bu = as_univariate(b, x);
  int db = bu.rbegin()->first;
  Poly lb = bu.rbegin()->second;
  Poly r = a;
  int dr = r.is_zero() ? -1 : r.degree_in(x);
  int steps = dr - db + 1;
  while (!r.is_zero() && (dr = r.degree_in(x)) >= db) {
    auto ru = as_univariate(r, x);
    Poly lr = ru.rbegin()->second;
    r = r * lb - (lr * b).times(Monomial(x, dr - db));
    --steps;
  }
  if (steps > 0)
    r = r * lb.pow(static_cast<unsigned>(steps));
  return r;
}

} // namespace

Poly poly_div_exact(const Poly &a, const Poly &b) {
  if (b.is_zero())
    throw MathError("polynomial division by zero");
  if (b.is_constant())
    return a.scaled(b.constant_value().inverse());
  std::vector<Term> q;
  Poly r = a;
  const Term &lb = b.leading();
  Monomial lb_inv = lb.mono.inverse();
  Rational lb_c_inv = lb.coef.inverse();
  std::size_t guard = 0;
  while (!r.is_zero()) {
    const Term &lt = r.leading();
    Monomial m = lt.mono * lb_inv;
    if (m.has_negative_exponent())
      throw MathError("polynomial division is not exact");
    Rational c = lt.coef * lb_c_inv;
    q.push_back({m, c});
    r = r - b.times(m).scaled(c);
    if (++guard > 1000000)
      throw MathError("polynomial division did not terminate");
  }
  return Poly::from_terms(std::move(q));
}

namespace {

Poly content_in(const Poly &p, const Kernel &x) {
  auto u = as_univariate(p, x);
  Poly g;
  for (const auto &[e, c] : u) {
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero())
      return Poly(1);
  }
  return g;
}

Monomial monomial_gcd(const Monomial &a, const Monomial &b) {
  Monomial r;
  for (const auto &f : a.factors()) {
    int e = std::min(f.exp, b.exponent(f.kernel));
    if (e > 0)
      r = r * Monomial(f.kernel, e);
  }
  return r;
}

} // namespace

Poly poly_gcd(const Poly &A, const Poly &B) {
  if (A.is_zero())
    return monic(B);
  if (B.is_zero())
    return monic(A);
  if (A.is_constant() || B.is_constant())
    return Poly(1);
  Monomial ma = A.min_monomial(), mb = B.min_monomial();
  Monomial mg = monomial_gcd(ma, mb);
  Poly a = A.times(ma.inverse());
  Poly b = B.times(mb.inverse());
  Poly mpoly = Poly::monomial(mg, Rational(1));
  if (a.is_constant() || b.is_constant())
    return mpoly;
  std::vector<Kernel> ka = a.kernels(), kb = b.kernels();
  Kernel x = ka.front() < kb.front() ? ka.front() : kb.front();
  bool in_a = a.contains(x), in_b = b.contains(x);
  if (!in_a)
    return monic(poly_gcd(a, content_in(b, x)) * mpoly);
  if (!in_b)
    return monic(poly_gcd(content_in(a, x), b) * mpoly);
  Poly ca = content_in(a, x), cb = content_in(b, x);
  Poly c = poly_gcd(ca, cb);
  Poly pa = ca.is_constant() ? a : poly_div_exact(a, ca);
  Poly pb = cb.is_constant() ? b : poly_div_exact(b, cb);
  if (pa.degree_in(x) < pb.degree_in(x))
    std::swap(pa, pb);
  while (!pb.is_zero()) {
    Poly r = prem(pa, pb, x);
    pa = pb;
    if (r.is_zero()) {
      pb = Poly();
      break;
    }
    if (r.degree_in(x) == 0) {
      pa = Poly(1);
      pb = Poly();
      break;
    }
    pb = primitive_in(r, x);
  }
  Poly g = pa.is_constant() ? Poly(1) : primitive_in(pa, x);
  return monic(g * c * mpoly);
}

// ============================================================================
// RatFunc
// ============================================================================

RatFunc RatFunc::symbol(const std::string &name) {
  return RatFunc(Poly::kernel(Kernel::symbol(name)));
}

RatFunc RatFunc::kernel(const Kernel &k, int e) {
  if (k.kind() == KernelKind::Cos && e < 0)
    return RatFunc(1) / RatFunc(Poly::kernel(k, -e));
  return RatFunc(Poly::kernel(k, e));
}

namespace {

// Coefficient polynomials of p with respect to the cos-kernel basis.
std::vector<Poly> cos_parts(const Poly &p) {
  std::map<std::string, std::vector<Term>> groups;
  for (const auto &t : p.terms()) {
    std::string sig;
    Monomial rest;
    for (const auto &f : t.mono.factors()) {
      if (f.kernel.kind() == KernelKind::Cos)
        sig += f.kernel.key() + ";";
      else
        rest = rest * Monomial(f.kernel, f.exp);
    }
    groups[sig].push_back({rest, t.coef});
  }
  std::vector<Poly> out;
  for (auto &[s, v] : groups)
    out.push_back(Poly::from_terms(std::move(v)));
  return out;
}

} // namespace

RatFunc RatFunc::fraction(Poly num, Poly den) {
  if (den.is_zero())
    throw MathError("division by zero");
  RatFunc r;
  if (num.is_zero())
    return r;
  // 1. make the denominator cos-free by multiplying with conjugates
  for (int guard = 0; den.contains_kind(KernelKind::Cos); ++guard) {
    if (guard > 64)
      throw MathError("internal: cos elimination did not terminate");
    Kernel c = [&] {
      for (const auto &t : den.terms())
        for (const auto &f : t.mono.factors())
          if (f.kernel.kind() == KernelKind::Cos)
            return f.kernel;
      throw MathError("internal");
    }();
    std::vector<Term> a, b;
    for (const auto &t : den.terms()) {
      if (t.mono.exponent(c) == 1)
        b.push_back({t.mono.without(c), t.coef});
      else
        a.push_back(t);
    }
    Poly conj = Poly::from_terms(std::move(a)) - Poly::from_terms(std::move(b)) * Poly::kernel(c);
    num = num * conj;
    den = den * conj;
  }
  // 2. monomial denominators fold into the Laurent numerator
  if (den.size() == 1) {
    const Term &t = den.leading();
    r.num_ = num.times(t.mono.inverse()).scaled(t.coef.inverse());
    return r;
  }
  // 3. strip monomial content
  Monomial m = den.min_monomial();
  if (!m.empty()) {
    den = den.times(m.inverse());
    num = num.times(m.inverse());
  }
  // 4. cancel the common factor
  Monomial mn = num.min_monomial();
  Poly npoly = num.times(mn.inverse());
  Poly g = den;
  for (const auto &part : cos_parts(npoly)) {
    g = poly_gcd(g, part);
    if (g.is_constant())
      break;
  }
  if (!g.is_constant()) {
    den = poly_div_exact(den, g);
    num = poly_div_exact(npoly, g).times(mn);
  }
  // 5. monic denominator
  Rational lc = den.leading().coef;
  if (!lc.is_one()) {
    den = den.scaled(lc.inverse());
    num = num.scaled(lc.inverse());
  }
  if (den.size() == 1) {
    const Term &t = den.leading();
    r.num_ = num.times(t.mono.inverse()).scaled(t.coef.inverse());
    return r;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b) {
  if (a.den_.is_one() && b.den_.is_one())
    return RatFunc(a.num_ + b.num_);
  if (a.is_zero())
    return b;
  if (b.is_zero())
    return a;
  if (a.den_ == b.den_)
    return RatFunc::fraction(a.num_ + b.num_, a.den_);
  return RatFunc::fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b) {
  if (a.den_.is_one() && b.den_.is_one())
    return RatFunc(a.num_ * b.num_);
  if (a.is_zero() || b.is_zero())
    return RatFunc();
  return RatFunc::fraction(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b) {
  if (b.is_zero())
    throw MathError("division by zero");
  if (a.is_zero())
    return RatFunc();
  // fast path: monomial divisor without cos
  if (b.den_.is_one() && b.num_.size() == 1) {
    const Term &t = b.num_.leading();
    if (!has_cos(t.mono)) {
      RatFunc r = a;
      r.num_ = a.num_.times(t.mono.inverse()).scaled(t.coef.inverse());
      return r;
    }
  }
  return RatFunc::fraction(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e == 0)
    return RatFunc(1);
  if (e < 0)
    return RatFunc(1) / pow(-e);
  if (den_.is_one())
    return RatFunc(num_.pow(static_cast<unsigned>(e)));
  return fraction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

bool RatFunc::depends_on(std::string_view sym) const {
  for (const Poly *p : {&num_, &den_})
    for (const auto &t : p->terms())
      for (const auto &f : t.mono.factors())
        if (f.kernel.depends_on(sym))
          return true;
  return false;
}

std::vector<Kernel> RatFunc::kernels() const {
  std::vector<Kernel> k = num_.kernels();
  auto d = den_.kernels();
  k.insert(k.end(), d.begin(), d.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

std::vector<std::string> RatFunc::free_symbols() const {
  std::vector<std::string> out;
  for (const auto &k : kernels())
    out.insert(out.end(), k.free_symbols().begin(), k.free_symbols().end());
  return sorted_unique(std::move(out));
}

// ============================================================================
// Elementary constructors
// ============================================================================

namespace {

bool floor_split(const Rational &c, Rational &fl, Rational &frac) {
  if (!c.fits64())
    return false;
  std::int64_t n = c.num64(), d = c.den64();
  std::int64_t q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0)))
    --q;
  fl = Rational(q);
  frac = c - fl;
  return true;
}

// a = sum_u k_u * u (integer k_u) + rest; rest carries everything else.
void split_linear(const RatFunc &a, std::vector<std::pair<std::string, std::int64_t>> &lin,
                  RatFunc &rest) {
  lin.clear();
  if (!a.is_polynomial()) {
    rest = a;
    return;
  }
  std::vector<Term> r;
  for (const auto &t : a.num().terms()) {
    const auto &fs = t.mono.factors();
    Rational fl, frac;
    if (fs.size() == 1 && fs[0].exp == 1 && fs[0].kernel.kind() == KernelKind::Symbol &&
        floor_split(t.coef, fl, frac) && fl.fits64()) {
      if (!fl.is_zero())
        lin.emplace_back(fs[0].kernel.name(), fl.num64());
      if (!frac.is_zero())
        r.push_back({t.mono, frac});
    } else {
      r.push_back(t);
    }
  }
  rest = RatFunc(Poly::from_terms(std::move(r)));
}

struct Complex {
  Poly re, im;
};

Complex cmul(const Complex &a, const Complex &b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// (cos L, sin L) for L = sum k_u u.
Complex trig_linear(const std::vector<std::pair<std::string, std::int64_t>> &lin) {
  Complex acc{Poly(1), Poly()};
  for (const auto &[u, k] : lin) {
    RatFunc us = RatFunc::symbol(u);
    Complex base{Poly::kernel(Kernel::elementary(KernelKind::Cos, us)),
                 Poly::kernel(Kernel::elementary(KernelKind::Sin, us))};
    std::int64_t n = k < 0 ? -k : k;
    if (n > 10000)
      throw UnsupportedError("trigonometric multiple angle too large");
    Complex p{Poly(1), Poly()};
    Complex b = base;
    while (n > 0) {
      if (n & 1)
        p = cmul(p, b);
      n >>= 1;
      if (n)
        b = cmul(b, b);
    }
    if (k < 0)
      p.im = -p.im;
    acc = cmul(acc, p);
  }
  return acc;
}

// (cos r, sin r) for a non-decomposable argument, with sin odd / cos even.
Complex trig_generic(const RatFunc &rest) {
  RatFunc arg = rest;
  bool neg = !arg.num().is_zero() && arg.num().leading().coef.sign() < 0;
  if (neg)
    arg = -arg;
  Poly c = Poly::kernel(Kernel::elementary(KernelKind::Cos, arg));
  Poly s = Poly::kernel(Kernel::elementary(KernelKind::Sin, arg));
  return {c, neg ? -s : s};
}

Complex trig(const RatFunc &a) {
  std::vector<std::pair<std::string, std::int64_t>> lin;
  RatFunc rest;
  split_linear(a, lin, rest);
  Complex l = trig_linear(lin);
  if (rest.is_zero())
    return l;
  Complex g = trig_generic(rest);
  return cmul(l, g);
}

} // namespace

RatFunc sin_of(const RatFunc &a) { return RatFunc(trig(a).im); }
RatFunc cos_of(const RatFunc &a) { return RatFunc(trig(a).re); }

RatFunc exp_of(const RatFunc &a) {
  std::vector<std::pair<std::string, std::int64_t>> lin;
  RatFunc rest;
  split_linear(a, lin, rest);
  Poly p(1);
  for (const auto &[u, k] : lin) {
    if (k > 100000 || k < -100000)
      throw UnsupportedError("exponential multiple too large");
    p = p *
        Poly::kernel(Kernel::elementary(KernelKind::Exp, RatFunc::symbol(u)), static_cast<int>(k));
  }
  if (!rest.is_zero())
    p = p * Poly::kernel(Kernel::elementary(KernelKind::Exp, rest));
  return RatFunc(p);
}

RatFunc ln_of(const RatFunc &a) {
  if (a.is_zero())
    throw MathError("ln(0)");
  if (a.is_constant() && a.constant_value().is_one())
    return RatFunc(0);
  return RatFunc::kernel(Kernel::elementary(KernelKind::Ln, a));
}

RatFunc arctan_of(const RatFunc &a) {
  if (a.is_zero())
    return RatFunc(0);
  bool neg = a.num().leading().coef.sign() < 0;
  RatFunc k = RatFunc::kernel(Kernel::elementary(KernelKind::Arctan, neg ? -a : a));
  return neg ? -k : k;
}

RatFunc pow_of(const RatFunc &a, const Rational &e) {
  if (e.is_integer()) {
    if (!e.fits64() || e.num64() > 100000 || e.num64() < -100000)
      throw UnsupportedError("exponent too large");
    return a.pow(static_cast<int>(e.num64()));
  }
  if (!e.fits64() || e.den64() > 1000)
    throw UnsupportedError("root index too large");
  if (a.is_zero()) {
    if (e.sign() < 0)
      throw MathError("division by zero");
    return RatFunc(0);
  }
  int q = static_cast<int>(e.den64());
  Rational fl, frac;
  floor_split(e, fl, frac);
  int r = static_cast<int>((frac * Rational(q)).num64());
  RatFunc base = a.pow(static_cast<int>(fl.num64()));
  if (a.is_constant() && q == 2) {
    Rational root;
    if (a.constant_value().exact_sqrt(root))
      return base * RatFunc(root.pow(r));
  }
  return base * RatFunc::kernel(Kernel::root(a, q), r);
}

// ============================================================================
// Differentiation
// ============================================================================

RatFunc derivative_of_kernel(const Kernel &k, std::string_view sym) {
  if (!k.depends_on(sym))
    return RatFunc(0);
  switch (k.kind()) {
  case KernelKind::Symbol:
    return RatFunc(1);
  case KernelKind::Opaque: {
    auto orders = k.orders();
    const auto &args = k.args();
    RatFunc sum;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == sym) {
        auto o = orders;
        ++o[i];
        sum += RatFunc::kernel(Kernel::opaque(k.name(), args, o));
      }
    }
    return sum;
  }
  case KernelKind::Sin: {
    RatFunc da = derivative(k.arg(), sym);
    return RatFunc::kernel(Kernel::elementary(KernelKind::Cos, k.arg())) * da;
  }
  case KernelKind::Cos: {
    RatFunc da = derivative(k.arg(), sym);
    return -(RatFunc::kernel(k.sin_partner()) * da);
  }
  case KernelKind::Exp:
    return RatFunc::kernel(k) * derivative(k.arg(), sym);
  case KernelKind::Ln:
    return derivative(k.arg(), sym) / k.arg();
  case KernelKind::Arctan:
    return derivative(k.arg(), sym) / (RatFunc(1) + k.arg() * k.arg());
  case KernelKind::Root:
    return RatFunc(Rational(1, k.root_index())) * RatFunc::kernel(k) * derivative(k.arg(), sym) /
           k.arg();
  }
  return RatFunc(0);
}

namespace {

RatFunc derivative_poly(const Poly &p, std::string_view sym) {
  std::vector<std::pair<Kernel, RatFunc>> cache;
  auto dk = [&](const Kernel &k) -> const RatFunc & {
    for (const auto &[kk, v] : cache)
      if (kk == k)
        return v;
    cache.emplace_back(k, derivative_of_kernel(k, sym));
    return cache.back().second;
  };
  std::vector<Term> acc;
  RatFunc extra;
  for (const auto &t : p.terms()) {
    for (const auto &f : t.mono.factors()) {
      if (!f.kernel.depends_on(sym))
        continue;
      const RatFunc &d = dk(f.kernel);
      if (d.is_zero())
        continue;
      Monomial rest = t.mono.with_exponent(f.kernel, f.exp - 1);
      Rational c = t.coef * Rational(f.exp);
      if (d.is_polynomial()) {
        for (const auto &dt : d.num().terms())
          acc.push_back({rest * dt.mono, c * dt.coef});
      } else {
        extra += RatFunc(Poly::monomial(rest, c)) * d;
      }
    }
  }
  RatFunc r(Poly::from_terms(std::move(acc)));
  if (!extra.is_zero())
    r += extra;
  return r;
}

} // namespace

RatFunc derivative(const RatFunc &f, std::string_view sym) {
  if (!f.depends_on(sym))
    return RatFunc(0);
  RatFunc dn = derivative_poly(f.num(), sym);
  if (f.is_polynomial())
    return dn;
  RatFunc dd = derivative_poly(f.den(), sym);
  RatFunc den(f.den());
  RatFunc num(f.num());
  return (dn * den - num * dd) / (den * den);
}

// ============================================================================
// Substitution
// ============================================================================

namespace {

const RatFunc *lookup(const KernelBindings &b, const Kernel &k) {
  for (const auto &[kk, v] : b)
    if (kk == k)
      return &v;
  return nullptr;
}

RatFunc kernel_image(const Kernel &k, const KernelBindings &b);

bool touches(const Kernel &k, const KernelBindings &b) {
  for (const auto &[kk, v] : b) {
    if (kk == k)
      return true;
    if (kk.kind() == KernelKind::Symbol && k.depends_on(kk.name()))
      return true;
    if (kk.kind() == KernelKind::Opaque && k.kind() == KernelKind::Opaque && kk.name() == k.name())
      return true;
    if (kk.kind() == KernelKind::Opaque && k.kind() != KernelKind::Opaque &&
        k.kind() != KernelKind::Symbol) {
      for (const auto &ak : k.arg().kernels())
        if (touches(ak, b))
          return true;
    }
  }
  return false;
}

RatFunc kernel_image(const Kernel &k, const KernelBindings &b) {
  if (const RatFunc *v = lookup(b, k))
    return *v;
  switch (k.kind()) {
  case KernelKind::Symbol:
    return RatFunc::kernel(k);
  case KernelKind::Opaque: {
    bool derived = std::any_of(k.orders().begin(), k.orders().end(), [](int o) { return o > 0; });
    if (derived) {
      if (const RatFunc *v = lookup(b, k.opaque_base())) {
        RatFunc r = *v;
        for (std::size_t i = 0; i < k.args().size(); ++i)
          for (int j = 0; j < k.orders()[i]; ++j)
            r = derivative(r, k.args()[i]);
        return r;
      }
    }
    std::vector<std::string> args = k.args();
    bool changed = false;
    for (auto &a : args) {
      if (const RatFunc *v = lookup(b, Kernel::symbol(a))) {
        const auto &terms = v->num().terms();
        if (!(v->is_polynomial() && terms.size() == 1 && terms[0].coef.is_one() &&
              terms[0].mono.factors().size() == 1 && terms[0].mono.factors()[0].exp == 1 &&
              terms[0].mono.factors()[0].kernel.kind() == KernelKind::Symbol))
          throw MathError("cannot substitute a non-symbol into the argument '" + a +
                          "' of opaque function '" + k.name() + "'");
        a = terms[0].mono.factors()[0].kernel.name();
        changed = true;
      }
    }
    if (!changed)
      return RatFunc::kernel(k);
    Kernel nk = Kernel::opaque(k.name(), args, k.orders());
    return kernel_image(nk, b);
  }
  case KernelKind::Sin:
    return sin_of(substitute(k.arg(), b));
  case KernelKind::Cos:
    return cos_of(substitute(k.arg(), b));
  case KernelKind::Exp:
    return exp_of(substitute(k.arg(), b));
  case KernelKind::Ln:
    return ln_of(substitute(k.arg(), b));
  case KernelKind::Arctan:
    return arctan_of(substitute(k.arg(), b));
  case KernelKind::Root:
    return pow_of(substitute(k.arg(), b), Rational(1, k.root_index()));
  }
  return RatFunc::kernel(k);
}

} // namespace

RatFunc substitute(const RatFunc &f, const KernelBindings &b) {
  if (b.empty())
    return f;
  std::vector<std::pair<Kernel, std::optional<RatFunc>>> cache;
  auto image = [&](const Kernel &k) -> const std::optional<RatFunc> & {
    for (const auto &[kk, v] : cache)
      if (kk == k)
        return v;
    if (touches(k, b))
      cache.emplace_back(k, kernel_image(k, b));
    else
      cache.emplace_back(k, std::nullopt);
    return cache.back().second;
  };
  auto sub_poly = [&](const Poly &p) -> RatFunc {
    std::vector<Term> fast;
    RatFunc slow;
    for (const auto &t : p.terms()) {
      Monomial keep;
      Poly acc(t.coef);
      RatFunc racc;
      bool rational = false;
      for (const auto &fac : t.mono.factors()) {
        const auto &img = image(fac.kernel);
        if (!img) {
          keep = keep * Monomial(fac.kernel, fac.exp);
          continue;
        }
        const RatFunc &v = *img;
        if (v.is_polynomial() && fac.exp > 0) {
          acc = acc * v.num().pow(static_cast<unsigned>(fac.exp));
        } else if (v.is_polynomial() && v.num().size() == 1 && !has_cos(v.num().leading().mono)) {
          const Term &vt = v.num().leading();
          Monomial mm;
          for (const auto &vf : vt.mono.factors())
            mm = mm * Monomial(vf.kernel, vf.exp * fac.exp);
          acc = acc.times(mm).scaled(vt.coef.pow(fac.exp));
        } else {
          if (!rational) {
            racc = RatFunc(1);
            rational = true;
          }
          racc = racc * v.pow(fac.exp);
        }
      }
      if (keep.factors().empty() && !rational) {
        for (const auto &at : acc.terms())
          fast.push_back(at);
        continue;
      }
      Poly withkeep = acc * Poly::monomial(keep, Rational(1));
      if (!rational) {
        for (const auto &at : withkeep.terms())
          fast.push_back(at);
      } else {
        slow += RatFunc(withkeep) * racc;
      }
    }
    RatFunc r(Poly::from_terms(std::move(fast)));
    if (!slow.is_zero())
      r += slow;
    return r;
  };
  RatFunc n = sub_poly(f.num());
  if (f.is_polynomial())
    return n;
  return n / sub_poly(f.den());
}

// ============================================================================
// Collection
// ============================================================================

std::map<Monomial, RatFunc> collect(const RatFunc &f, std::span<const std::string> vars) {
  std::vector<Kernel> vk;
  for (const auto &v : vars)
    vk.push_back(Kernel::symbol(v));
  auto is_var = [&](const Kernel &k) {
    for (const auto &v : vk)
      if (v == k)
        return true;
    return false;
  };
  for (const auto &t : f.den().terms())
    for (const auto &fac : t.mono.factors())
      for (const auto &v : vars)
        if (fac.kernel.depends_on(v))
          throw MathError("collect: denominator depends on '" + v + "'");
  std::map<Monomial, std::vector<Term>> groups;
  for (const auto &t : f.num().terms()) {
    Monomial key, rest;
    for (const auto &fac : t.mono.factors()) {
      if (is_var(fac.kernel)) {
        if (fac.exp < 0)
          throw MathError("collect: negative power of '" + fac.kernel.name() + "'");
        key = key * Monomial(fac.kernel, fac.exp);
      } else {
        for (const auto &v : vars)
          if (fac.kernel.depends_on(v))
            throw MathError("collect: non-polynomial dependence on '" + v + "' through " +
                            fac.kernel.key());
        rest = rest * Monomial(fac.kernel, fac.exp);
      }
    }
    groups[key].push_back({rest, t.coef});
  }
  std::map<Monomial, RatFunc> out;
  for (auto &[k, v] : groups) {
    Poly p = Poly::from_terms(std::move(v));
    if (p.is_zero())
      continue;
    out.emplace(k, f.is_polynomial() ? RatFunc(std::move(p)) : RatFunc::fraction(p, f.den()));
  }
  return out;
}

// ============================================================================
// Conversion
// ============================================================================

RatFunc to_ratfunc(const Expr &e) {
  switch (e.kind()) {
  case Expr::Kind::Const:
    return RatFunc(e.value());
  case Expr::Kind::Symbol:
    return RatFunc::symbol(e.name());
  case Expr::Kind::Opaque:
    return RatFunc::kernel(Kernel::opaque(e.name(), e.args(), e.orders()));
  case Expr::Kind::Sum: {
    RatFunc s;
    for (const auto &c : e.children())
      s += to_ratfunc(c);
    return s;
  }
  case Expr::Kind::Product: {
    RatFunc p(1);
    for (const auto &c : e.children()) {
      if (c.kind() == Expr::Kind::Power && c.exponent() == Rational(-1)) {
        p = p / to_ratfunc(c.children()[0]);
      } else {
        p *= to_ratfunc(c);
      }
      if (p.is_zero())
        return p;
    }
    return p;
  }
  case Expr::Kind::Power:
    return pow_of(to_ratfunc(e.children()[0]), e.exponent());
  case Expr::Kind::Function: {
    RatFunc a = to_ratfunc(e.children()[0]);
    switch (e.fn()) {
    case Fn::Sin:
      return sin_of(a);
    case Fn::Cos:
      return cos_of(a);
    case Fn::Tan:
      return sin_of(a) / cos_of(a);
    case Fn::Cot:
      return cos_of(a) / sin_of(a);
    case Fn::Csc:
      return RatFunc(1) / sin_of(a);
    case Fn::Sec:
      return RatFunc(1) / cos_of(a);
    case Fn::Exp:
      return exp_of(a);
    case Fn::Ln:
      return ln_of(a);
    case Fn::Sqrt:
      return pow_of(a, Rational(1, 2));
    case Fn::Arctan:
      return arctan_of(a);
    }
  }
  }
  throw MathError("to_ratfunc: unknown node");
}

Expr kernel_expr(const Kernel &k) {
  switch (k.kind()) {
  case KernelKind::Symbol:
    return Expr::symbol(k.name());
  case KernelKind::Opaque:
    return Expr::opaque(k.name(), k.args(), k.orders());
  case KernelKind::Sin:
    return Expr::function(Fn::Sin, to_expr(k.arg()));
  case KernelKind::Cos:
    return Expr::function(Fn::Cos, to_expr(k.arg()));
  case KernelKind::Exp:
    return Expr::function(Fn::Exp, to_expr(k.arg()));
  case KernelKind::Ln:
    return Expr::function(Fn::Ln, to_expr(k.arg()));
  case KernelKind::Arctan:
    return Expr::function(Fn::Arctan, to_expr(k.arg()));
  case KernelKind::Root:
    return Expr::power(to_expr(k.arg()), Rational(1, k.root_index()));
  }
  return Expr();
}

namespace {

std::vector<Expr> term_factors(const Term &t) {
  std::vector<Expr> fs;
  if (!t.coef.is_one() || t.mono.empty())
    fs.push_back(Expr(t.coef));
  for (const auto &f : t.mono.factors()) {
    Expr b = kernel_expr(f.kernel);
    if (f.kernel.kind() == KernelKind::Root)
      fs.push_back(Expr::power(to_expr(f.kernel.arg()), Rational(f.exp, f.kernel.root_index())));
    else
      fs.push_back(f.exp == 1 ? b : Expr::power(b, Rational(f.exp)));
  }
  return fs;
}

Expr poly_expr(const Poly &p) {
  if (p.is_zero())
    return Expr(0);
  std::vector<Expr> terms;
  for (const auto &t : p.terms())
    terms.push_back(Expr::product(term_factors(t)));
  return Expr::sum(std::move(terms));
}

} // namespace

Expr to_expr(const RatFunc &f) {
  if (f.is_polynomial())
    return poly_expr(f.num());
  std::vector<Expr> fs;
  if (f.num().size() == 1)
    fs = term_factors(f.num().leading());
  else
    fs.push_back(poly_expr(f.num()));
  fs.push_back(Expr::power(poly_expr(f.den()), Rational(-1)));
  return Expr::product(std::move(fs));
}

std::string to_string(const RatFunc &f) { return to_string(to_expr(f)); }

} // namespace liesym
