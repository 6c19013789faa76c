#include "liesym/optimal.hpp"

#include "liesym/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

namespace liesym {

namespace {

std::string coeff_name(std::size_t k) { return "a" + std::to_string(k + 1); }

std::vector<std::string> coeff_names(std::size_t m) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < m; ++k)
    v.push_back(coeff_name(k));
  return v;
}

Kernel single_kernel(const RatFunc &f) { return f.num().leading().mono.factors().front().kernel; }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> to_double(const Vec &v) {
  std::vector<double> d;
  for (const auto &x : v)
    d.push_back(x.to_double());
  return d;
}

// Homogeneous total degree of a polynomial, or -1.
int homogeneous_degree(const RatFunc &f) {
  if (!f.is_polynomial())
    return -1;
  int deg = -2;
  for (const auto &t : f.num().terms()) {
    if (t.mono.has_negative_exponent())
      return -1;
    const int d = t.mono.total_degree();
    if (deg == -2)
      deg = d;
    else if (deg != d)
      return -1;
  }
  return deg == -2 ? 0 : deg;
}

} // namespace

std::string OptimalRep::label() const {
  std::string out;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    const auto &p = pattern[k];
    if (p && p->is_zero())
      continue;
    std::string coef;
    if (!p)
      coef = coeff_name(k) + "*";
    else if (!p->is_one())
      coef = p->str() + "*";
    if (!out.empty())
      out += " + ";
    out += coef + "X" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

std::vector<OptimalRep> general_representatives() {
  const std::optional<Rational> F, Z = Rational(0), O = Rational(1);
  return {
      {1, {O, F, Z, Z, F}}, {2, {O, F, F, Z, Z}}, {3, {O, F, Z, F, Z}},
      {4, {Z, O, Z, Z, F}}, {5, {Z, O, F, Z, Z}}, {6, {Z, O, Z, F, Z}},
      {7, {Z, Z, O, Z, Z}}, {8, {Z, Z, Z, O, Z}}, {9, {Z, Z, Z, Z, O}},
  };
}

LieAlgebra general_algebra() {
  std::vector<std::vector<Vec>> c(5, std::vector<Vec>(5, Vec(5)));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, int v) {
    c[i][j][k] = Rational(v);
    c[j][i][k] = Rational(-v);
  };
  set(2, 3, 4, 1);  // [X3, X4] = X5
  set(2, 4, 3, -1); // [X3, X5] = -X4
  set(3, 4, 2, 1);  // [X4, X5] = X3
  return abstract_algebra(std::move(c));
}

Schedule general_schedule() {
  return {
      {0, {{2, 3}, {3, 2}}, 1},
      {1, {{2, 3}, {3, 2}}, 4},
      {2, {{2, 4}, {4, 3}}, 7},
      {3, {{2, 4}}, 8},
      {4, {}, 9},
  };
}

OrbitReducer::OrbitReducer(const LieAlgebra &g, std::vector<OptimalRep> reps, Schedule schedule)
    : m_(g.dim()), reps_(std::move(reps)), schedule_(std::move(schedule)), forms_(g.dim()) {
  for (const auto &r : reps_)
    if (r.pattern.size() != m_)
      throw MathError("representative " + std::to_string(r.id) + " has the wrong length");
  std::set<std::size_t> used;
  for (const auto &b : schedule_) {
    if (b.pivot >= m_)
      throw MathError("schedule pivot out of range");
    for (const auto &[gen, z] : b.moves) {
      if (gen >= m_ || z >= m_)
        throw MathError("schedule move out of range");
      used.insert(gen);
    }
  }
  const std::string q = "q";
  const Kernel ck = single_kernel(cos_of(RatFunc::symbol(q)));
  const Kernel sk = single_kernel(sin_of(RatFunc::symbol(q)));
  const KernelBindings to_cs{{ck, RatFunc::symbol("_c")}, {sk, RatFunc::symbol("_s")}};
  const std::vector<std::string> cs{"_c", "_s"};
  const Monomial mc(Kernel::symbol("_c")), ms(Kernel::symbol("_s"));
  for (auto gen : used) {
    AdjointMap A = adjoint_exp(g, gen, q);
    RotationForm rf;
    rf.P0.assign(m_, Vec(m_));
    rf.Pc = rf.P0;
    rf.Ps = rf.P0;
    rf.ok = true;
    for (std::size_t j = 0; j < m_ && rf.ok; ++j)
      for (std::size_t k = 0; k < m_ && rf.ok; ++k) {
        RatFunc e = substitute(A.M[j][k], to_cs);
        if (e.depends_on(q)) {
          rf.ok = false;
          break;
        }
        std::map<Monomial, RatFunc> parts;
        try {
          parts = collect(e, cs);
        } catch (const MathError &) {
          rf.ok = false;
          break;
        }
        for (const auto &[mono, coef] : parts) {
          if (!coef.is_constant()) {
            rf.ok = false;
            break;
          }
          if (mono.empty())
            rf.P0[j][k] = coef.constant_value();
          else if (mono == mc)
            rf.Pc[j][k] = coef.constant_value();
          else if (mono == ms)
            rf.Ps[j][k] = coef.constant_value();
          else
            rf.ok = false;
        }
      }
    forms_[gen] = std::move(rf);
  }
}

const OrbitReducer::RotationForm &OrbitReducer::form(std::size_t gen) const {
  const auto &f = forms_.at(gen);
  if (!f.ok)
    throw UnsupportedError("generator X" + std::to_string(gen + 1) +
                           " does not act as a rotation and cannot drive a reduction move");
  return f;
}

Vec OrbitReducer::apply_exact(std::size_t gen, const Rational &c, const Rational &s,
                              const Vec &a) const {
  const auto &f = form(gen);
  Vec out(m_);
  for (std::size_t j = 0; j < m_; ++j) {
    if (a[j].is_zero())
      continue;
    for (std::size_t k = 0; k < m_; ++k)
      out[k] += a[j] * (f.P0[j][k] + c * f.Pc[j][k] + s * f.Ps[j][k]);
  }
  return out;
}

std::vector<double> OrbitReducer::apply_double(std::size_t gen, double theta,
                                               const std::vector<double> &a) const {
  const auto &f = form(gen);
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> out(m_, 0.0);
  for (std::size_t j = 0; j < m_; ++j)
    for (std::size_t k = 0; k < m_; ++k)
      out[k] +=
          a[j] * (f.P0[j][k].to_double() + c * f.Pc[j][k].to_double() + s * f.Ps[j][k].to_double());
  return out;
}

ReductionTrace OrbitReducer::reduce(const Vec &a) const {
  if (a.size() != m_)
    throw MathError("coefficient vector has the wrong length");
  std::size_t pivot = m_;
  for (std::size_t k = 0; k < m_; ++k)
    if (!a[k].is_zero()) {
      pivot = k;
      break;
    }
  if (pivot == m_)
    throw MathError("the zero vector does not generate a subalgebra");

  ReductionTrace t;
  t.input = a;

  auto matches = [&](const OptimalRep &r, const std::vector<double> &v,
                     const std::optional<Vec> &ex) {
    for (std::size_t k = 0; k < m_; ++k) {
      if (!r.pattern[k])
        continue;
      if (ex) {
        if ((*ex)[k] != *r.pattern[k])
          return false;
      } else if (std::abs(v[k] - r.pattern[k]->to_double()) > kMatchTol) {
        return false;
      }
    }
    return true;
  };
  auto finish = [&](std::optional<Vec> ex, std::vector<double> v, std::size_t p, int target) {
    if (ex) {
      Rational sc = (*ex)[p].inverse();
      for (auto &x : *ex)
        x *= sc;
      t.exact_scale = sc;
      t.scale = sc.to_double();
      v = to_double(*ex);
    } else {
      t.scale = 1.0 / v[p];
      for (auto &x : v)
        x *= t.scale;
    }
    t.output = v;
    t.exact_output = ex;
    std::vector<int> hits;
    for (const auto &r : reps_)
      if (matches(r, v, ex))
        hits.push_back(r.id);
    if (!hits.empty()) {
      auto it = std::find(hits.begin(), hits.end(), target);
      t.matched = it != hits.end() ? target : hits.front();
      for (int h : hits)
        if (h != t.matched)
          t.also_matches.push_back(h);
      for (const auto &r : reps_)
        if (r.id == t.matched)
          for (std::size_t k = 0; k < m_; ++k)
            if (!r.pattern[k])
              t.params.emplace_back(coeff_name(k), v[k]);
    }
    return t;
  };

  // Already a representative up to scaling: no moves.
  {
    Vec scaled = a;
    Rational sc = a[pivot].inverse();
    for (auto &x : scaled)
      x *= sc;
    for (const auto &r : reps_)
      if (matches(r, {}, scaled))
        return finish(a, to_double(a), pivot, r.id);
  }

  const ScheduleBranch *branch = nullptr;
  for (const auto &b : schedule_)
    if (b.pivot == pivot)
      branch = &b;
  std::optional<Vec> ex = a;
  std::vector<double> v = to_double(a);
  if (!branch)
    return finish(ex, v, pivot, 0);

  for (const auto &[gen, z] : branch->moves) {
    const auto &f = form(gen);
    const bool zero_now = ex ? (*ex)[z].is_zero() : v[z] == 0.0;
    if (zero_now)
      continue;
    Move mv;
    mv.generator = gen;
    mv.zeroed = z;
    if (ex) {
      // coefficient z after the move: gamma + alpha c + beta s
      Rational gamma(0), alpha(0), beta(0);
      for (std::size_t j = 0; j < m_; ++j) {
        gamma += (*ex)[j] * f.P0[j][z];
        alpha += (*ex)[j] * f.Pc[j][z];
        beta += (*ex)[j] * f.Ps[j][z];
      }
      if (!gamma.is_zero() || (alpha.is_zero() && beta.is_zero()))
        throw UnsupportedError("move F" + std::to_string(gen + 1) + " cannot zero coefficient a" +
                               std::to_string(z + 1));
      // (c, s) proportional to (beta, -alpha); the sign makes the
      // coefficient that absorbs the rotated component positive.
      Rational c = beta, s = -alpha, absorbed(0);
      for (std::size_t j = 0; j < m_; ++j)
        for (std::size_t k = 0; k < m_; ++k)
          if (k != z)
            absorbed += (*ex)[j] * (c * f.Pc[j][k] + s * f.Ps[j][k]);
      if (absorbed.sign() < 0 || (absorbed.is_zero() && c.sign() < 0)) {
        c = -c;
        s = -s;
      }
      Rational rho2 = c * c + s * s, rho;
      mv.param = std::atan2(s.to_double(), c.to_double());
      if (s.is_zero())
        mv.param_text = c.sign() > 0 ? "0" : "pi";
      else
        mv.param_text = "atan2(" + s.str() + ", " + c.str() + ")";
      if (rho2.exact_sqrt(rho)) {
        mv.exact = true;
        mv.cos_exact = c / rho;
        mv.sin_exact = s / rho;
        ex = apply_exact(gen, mv.cos_exact, mv.sin_exact, *ex);
        (*ex)[z] = Rational(0);
        v = to_double(*ex);
      } else {
        v = apply_double(gen, mv.param, to_double(*ex));
        v[z] = 0.0;
        ex.reset();
      }
    } else {
      double gamma = 0, alpha = 0, beta = 0;
      for (std::size_t j = 0; j < m_; ++j) {
        gamma += v[j] * f.P0[j][z].to_double();
        alpha += v[j] * f.Pc[j][z].to_double();
        beta += v[j] * f.Ps[j][z].to_double();
      }
      if (std::abs(gamma) > kMatchTol || (alpha == 0 && beta == 0))
        throw UnsupportedError("move F" + std::to_string(gen + 1) + " cannot zero coefficient a" +
                               std::to_string(z + 1));
      double c = beta, s = -alpha, absorbed = 0;
      for (std::size_t j = 0; j < m_; ++j)
        for (std::size_t k = 0; k < m_; ++k)
          if (k != z)
            absorbed += v[j] * (c * f.Pc[j][k].to_double() + s * f.Ps[j][k].to_double());
      if (absorbed < 0 || (absorbed == 0 && c < 0)) {
        c = -c;
        s = -s;
      }
      mv.param = std::atan2(s, c);
      mv.param_text = format_double(mv.param);
      v = apply_double(gen, mv.param, v);
      v[z] = 0.0;
    }
    t.moves.push_back(mv);
  }
  return finish(ex, v, pivot, branch->target);
}

std::vector<double> OrbitReducer::replay(const ReductionTrace &t) const {
  if (t.exact_output) {
    Vec a = t.input;
    for (const auto &mv : t.moves)
      a = apply_exact(mv.generator, mv.cos_exact, mv.sin_exact, a);
    for (auto &x : a)
      x *= *t.exact_scale;
    return to_double(a);
  }
  std::vector<double> v = to_double(t.input);
  for (const auto &mv : t.moves)
    v = apply_double(mv.generator, mv.param, v);
  for (auto &x : v)
    x *= t.scale;
  return v;
}

ReductionTrace adjoint_orbit_reduce(const Vec &a, const LieAlgebra &g,
                                    const std::vector<OptimalRep> &reps, const Schedule &schedule) {
  return OrbitReducer(g, reps, schedule).reduce(a);
}

std::vector<InvariantCandidate> general_invariants() {
  auto a = [](int k) { return RatFunc::symbol("a" + std::to_string(k)); };
  return {
      {"a1", a(1)},
      {"a2", a(2)},
      {"a3^2 + a4^2 + a5^2", a(3) * a(3) + a(4) * a(4) + a(5) * a(5)},
  };
}

std::vector<InvariantResult> orbit_invariants_check(const LieAlgebra &g,
                                                    const std::vector<InvariantCandidate> &cands) {
  const std::size_t m = g.dim();
  std::vector<KernelBindings> images;
  for (std::size_t i = 0; i < m; ++i) {
    AdjointMap A = adjoint_exp(g, i, "q");
    KernelBindings b;
    for (std::size_t k = 0; k < m; ++k) {
      RatFunc img(0);
      for (std::size_t j = 0; j < m; ++j)
        if (!A.M[j][k].is_zero())
          img += RatFunc::symbol(coeff_name(j)) * A.M[j][k];
      b.emplace_back(Kernel::symbol(coeff_name(k)), img);
    }
    images.push_back(std::move(b));
  }
  std::vector<InvariantResult> out;
  for (const auto &c : cands) {
    InvariantResult r;
    r.name = c.name;
    r.invariant = true;
    for (const auto &b : images) {
      const bool ok = substitute(c.f, b) == c.f;
      r.per_generator.push_back(ok);
      r.invariant = r.invariant && ok;
    }
    r.degree = homogeneous_degree(c.f);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<int, int>> separation_failures(const std::vector<OptimalRep> &reps,
                                                     const std::vector<InvariantCandidate> &inv) {
  enum class Kind { Zero, NonzeroConst, Free };
  std::vector<std::vector<Kind>> sig;
  for (const auto &r : reps) {
    KernelBindings b;
    for (std::size_t k = 0; k < r.pattern.size(); ++k)
      if (r.pattern[k])
        b.emplace_back(Kernel::symbol(coeff_name(k)), RatFunc(*r.pattern[k]));
    std::vector<Kind> s;
    for (const auto &c : inv) {
      RatFunc v = substitute(c.f, b);
      s.push_back(v.is_zero() ? Kind::Zero : v.is_constant() ? Kind::NonzeroConst : Kind::Free);
    }
    sig.push_back(std::move(s));
  }
  std::vector<std::pair<int, int>> fails;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      bool separated = false;
      for (std::size_t k = 0; k < inv.size(); ++k) {
        const Kind x = sig[i][k], y = sig[j][k];
        if ((x == Kind::Zero && y == Kind::NonzeroConst) ||
            (x == Kind::NonzeroConst && y == Kind::Zero))
          separated = true;
      }
      if (!separated)
        fails.emplace_back(reps[i].id, reps[j].id);
    }
  return fails;
}

CoverageReport verify_optimal_cover(const LieAlgebra &g, const std::vector<OptimalRep> &reps,
                                    std::size_t samples, std::uint64_t seed,
                                    const std::vector<Vec> &extra, const Schedule &schedule) {
  const std::size_t m = g.dim();
  OrbitReducer red(g, reps, schedule);
  CoverageReport rep;
  rep.samples = samples;
  rep.seed = seed;

  std::vector<InvariantCandidate> verified;
  std::vector<int> degrees;
  if (m == 5) {
    auto cands = general_invariants();
    auto res = orbit_invariants_check(g, cands);
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (res[i].invariant && res[i].degree >= 0) {
        verified.push_back(cands[i]);
        degrees.push_back(res[i].degree);
        rep.invariants_used.push_back(cands[i].name);
      }
  }
  std::vector<NumericFunction> inv_num;
  for (const auto &c : verified)
    inv_num.emplace_back(c.f, coeff_names(m));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> zero_pick(0, 3), num_pick(1, 18), den_pick(1, 4);
  auto draw = [&]() {
    Vec v(m);
    for (auto &x : v) {
      if (zero_pick(rng) == 0)
        continue;
      int n = num_pick(rng) - 9;
      if (n <= 0)
        --n;
      x = Rational(n, den_pick(rng));
    }
    return v;
  };

  std::vector<Vec> inputs = extra;
  for (std::size_t i = 0; i < samples; ++i)
    inputs.push_back(draw());

  for (const auto &a : inputs) {
    if (is_zero(a)) {
      ++rep.invalid;
      continue;
    }
    ++rep.valid;
    ReductionTrace t = red.reduce(a);
    if (t.exact_output)
      ++rep.exact;
    if (t.matched == 0) {
      rep.unmatched.push_back(t);
    } else {
      ++rep.matched[t.matched];
    }
    auto rp = red.replay(t);
    for (std::size_t k = 0; k < m; ++k)
      rep.replay_error_max = std::max(rep.replay_error_max, std::abs(rp[k] - t.output[k]));
    auto in = to_double(a);
    for (std::size_t k = 0; k < inv_num.size(); ++k) {
      const double before = inv_num[k](in);
      const double after = inv_num[k](t.output) / std::pow(t.scale, degrees[k]);
      rep.invariant_drift_max = std::max(rep.invariant_drift_max, std::abs(before - after));
    }
  }
  rep.separation_failures = separation_failures(reps, verified);
  return rep;
}

} // namespace liesym
