#pragma once

// Canonical rational-function representation over a set of kernels.
//
// A kernel is an atom that the arithmetic treats as an independent variable:
// a symbol, an opaque function application (with derivative orders), sin/cos
// of an argument, exp of an argument, and a few non-canonicalized elementary
// functions (ln, arctan, rational roots).
//
// A RatFunc is num/den where
//   * num is a Laurent polynomial in the kernels (negative exponents allowed
//     on every kernel except cos), with cos exponents in {0, 1}: cos^2(u) is
//     always rewritten as 1 - sin^2(u);
//   * den is 1, or a cos-free polynomial with no monomial factor, monic in the
//     lexicographic kernel order and coprime to num.
// Under these rules equal rational functions have identical representations.

#include "liesym/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace liesym {

class RatFunc;
class Expr;

enum class KernelKind : std::uint8_t {
  Symbol = 0,
  Opaque = 1,
  Sin = 2,
  Cos = 3,
  Exp = 4,
  Ln = 5,
  Arctan = 6,
  Root = 7,
};

class Kernel {
public:
  struct Data;

  static Kernel symbol(std::string name);
  /// f(args) differentiated orders[i] times with respect to args[i].
  static Kernel opaque(std::string name, std::vector<std::string> args, std::vector<int> orders);
  /// Elementary kernels take an already canonical argument. Callers normally
  /// go through sin_of()/cos_of()/... which split off the parts that have a
  /// canonical expansion first.
  static Kernel elementary(KernelKind kind, const RatFunc &arg);
  /// arg^(1/index), index >= 2.
  static Kernel root(const RatFunc &arg, int index);

  KernelKind kind() const;
  /// Symbol name, or opaque function name.
  const std::string &name() const;
  const std::vector<std::string> &args() const;
  const std::vector<int> &orders() const;
  /// Argument of an elementary kernel (Sin, Cos, Exp, Ln, Arctan, Root).
  const RatFunc &arg() const;
  int root_index() const;
  const std::string &key() const;
  const std::vector<std::string> &free_symbols() const;
  bool depends_on(std::string_view sym) const;
  /// The sin kernel sharing this cos kernel's argument.
  Kernel sin_partner() const;
  /// Same opaque function with every derivative order zero.
  Kernel opaque_base() const;
  bool is_symbol(std::string_view n) const;

  friend int compare(const Kernel &a, const Kernel &b);
  friend bool operator==(const Kernel &a, const Kernel &b) { return compare(a, b) == 0; }
  friend bool operator<(const Kernel &a, const Kernel &b) { return compare(a, b) < 0; }

private:
  explicit Kernel(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

struct Factor {
  Kernel kernel;
  int exp;
};

/// Product of kernel powers, sorted by kernel, no zero exponents.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(Kernel k, int e = 1);

  const std::vector<Factor> &factors() const { return f_; }
  bool empty() const { return f_.empty(); }
  int exponent(const Kernel &k) const;
  bool has_negative_exponent() const;
  int total_degree() const;

  Monomial operator*(const Monomial &o) const;
  Monomial inverse() const;
  /// Drops kernel k entirely.
  Monomial without(const Kernel &k) const;
  Monomial with_exponent(const Kernel &k, int e) const;

  /// Lexicographic comparison, first kernel most significant.
  friend int compare(const Monomial &a, const Monomial &b);
  friend bool operator==(const Monomial &a, const Monomial &b) { return compare(a, b) == 0; }
  friend bool operator<(const Monomial &a, const Monomial &b) { return compare(a, b) < 0; }

private:
  friend class Poly;
  std::vector<Factor> f_;
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Laurent polynomial over the rationals in kernels, cos exponents <= 1.
/// Terms are kept sorted with the leading (largest) monomial first.
class Poly {
public:
  Poly() = default;
  Poly(const Rational &c);           // NOLINT: implicit
  Poly(int c) : Poly(Rational(c)) {} // NOLINT
  static Poly kernel(const Kernel &k, int e = 1);
  static Poly monomial(const Monomial &m, const Rational &c);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rational constant_value() const; // requires is_constant()
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  std::size_t size() const { return t_.size(); }
  const Term &leading() const { return t_.front(); }

  Poly operator-() const;
  friend Poly operator+(const Poly &a, const Poly &b);
  friend Poly operator-(const Poly &a, const Poly &b);
  friend Poly operator*(const Poly &a, const Poly &b);
  Poly scaled(const Rational &c) const;
  Poly times(const Monomial &m) const;
  Poly &operator+=(const Poly &b) { return *this = *this + b; }
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly &a, const Poly &b);

  bool contains_kind(KernelKind k) const;
  bool contains(const Kernel &k) const;
  /// Kernels appearing anywhere, sorted.
  std::vector<Kernel> kernels() const;
  /// Smallest exponent per kernel (absent counts as 0), as a monomial.
  Monomial min_monomial() const;
  int degree_in(const Kernel &k) const;
  int min_degree_in(const Kernel &k) const;

private:
  std::vector<Term> t_;
};

class RatFunc {
public:
  RatFunc() = default;
  RatFunc(const Rational &c) : num_(c), den_(1) {} // NOLINT
  RatFunc(int c) : num_(c), den_(1) {}             // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(1) {} // NOLINT
  static RatFunc symbol(const std::string &name);
  static RatFunc kernel(const Kernel &k, int e = 1);
  /// Builds num/den and brings it to canonical form.
  static RatFunc fraction(Poly num, Poly den);

  const Poly &num() const { return num_; }
  const Poly &den() const { return den_; }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  Rational constant_value() const { return num_.constant_value(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
  RatFunc &operator+=(const RatFunc &b) { return *this = *this + b; }
  RatFunc &operator-=(const RatFunc &b) { return *this = *this - b; }
  RatFunc &operator*=(const RatFunc &b) { return *this = *this * b; }
  RatFunc pow(int e) const;

  friend bool operator==(const RatFunc &a, const RatFunc &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  bool depends_on(std::string_view sym) const;
  std::vector<Kernel> kernels() const;
  std::vector<std::string> free_symbols() const;

private:
  Poly num_;
  Poly den_ = Poly(1);
};

// --- elementary constructors (canonicalizing) -------------------------------

RatFunc sin_of(const RatFunc &a);
RatFunc cos_of(const RatFunc &a);
RatFunc exp_of(const RatFunc &a);
RatFunc ln_of(const RatFunc &a);
RatFunc arctan_of(const RatFunc &a);
/// a^e for rational e.
RatFunc pow_of(const RatFunc &a, const Rational &e);

// --- calculus and rewriting ---------------------------------------------------

RatFunc derivative(const RatFunc &f, std::string_view sym);
RatFunc derivative_of_kernel(const Kernel &k, std::string_view sym);

/// Simultaneous substitution. Keys are kernels: symbols, opaque applications
/// or other kernels. Binding an opaque application with all-zero orders also
/// binds every derivative of it to the matching derivative of the image.
using KernelBindings = std::vector<std::pair<Kernel, RatFunc>>;
RatFunc substitute(const RatFunc &f, const KernelBindings &b);

/// Coefficients of f as a polynomial in `vars` (symbol names). Throws
/// MathError when f is not polynomial in them.
std::map<Monomial, RatFunc> collect(const RatFunc &f, std::span<const std::string> vars);

// --- polynomial algebra ---------------------------------------------------------

/// gcd of cos-free polynomials (non-negative exponents), monic.
Poly poly_gcd(const Poly &a, const Poly &b);
/// Exact quotient; throws MathError if b does not divide a.
Poly poly_div_exact(const Poly &a, const Poly &b);

// --- conversion -------------------------------------------------------------------

RatFunc to_ratfunc(const Expr &e);
Expr to_expr(const RatFunc &f);
Expr kernel_expr(const Kernel &k);
std::string to_string(const RatFunc &f);

} // namespace liesym
