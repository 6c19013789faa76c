#include "liesym/rational.hpp"

#include "liesym/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <limits>

namespace liesym {

struct Rational::Big {
  mpq_class q;
};

namespace {

using i128 = __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

i128 gcd128(i128 a, i128 b) {
  if (a < 0)
    a = -a;
  if (b < 0)
    b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u =
      neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpq_class to_mpq(std::int64_t n, std::int64_t d) {
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  return q;
}

bool fits(const mpz_class &z) { return z >= to_mpz(kMin64 + 1) && z <= to_mpz(kMax64); }

std::int64_t to_i64(const mpz_class &z) {
  // z fits in int64 here; go through the string form to stay portable
  // across platforms where long is 32-bit.
  return std::stoll(z.get_str());
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0)
    throw MathError("rational with zero denominator");
  i128 N = n, D = d;
  if (D < 0) {
    N = -N;
    D = -D;
  }
  i128 g = gcd128(N, D);
  if (g > 1) {
    N /= g;
    D /= g;
  }
  if (N > kMin64 && N <= kMax64 && D <= kMax64) {
    num_ = static_cast<std::int64_t>(N);
    den_ = static_cast<std::int64_t>(D);
  } else {
    auto b = std::make_shared<Big>();
    b->q = mpq_class(to_mpz(N), to_mpz(D));
    b->q.canonicalize();
    *this = from_big(*b);
  }
}

Rational Rational::from_big(const Big &b) {
  Rational r;
  if (fits(b.q.get_num()) && fits(b.q.get_den())) {
    r.num_ = to_i64(b.q.get_num());
    r.den_ = to_i64(b.q.get_den());
    return r;
  }
  r.big_ = std::make_shared<Big>(b);
  return r;
}

namespace {

Rational make_small_or_big(i128 n, i128 d) {
  // d > 0 assumed
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n > kMin64 && n <= kMax64 && d <= kMax64)
    return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
  Rational::Big b;
  b.q = mpq_class(to_mpz(n), to_mpz(d));
  b.q.canonicalize();
  // route through the public path that handles promotion
  return Rational::parse(b.q.get_str());
}

} // namespace

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
    ++start;
  s = s.substr(start);
  if (s.empty())
    throw ParseError("empty number", 0);
  auto dot = s.find('.');
  mpq_class q;
  if (dot != std::string::npos) {
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !intpart.empty() && intpart[0] == '-';
    if (neg || (!intpart.empty() && intpart[0] == '+'))
      intpart = intpart.substr(1);
    if (intpart.empty())
      intpart = "0";
    for (char c : intpart + frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("malformed number '" + s + "'", 0);
    mpz_class num(intpart + frac);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      den *= 10;
    q = mpq_class(neg ? mpz_class(-num) : num, den);
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
      if (!ok)
        throw ParseError("malformed number '" + s + "'", 0);
    }
    if (s.find('/') != std::string::npos && s.back() == '/')
      throw ParseError("malformed number '" + s + "'", 0);
    if (s[0] == '+')
      s = s.substr(1);
    try {
      q = mpq_class(s, 10);
    } catch (const std::invalid_argument &) {
      throw ParseError("malformed number '" + s + "'", 0);
    }
    if (q.get_den() == 0)
      throw MathError("rational with zero denominator");
  }
  q.canonicalize();
  Big b{q};
  return from_big(b);
}

bool Rational::is_integer() const {
  if (big_)
    return big_->q.get_den() == 1;
  return den_ == 1;
}

int Rational::sign() const {
  if (big_)
    return sgn(big_->q);
  return (num_ > 0) - (num_ < 0);
}

std::string Rational::numerator_str() const {
  return big_ ? big_->q.get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
  return big_ ? big_->q.get_den().get_str() : std::to_string(den_);
}

std::int64_t Rational::num64() const {
  if (big_)
    throw MathError("rational does not fit in 64 bits");
  return num_;
}

std::int64_t Rational::den64() const {
  if (big_)
    throw MathError("rational does not fit in 64 bits");
  return den_;
}

double Rational::to_double() const {
  if (big_)
    return big_->q.get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (big_)
    return big_->q.get_str();
  if (den_ == 1)
    return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (!big_) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Big b{mpq_class(-big_->q)};
  return from_big(b);
}

Rational Rational::inverse() const {
  if (is_zero())
    throw MathError("division by zero");
  if (!big_) {
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  Big b{mpq_class(1 / big_->q)};
  return from_big(b);
}

Rational Rational::pow(int e) const {
  if (e < 0)
    return inverse().pow(-e);
  Rational result(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

namespace {
mpq_class as_mpq(const Rational &r, const std::shared_ptr<const Rational::Big> &big, std::int64_t n,
                 std::int64_t d) {
  (void)r;
  return big ? big->q : to_mpq(n, d);
}
} // namespace

Rational operator+(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) &&
          s != std::numeric_limits<std::int64_t>::min())
        return Rational(s);
    }
    if (a.num_ == 0)
      return b;
    if (b.num_ == 0)
      return a;
    i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    return make_small_or_big(n, d);
  }
  Rational::Big r{as_mpq(a, a.big_, a.num_, a.den_) + as_mpq(b, b.big_, b.num_, b.den_)};
  return Rational::from_big(r);
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0)
      return Rational();
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p) &&
          p != std::numeric_limits<std::int64_t>::min())
        return Rational(p);
    }
    i128 n = static_cast<i128>(a.num_) * b.num_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    return make_small_or_big(n, d);
  }
  Rational::Big r{as_mpq(a, a.big_, a.num_, a.den_) * as_mpq(b, b.big_, b.num_, b.den_)};
  return Rational::from_big(r);
}

Rational operator/(const Rational &a, const Rational &b) { return a * b.inverse(); }

bool operator==(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_)
    return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_)
    return a.big_->q == b.big_->q;
  return false; // canonical: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(as_mpq(a, a.big_, a.num_, a.den_), as_mpq(b, b.big_, b.num_, b.den_));
  return c <=> 0;
}

bool Rational::exact_sqrt(Rational &out) const {
  if (sign() < 0)
    return false;
  mpq_class q = big_ ? big_->q : to_mpq(num_, den_);
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Big b{mpq_class(rn, rd)};
  b.q.canonicalize();
  out = from_big(b);
  return true;
}

} // namespace liesym
