#include "liesym/expr.hpp"

#include "liesym/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace liesym {

struct Expr::Node {
  Kind kind = Kind::Const;
  Rational value;
  std::string name;
  std::vector<std::string> args;
  std::vector<int> orders;
  std::vector<Expr> children;
  Fn fn = Fn::Sin;
};

namespace {

constexpr std::array<std::pair<Fn, std::string_view>, 10> kFnNames{{
    {Fn::Sin, "sin"},
    {Fn::Cos, "cos"},
    {Fn::Tan, "tan"},
    {Fn::Cot, "cot"},
    {Fn::Csc, "csc"},
    {Fn::Sec, "sec"},
    {Fn::Exp, "exp"},
    {Fn::Ln, "ln"},
    {Fn::Sqrt, "sqrt"},
    {Fn::Arctan, "arctan"},
}};

} // namespace

std::string_view fn_name(Fn f) {
  for (auto [k, n] : kFnNames)
    if (k == f)
      return n;
  return "?";
}

std::optional<Fn> fn_from_name(std::string_view name) {
  for (auto [k, n] : kFnNames)
    if (n == name)
      return k;
  if (name == "atan")
    return Fn::Arctan;
  if (name == "log")
    return Fn::Ln;
  return std::nullopt;
}

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(int c) : Expr(Rational(c)) {}
Expr::Expr(const Rational &c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = c;
  n_ = std::move(n);
}

Expr Expr::constant(const Rational &c) { return Expr(c); }

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::opaque(std::string name, std::vector<std::string> args, std::vector<int> orders) {
  if (orders.empty())
    orders.assign(args.size(), 0);
  if (orders.size() != args.size())
    throw MathError("opaque function '" + name + "': orders/args size mismatch");
  for (int o : orders)
    if (o < 0)
      throw MathError("negative derivative order for '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Opaque;
  n->name = std::move(name);
  n->args = std::move(args);
  n->orders = std::move(orders);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty())
    return Expr(0);
  if (terms.size() == 1)
    return terms.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->children = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty())
    return Expr(1);
  if (factors.size() == 1)
    return factors.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->children = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, const Rational &exponent) {
  if (exponent.is_one())
    return base;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->value = exponent;
  n->children = {std::move(base)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::function(Fn f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->fn = f;
  n->children = {std::move(arg)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return n_->kind; }
const Rational &Expr::value() const { return n_->value; }
const std::string &Expr::name() const { return n_->name; }
const std::vector<std::string> &Expr::args() const { return n_->args; }
const std::vector<int> &Expr::orders() const { return n_->orders; }
const std::vector<Expr> &Expr::children() const { return n_->children; }
const Rational &Expr::exponent() const { return n_->value; }
Fn Expr::fn() const { return n_->fn; }

bool operator==(const Expr &a, const Expr &b) {
  if (a.n_ == b.n_)
    return true;
  const auto &x = *a.n_;
  const auto &y = *b.n_;
  if (x.kind != y.kind)
    return false;
  switch (x.kind) {
  case Expr::Kind::Const:
    return x.value == y.value;
  case Expr::Kind::Symbol:
    return x.name == y.name;
  case Expr::Kind::Opaque:
    return x.name == y.name && x.args == y.args && x.orders == y.orders;
  case Expr::Kind::Power:
    return x.value == y.value && x.children == y.children;
  case Expr::Kind::Function:
    return x.fn == y.fn && x.children == y.children;
  case Expr::Kind::Sum:
  case Expr::Kind::Product:
    return x.children == y.children;
  }
  return false;
}

Expr operator+(const Expr &a, const Expr &b) { return Expr::sum({a, b}); }
Expr operator-(const Expr &a, const Expr &b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr &a, const Expr &b) { return Expr::product({a, b}); }
Expr operator/(const Expr &a, const Expr &b) {
  return Expr::product({a, Expr::power(b, Rational(-1))});
}
Expr Expr::operator-() const {
  if (is_const())
    return Expr(-value());
  return Expr::product({Expr(-1), *this});
}

// --- printing ------------------------------------------------------------------

namespace {

enum Prec { kSum = 0, kProduct = 1, kPower = 2, kAtom = 3 };

int precedence(const Expr &e) {
  switch (e.kind()) {
  case Expr::Kind::Sum:
    return kSum;
  case Expr::Kind::Product:
    return kProduct;
  case Expr::Kind::Power:
    return kPower;
  case Expr::Kind::Const:
    return e.value().sign() < 0 || !e.value().is_integer() ? kProduct : kAtom;
  default:
    return kAtom;
  }
}

std::string print(const Expr &e);

std::string wrap(const Expr &e, int min_prec) {
  std::string s = print(e);
  if (precedence(e) < min_prec)
    return "(" + s + ")";
  return s;
}

std::string print_opaque(const Expr &e) {
  const auto &args = e.args();
  const auto &orders = e.orders();
  std::string call = e.name() + "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    call += (i ? ", " : "") + args[i];
  call += ")";
  bool any = std::any_of(orders.begin(), orders.end(), [](int o) { return o > 0; });
  if (!any)
    return call;
  if (args.size() == 1)
    return "D(" + e.name() + ", " + args[0] +
           (orders[0] == 1 ? "" : ", " + std::to_string(orders[0])) + ")";
  std::string inner = call;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (orders[i] > 0)
      inner = "D(" + inner + ", " + args[i] +
              (orders[i] == 1 ? "" : ", " + std::to_string(orders[i])) + ")";
  return inner;
}

std::string print_exponent(const Rational &r) {
  if (r.is_integer() && r.sign() > 0)
    return r.str();
  return "(" + r.str() + ")";
}

// Product printing: constant first, then numerator factors, then "/" and the
// factors carrying negative integer exponents.
std::string print_product(const Expr &e) {
  Rational coef(1);
  std::vector<Expr> num, den;
  for (const auto &f : e.children()) {
    if (f.is_const()) {
      coef *= f.value();
    } else if (f.kind() == Expr::Kind::Power && f.exponent().sign() < 0 &&
               f.exponent().is_integer()) {
      den.push_back(Expr::power(f.children()[0], -f.exponent()));
    } else {
      num.push_back(f);
    }
  }
  std::string out;
  if (coef.sign() < 0) {
    out = "-";
    coef = -coef;
  }
  std::vector<std::string> parts;
  if (!coef.is_one() || (num.empty() && den.empty()))
    parts.push_back(coef.str());
  for (const auto &f : num)
    parts.push_back(wrap(f, kPower));
  if (parts.empty())
    parts.push_back("1");
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? "*" : "") + parts[i];
  if (!den.empty()) {
    if (den.size() == 1) {
      out += "/" + wrap(den[0], kPower);
    } else {
      out += "/(";
      for (std::size_t i = 0; i < den.size(); ++i)
        out += (i ? "*" : "") + wrap(den[i], kPower);
      out += ")";
    }
  }
  return out;
}

std::string print(const Expr &e) {
  switch (e.kind()) {
  case Expr::Kind::Const:
    return e.value().str();
  case Expr::Kind::Symbol:
    return e.name();
  case Expr::Kind::Opaque:
    return print_opaque(e);
  case Expr::Kind::Sum: {
    std::string out;
    bool first = true;
    for (const auto &t : e.children()) {
      std::string s = wrap(t, kProduct);
      if (first) {
        out = s;
        first = false;
      } else if (!s.empty() && s[0] == '-') {
        out += " - " + s.substr(1);
      } else {
        out += " + " + s;
      }
    }
    return out;
  }
  case Expr::Kind::Product:
    return print_product(e);
  case Expr::Kind::Power:
    return wrap(e.children()[0], kAtom) + "^" + print_exponent(e.exponent());
  case Expr::Kind::Function:
    return std::string(fn_name(e.fn())) + "(" + print(e.children()[0]) + ")";
  }
  return "?";
}

// --- LaTeX -----------------------------------------------------------------------

std::string latex_symbol(const std::string &name) {
  static const std::array<std::string_view, 17> greek{
      "alpha", "beta",   "gamma", "delta", "epsilon", "theta", "phi", "varphi", "psi",
      "chi",   "lambda", "mu",    "nu",    "rho",     "sigma", "tau", "omega"};
  auto base = [&](const std::string &n) -> std::string {
    for (auto g : greek)
      if (n == g)
        return "\\" + n;
    if (n.size() > 1) {
      auto us = n.find('_');
      if (us != std::string::npos && us > 0)
        return n.substr(0, us) + "_{" + n.substr(us + 1) + "}";
      return "\\mathrm{" + n + "}";
    }
    return n;
  };
  auto ends = [&](std::string_view suf) {
    return name.size() > suf.size() && name.compare(name.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("ddot"))
    return "\\ddot{" + base(name.substr(0, name.size() - 4)) + "}";
  if (ends("dot"))
    return "\\dot{" + base(name.substr(0, name.size() - 3)) + "}";
  return base(name);
}

std::string latex(const Expr &e);

std::string latex_wrap(const Expr &e, int min_prec) {
  std::string s = latex(e);
  if (precedence(e) < min_prec)
    return "\\left(" + s + "\\right)";
  return s;
}

std::string latex_rational(const Rational &r) {
  if (r.is_integer())
    return r.str();
  std::string sgn = r.sign() < 0 ? "-" : "";
  Rational a = r.abs();
  return sgn + "\\frac{" + a.numerator_str() + "}{" + a.denominator_str() + "}";
}

std::string latex(const Expr &e) {
  switch (e.kind()) {
  case Expr::Kind::Const:
    return latex_rational(e.value());
  case Expr::Kind::Symbol:
    return latex_symbol(e.name());
  case Expr::Kind::Opaque: {
    int total = 0;
    for (int o : e.orders())
      total += o;
    std::string head = e.name();
    if (e.args().size() == 1 && total > 0) {
      head += total <= 3 ? std::string(static_cast<std::size_t>(total), '\'')
                         : "^{(" + std::to_string(total) + ")}";
    } else if (total > 0) {
      head += "_{";
      for (std::size_t i = 0; i < e.args().size(); ++i)
        for (int k = 0; k < e.orders()[i]; ++k)
          head += latex_symbol(e.args()[i]);
      head += "}";
    }
    std::string out = head + "(";
    for (std::size_t i = 0; i < e.args().size(); ++i)
      out += (i ? "," : "") + latex_symbol(e.args()[i]);
    return out + ")";
  }
  case Expr::Kind::Sum: {
    std::string out;
    bool first = true;
    for (const auto &t : e.children()) {
      std::string s = latex_wrap(t, kProduct);
      if (first) {
        out = s;
        first = false;
      } else if (!s.empty() && s[0] == '-') {
        out += " - " + s.substr(1);
      } else {
        out += " + " + s;
      }
    }
    return out;
  }
  case Expr::Kind::Product: {
    Rational coef(1);
    std::vector<std::string> num, den;
    for (const auto &f : e.children()) {
      if (f.is_const()) {
        coef *= f.value();
      } else if (f.kind() == Expr::Kind::Power && f.exponent().sign() < 0 &&
                 f.exponent().is_integer()) {
        den.push_back(latex_wrap(Expr::power(f.children()[0], -f.exponent()), kPower));
      } else {
        num.push_back(latex_wrap(f, kPower));
      }
    }
    std::string sgn = coef.sign() < 0 ? "-" : "";
    coef = coef.abs();
    std::string n, d;
    if (!coef.is_integer() || !coef.is_one() || num.empty())
      n = coef.numerator_str();
    if (!coef.is_integer())
      d = coef.denominator_str();
    if (n == "1" && !num.empty())
      n.clear();
    for (const auto &s : num)
      n += (n.empty() ? "" : " ") + s;
    for (const auto &s : den)
      d += (d.empty() ? "" : " ") + s;
    if (n.empty())
      n = "1";
    if (d.empty())
      return sgn + n;
    return sgn + "\\frac{" + n + "}{" + d + "}";
  }
  case Expr::Kind::Power: {
    const Rational &x = e.exponent();
    if (x == Rational(1, 2))
      return "\\sqrt{" + latex(e.children()[0]) + "}";
    const Expr &b = e.children()[0];
    std::string base;
    if (b.kind() == Expr::Kind::Function && x.is_integer() && x.sign() > 0 && b.fn() != Fn::Sqrt &&
        b.fn() != Fn::Exp)
      // sin^2(theta)
      return "\\" + std::string(fn_name(b.fn())) + "^{" + x.str() + "}" +
             latex_wrap(b.children()[0], kAtom);
    base = latex_wrap(b, kAtom);
    std::string ex = x.is_integer() ? x.str() : latex_rational(x);
    return base + "^{" + ex + "}";
  }
  case Expr::Kind::Function: {
    const Expr &a = e.children()[0];
    switch (e.fn()) {
    case Fn::Sqrt:
      return "\\sqrt{" + latex(a) + "}";
    case Fn::Exp:
      return "e^{" + latex(a) + "}";
    case Fn::Arctan:
      return "\\arctan\\left(" + latex(a) + "\\right)";
    default: {
      std::string arg = latex(a);
      if (a.kind() == Expr::Kind::Symbol)
        return "\\" + std::string(fn_name(e.fn())) + arg;
      return "\\" + std::string(fn_name(e.fn())) + "\\left(" + arg + "\\right)";
    }
    }
  }
  }
  return "?";
}

} // namespace

std::string to_string(const Expr &e) { return print(e); }
std::string to_latex(const Expr &e) { return latex(e); }

// --- parsing -----------------------------------------------------------------------

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column; // 1-based
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          ++j;
      }
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
    case '+':
      k = Tok::Plus;
      break;
    case '-':
      k = Tok::Minus;
      break;
    case '*':
      k = Tok::Star;
      break;
    case '/':
      k = Tok::Slash;
      break;
    case '^':
      k = Tok::Caret;
      break;
    case '(':
      k = Tok::LParen;
      break;
    case ')':
      k = Tok::RParen;
      break;
    case ',':
      k = Tok::Comma;
      break;
    default:
      throw ParseError(std::string("unexpected character '") + c + "'", col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

class Parser {
public:
  Parser(std::string_view text, const ParseOptions &opts) : toks_(lex(text)), opts_(opts) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected '" + peek().text + "'", peek().column);
    return e;
  }

private:
  const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token &next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token &expect(Tok k, const char *what) {
    if (peek().kind != k) {
      const Token &t = peek();
      throw ParseError(std::string("expected ") + what +
                           (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"),
                       t.column);
    }
    return next();
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      Expr t = term();
      terms.push_back(minus ? -t : t);
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      bool div = next().kind == Tok::Slash;
      Expr f = factor();
      factors.push_back(div ? Expr::power(f, Rational(-1)) : f);
    }
    return Expr::product(std::move(factors));
  }

  Expr factor() {
    Expr b = base();
    if (accept(Tok::Caret))
      return Expr::power(b, exponent());
    return b;
  }

  // Signed integer, or a parenthesized rational: x^2/3 is (x^2)/3, x^(2/3) a root.
  Rational exponent() {
    bool paren = accept(Tok::LParen);
    std::string text;
    if (peek().kind == Tok::Minus || peek().kind == Tok::Plus)
      text += next().kind == Tok::Minus ? "-" : "";
    const Token &n = peek();
    if (n.kind != Tok::Number || n.text.find('.') != std::string::npos)
      throw ParseError("exponent must be an integer or rational" +
                           std::string(n.kind == Tok::End ? " (end of input)" : ""),
                       n.column);
    text += next().text;
    if (paren && peek().kind == Tok::Slash && peek(1).kind == Tok::Number &&
        peek(1).text.find('.') == std::string::npos) {
      next();
      text += "/" + next().text;
    }
    if (paren)
      expect(Tok::RParen, "')'");
    return Rational::parse(text);
  }

  Expr base() {
    const Token &t = peek();
    switch (t.kind) {
    case Tok::Number:
      next();
      return Expr(Rational::parse(t.text));
    case Tok::Minus: {
      next();
      return -factor();
    }
    case Tok::LParen: {
      next();
      Expr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    case Tok::Ident: {
      Token id = next();
      if (peek().kind != Tok::LParen)
        return Expr::symbol(id.text);
      return call(id);
    }
    case Tok::End:
      throw ParseError("unexpected end of input", t.column);
    default:
      throw ParseError("unexpected '" + t.text + "'", t.column);
    }
  }

  std::vector<std::string> symbol_args(const Token &fname) {
    // '(' already consumed
    std::vector<std::string> args;
    if (peek().kind == Tok::RParen)
      throw ParseError("function '" + fname.text + "' needs arguments", peek().column);
    for (;;) {
      const Token &a = peek();
      if (a.kind != Tok::Ident || (peek(1).kind != Tok::Comma && peek(1).kind != Tok::RParen))
        throw ParseError("arguments of opaque function '" + fname.text + "' must be plain symbols",
                         a.column);
      args.push_back(next().text);
      if (accept(Tok::RParen))
        break;
      expect(Tok::Comma, "','");
    }
    return args;
  }

  Expr call(const Token &id) {
    expect(Tok::LParen, "'('");
    if (id.text == "D")
      return derivative_marker(id);
    if (auto f = fn_from_name(id.text)) {
      Expr a = expr();
      if (peek().kind == Tok::Comma)
        throw ParseError("function '" + id.text + "' takes one argument", peek().column);
      expect(Tok::RParen, "')'");
      return Expr::function(*f, a);
    }
    if (opts_.functions) {
      auto it = opts_.functions->find(id.text);
      if (it == opts_.functions->end())
        throw ParseError("unknown function '" + id.text + "'", id.column);
      auto args = symbol_args(id);
      if (args != it->second)
        throw ParseError("function '" + id.text + "' declared with different arguments", id.column);
      return Expr::opaque(id.text, args);
    }
    // permissive mode: f(symbols...) is an opaque function
    const Token &a = peek();
    if (a.kind != Tok::Ident || (peek(1).kind != Tok::Comma && peek(1).kind != Tok::RParen))
      throw ParseError("unknown function '" + id.text + "'", id.column);
    return Expr::opaque(id.text, symbol_args(id));
  }

  // D(f, x, k) | D(f(args), x, k) | D(D(...), x, k)
  Expr derivative_marker(const Token &d) {
    Expr target;
    const Token &f = peek();
    if (f.kind != Tok::Ident)
      throw ParseError("malformed derivative marker: expected function name", f.column);
    Token fname = next();
    if (fname.text == "D" && peek().kind == Tok::LParen) {
      next();
      target = derivative_marker(fname);
    } else if (peek().kind == Tok::LParen) {
      next();
      auto args = symbol_args(fname);
      if (opts_.functions) {
        auto it = opts_.functions->find(fname.text);
        if (it == opts_.functions->end())
          throw ParseError("unknown function '" + fname.text + "'", fname.column);
        if (it->second != args)
          throw ParseError("function '" + fname.text + "' declared with different arguments",
                           fname.column);
      }
      target = Expr::opaque(fname.text, args);
    } else {
      if (fn_from_name(fname.text))
        throw ParseError("malformed derivative marker: '" + fname.text +
                             "' is not an opaque function",
                         fname.column);
      std::vector<std::string> args;
      if (opts_.functions) {
        auto it = opts_.functions->find(fname.text);
        if (it == opts_.functions->end())
          throw ParseError("unknown function '" + fname.text + "'", fname.column);
        args = it->second;
      }
      target = Expr::opaque(fname.text, args); // args filled below if permissive
    }
    expect(Tok::Comma, "',' in derivative marker");
    const Token &x = peek();
    if (x.kind != Tok::Ident)
      throw ParseError("malformed derivative marker: expected variable", x.column);
    std::string var = next().text;
    int k = 1;
    if (accept(Tok::Comma)) {
      const Token &kt = peek();
      if (kt.kind != Tok::Number || kt.text.find('.') != std::string::npos)
        throw ParseError("malformed derivative marker: order must be a positive integer",
                         kt.column);
      Rational kr = Rational::parse(next().text);
      if (kr.sign() <= 0 || !kr.fits64() || kr.num64() > 1000)
        throw ParseError("malformed derivative marker: order must be a positive integer",
                         kt.column);
      k = static_cast<int>(kr.num64());
    }
    expect(Tok::RParen, "')' closing derivative marker");

    std::vector<std::string> args = target.args();
    std::vector<int> orders = target.orders();
    if (args.empty()) {
      // permissive D(f, x): f is a function of x alone
      args = {var};
      orders = {0};
    }
    auto it = std::find(args.begin(), args.end(), var);
    if (it == args.end())
      throw ParseError("malformed derivative marker: '" + target.name() + "' does not depend on '" +
                           var + "'",
                       d.column);
    orders[static_cast<std::size_t>(it - args.begin())] += k;
    return Expr::opaque(target.name(), args, orders);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions &opts_;
};

void collect_symbols(const Expr &e, std::set<std::string> &out) {
  switch (e.kind()) {
  case Expr::Kind::Symbol:
    out.insert(e.name());
    break;
  case Expr::Kind::Opaque:
    out.insert(e.args().begin(), e.args().end());
    break;
  case Expr::Kind::Const:
    break;
  default:
    for (const auto &c : e.children())
      collect_symbols(c, out);
  }
}

} // namespace

Expr parse_expr(std::string_view text, const ParseOptions &opts) {
  Parser p(text, opts);
  return p.parse();
}

std::set<std::string> symbols_of(const Expr &e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

} // namespace liesym
