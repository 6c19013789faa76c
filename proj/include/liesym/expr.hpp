#pragma once

#include "liesym/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace liesym {

enum class Fn { Sin, Cos, Tan, Cot, Csc, Sec, Exp, Ln, Sqrt, Arctan };

std::string_view fn_name(Fn f);
std::optional<Fn> fn_from_name(std::string_view name);

/// Immutable expression tree. Nodes are shared; copying an Expr is cheap.
class Expr {
public:
  enum class Kind { Const, Symbol, Opaque, Sum, Product, Power, Function };

  Expr();                  // the constant 0
  Expr(const Rational &c); // NOLINT: implicit
  Expr(int c);             // NOLINT

  static Expr constant(const Rational &c);
  static Expr symbol(std::string name);
  static Expr opaque(std::string name, std::vector<std::string> args, std::vector<int> orders = {});
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, const Rational &exponent);
  static Expr function(Fn f, Expr arg);

  Kind kind() const;
  const Rational &value() const;                // Const
  const std::string &name() const;              // Symbol, Opaque
  const std::vector<std::string> &args() const; // Opaque argument symbols
  const std::vector<int> &orders() const;       // Opaque derivative orders
  const std::vector<Expr> &children() const;    // Sum, Product; Power base; Function arg
  const Rational &exponent() const;             // Power
  Fn fn() const;                                // Function

  bool is_const() const { return kind() == Kind::Const; }

  friend bool operator==(const Expr &a, const Expr &b);

  friend Expr operator+(const Expr &a, const Expr &b);
  friend Expr operator-(const Expr &a, const Expr &b);
  friend Expr operator*(const Expr &a, const Expr &b);
  friend Expr operator/(const Expr &a, const Expr &b);
  Expr operator-() const;

  struct Node;

private:
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Infix text that parse_expr() reads back.
std::string to_string(const Expr &e);
/// LaTeX rendering; symbols ending in "dot"/"ddot" become \dot{}/\ddot{}.
std::string to_latex(const Expr &e);

/// Declared opaque functions: name -> argument symbols.
using FunctionTable = std::map<std::string, std::vector<std::string>>;

struct ParseOptions {
  /// When set, only these opaque functions are accepted and any other
  /// function name is an error. When unset, any non-elementary name applied
  /// to symbol arguments is taken as an opaque function.
  std::optional<FunctionTable> functions;
};

/// Parses the expression DSL:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' (signed_int | '(' signed_rational ')'))?
///   base   := number | ident | ident '(' args ')' | '(' expr ')' | '-' factor
/// D(f, x, k) is the k-th derivative of the opaque function f in x.
/// Errors are ParseError with a 1-based column.
Expr parse_expr(std::string_view text, const ParseOptions &opts = {});

/// All symbol names in e (including opaque-function argument symbols).
std::set<std::string> symbols_of(const Expr &e);

} // namespace liesym
