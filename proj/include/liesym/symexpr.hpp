#pragma once

// Expr-level entry points. Everything here goes through the canonical
// rational-function form in ratfunc.hpp.

#include "liesym/expr.hpp"
#include "liesym/ratfunc.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace liesym {

/// Simultaneous substitution map. Keys are symbols, opaque applications
/// such as M(t), or any other single kernel such as sin(theta).
using Bindings = std::vector<std::pair<Expr, Expr>>;

Expr to_canonical(const Expr &e);
Expr differentiate(const Expr &e, const std::string &v);
Expr substitute(const Expr &e, const Bindings &b);
bool is_zero(const Expr &e);

/// Exponent vector (aligned with `vars`) -> coefficient.
using Collected = std::map<std::vector<int>, Expr>;
Collected collect(const Expr &e, const std::vector<std::string> &vars);

/// Converts Expr bindings to kernel bindings. Throws MathError if a key is
/// not a single kernel.
KernelBindings kernel_bindings(const Bindings &b);

/// Randomized cross-check of a zero claim: evaluates the tree at `points`
/// exact rational sample points (fresh values for opaque atoms, rational
/// points on the unit circle for each trigonometric argument) and reports
/// whether every sample was zero.
bool sampled_zero(const Expr &e, std::uint64_t seed = 0x5eed, int points = 8);

/// True when LIESYM_DEBUG_SAMPLER=1 was set at startup.
bool debug_sampler_enabled();

} // namespace liesym
