#pragma once

#include "liesym/errors.hpp"
#include "liesym/jets.hpp"
#include "liesym/linalg.hpp"

#include <string>
#include <vector>

namespace liesym {

/// A bracket of two basis fields falls outside the span of the basis.
class NonClosureError : public MathError {
public:
  NonClosureError(std::size_t i, std::size_t j, std::string remainder, const std::string &msg)
      : MathError(msg), i_(i), j_(j), remainder_(std::move(remainder)) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  const std::string &remainder() const { return remainder_; }

private:
  std::size_t i_, j_;
  std::string remainder_;
};

/// [X, Y]^a = X(Y^a) - Y(X^a) over the (xi, eta) components.
BundleVectorField field_bracket(const BundleVectorField &X, const BundleVectorField &Y,
                                const Chart &chart);

struct LieAlgebra {
  Chart chart;
  std::vector<BundleVectorField> basis;
  /// c[i][j][k]: [X_i, X_j] = sum_k c[i][j][k] X_k.
  std::vector<std::vector<Vec>> c;

  std::size_t dim() const { return c.size(); }
  std::string name(std::size_t i) const;
  /// Bracket of coefficient vectors.
  Vec bracket(const Vec &a, const Vec &b) const;
};

/// Throws NonClosureError, or MathError for a dependent basis.
LieAlgebra structure_constants(const std::vector<BundleVectorField> &basis, const Chart &chart);
/// An abstract algebra from constants only (no fields attached).
LieAlgebra abstract_algebra(std::vector<std::vector<Vec>> c);

/// Linear dependence check on vector fields over the kernel monomials.
bool fields_independent(const std::vector<BundleVectorField> &fields);
/// Coefficients of `target` in `basis` (rational), or nullopt.
std::optional<Vec> express_field(const std::vector<BundleVectorField> &basis,
                                 const BundleVectorField &target);

/// Failures of antisymmetry or the Jacobi identity, as readable strings.
std::vector<std::string> check_jacobi(const LieAlgebra &g);

/// Subspaces are stored as RREF row bases in coefficient coordinates.
using Subspace = Mat;

Subspace bracket_span(const LieAlgebra &g, const Subspace &a, const Subspace &b);
/// g, g^(1), g^(2), ... up to and including the first repeated term.
std::vector<Subspace> derived_series(const LieAlgebra &g);
bool is_solvable(const LieAlgebra &g);
bool is_solvable(const LieAlgebra &g, const Subspace &s);
bool is_ideal(const LieAlgebra &g, const Subspace &s);
bool is_subalgebra(const LieAlgebra &g, const Subspace &s);
bool contains(const Subspace &s, const Vec &v);

/// (ad v)[k][j]: coefficient of X_k in [v, X_j].
Mat ad_matrix(const LieAlgebra &g, const Vec &v);
Mat killing_form(const LieAlgebra &g);
bool is_semisimple(const LieAlgebra &g);

/// Radical as the Killing-orthogonal complement of [g, g], verified to be a
/// solvable ideal.
Subspace radical(const LieAlgebra &g);

bool levi_check(const LieAlgebra &g, const Subspace &r, const Subspace &h);

/// Unit-vector subspace spanned by the given basis indices.
Subspace coordinate_subspace(std::size_t dim, const std::vector<std::size_t> &indices);

/// M[j][k] = coefficient of X_k in Ad(exp(q X_i)) X_j, i.e. the transpose
/// of exp(-q ad X_i).
struct AdjointMap {
  std::size_t index = 0;
  std::string param;
  std::vector<std::vector<RatFunc>> M;
};

AdjointMap adjoint_exp(const LieAlgebra &g, std::size_t i, const std::string &q);

/// Partial sum of the alternating Lie series up to degree n, as a matrix in
/// the same orientation as AdjointMap::M.
std::vector<std::vector<RatFunc>> lie_series(const LieAlgebra &g, std::size_t i,
                                             const std::string &q, int n);

/// Taylor polynomial of f in q about 0 up to degree n.
RatFunc taylor(const RatFunc &f, const std::string &q, int n);

} // namespace liesym
