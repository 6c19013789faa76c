#pragma once

#include "liesym/geometry.hpp"
#include "liesym/jets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liesym {

enum class Mode { Noether, LiePoint };
std::string mode_name(Mode m);

/// X^[1] L + (D xi) L - D A.
RatFunc noether_residual(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                         const Chart &chart);

/// X^[2] E_i with xddot replaced by the solved form.
std::vector<RatFunc> liepoint_residuals(const BundleVectorField &X, const GeodesicSystem &sys);

/// The Noether charge formula without the symmetry check; conserved only
/// when X is a Noether symmetry.
RatFunc noether_charge(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                       const Chart &chart);

/// A - xi L - (eta^a - xi xdot^a) dL/dxdot^a. Throws MathError when X is
/// not a Noether symmetry of L with gauge A.
RatFunc noether_first_integral(const BundleVectorField &X, const RatFunc &L, const RatFunc &A,
                               const Chart &chart);

/// D I with second-order jets eliminated through the geodesic system.
RatFunc on_shell_derivative(const RatFunc &I, const GeodesicSystem &sys);

struct SymmetryReport {
  BundleVectorField field;
  Mode mode = Mode::Noether;
  std::vector<RatFunc> residuals;
  bool pass = false;
  std::optional<RatFunc> first_integral;
};

SymmetryReport verify_noether(const BundleVectorField &X, const Metric &g,
                              const RatFunc &A = RatFunc(0));
SymmetryReport verify_liepoint(const BundleVectorField &X, const GeodesicSystem &sys);

struct DeterminingEquation {
  RatFunc expr;
  std::size_t source_residual = 0;
  Monomial source_monomial;
};

/// Linear homogeneous equations in the unknown-function atoms.
struct DeterminingSystem {
  Mode mode = Mode::Noether;
  Chart chart;
  /// Unknown opaque functions of (s, x): xi, eta1..etan and, with a gauge
  /// ansatz, A. All take the arguments `args`.
  std::vector<std::string> unknowns;
  std::vector<std::string> args;
  bool gauge = false;
  std::vector<DeterminingEquation> equations;
};

DeterminingSystem determining_system(const Metric &g, Mode mode, bool gauge = false);
DeterminingSystem determining_system_noether(const RatFunc &L, const Chart &chart,
                                             bool gauge = false);
DeterminingSystem determining_system_liepoint(const GeodesicSystem &sys);

struct AnsatzConfig {
  int degree = 2;
  /// Kernels available for the first angle coordinate; later angles use
  /// sin and cos only.
  bool use_sin = true;
  bool use_cos = true;
  bool use_cot = true;
  bool use_csc = true;
};

struct Ansatz {
  int degree = 2;
  std::vector<std::string> kernels; // printable kernel names
  std::vector<RatFunc> basis;
  /// Basis for the gauge function A (the constant is excluded).
  std::vector<RatFunc> gauge_basis;
};

Ansatz default_ansatz(const Chart &chart, const AnsatzConfig &cfg = {});

struct Solution {
  std::vector<BundleVectorField> fields;
  std::vector<RatFunc> gauges; // aligned with fields; zero without gauge
  std::size_t unknown_count = 0;
  std::size_t row_count = 0;
  std::size_t rank = 0;
};

/// Substitutes the ansatz, collects over every kernel monomial and returns
/// an RREF-ordered nullspace basis rendered as vector fields.
Solution solve_determining(const DeterminingSystem &ds, const Ansatz &a);

} // namespace liesym
