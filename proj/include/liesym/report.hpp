#pragma once

#include "liesym/geometry.hpp"
#include "liesym/liealg.hpp"
#include "liesym/optimal.hpp"
#include "liesym/symmetry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace liesym {

enum class Format { Text, Json, Latex };
/// "text", "json" or "latex"; throws ParseError otherwise.
Format parse_format(const std::string &s);

/// Operator form, e.g. "cot(theta)*sin(phi)*D_phi - cos(phi)*D_theta".
std::string field_to_string(const BundleVectorField &X, const Chart &chart);
std::string field_to_latex(const BundleVectorField &X, const Chart &chart);
/// "X4", "-X3", "2*X1 - X3", or "0".
std::string combination_to_string(const Vec &v, const std::vector<std::string> &names);

/// Every report carries an outcome flag alongside the text.
struct Report {
  std::string text;
  bool pass = true;         // all requested verifications passed
  bool unsupported = false; // some requested computation hit UnsupportedError
};

struct AnalyzeOptions {
  bool noether = true;
  bool liepoint = true;
  AnsatzConfig ansatz;
};

Report analyze_report(const Metric &g, const AnalyzeOptions &opt, Format f);

Report verify_report(const Metric &g, const std::vector<BundleVectorField> &gens, bool noether,
                     bool liepoint, Format f);

/// Structure constants, Jacobi check, Killing form, derived series, radical,
/// Levi split (complement of the radical's pivot block) and adjoint maps.
Report algebra_report(const LieAlgebra &g, Format f);

/// Requires the algebra to carry the constants of general_algebra().
Report optimal_report(const LieAlgebra &g, std::size_t samples, std::uint64_t seed, Format f);

struct IntegrateOptions {
  std::vector<std::pair<std::string, std::string>> bindings;
  std::vector<double> init; // positions then velocities
  double step = 1e-3;
  double span = 1.0;
  /// Charges of these fields are monitored; when empty, the Noether
  /// symmetries found by the solver on the bound metric are used.
  std::vector<BundleVectorField> gens;
  bool gens_given = false;
};

struct ChargeDrift {
  std::string name;
  bool symmetry = false; // verified Noether symmetry with A = 0
  double initial = 0;
  double max_drift = 0;
};

struct IntegrationResult {
  GeodesicTrace trace;
  std::vector<ChargeDrift> charges;
};

IntegrationResult integrate_with_charges(const Metric &bound, const IntegrateOptions &opt);
Report integrate_report(const Metric &g, const IntegrateOptions &opt, Format f);

} // namespace liesym
