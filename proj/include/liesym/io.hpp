#pragma once

#include "liesym/geometry.hpp"
#include "liesym/jets.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace liesym {

/// Metric file:
///   param <name>
///   coords <name>+
///   angles <name>*
///   function <ident>(<arg>, ...)
///   g <i> <j> = <expr>        0-based, i <= j, unset entries are zero
///   # comment
/// Errors are ParseError carrying the source name and line.
Metric parse_metric(std::string_view text, const std::string &source, const std::string &id);
Metric load_metric(const std::string &path);

/// Generator file: `gen <name> = <xi> | <eta_0> | ... | <eta_{n-1}>`, or a
/// JSON report with a "generators" array of {name, xi, eta}.
std::vector<BundleVectorField> parse_generators(std::string_view text, const Chart &chart,
                                                const std::string &source);
std::vector<BundleVectorField> load_generators(const std::string &path, const Chart &chart);

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_file(const std::string &path);

/// Parses an expression over the chart's symbols (parameter, coordinates
/// and declared functions).
RatFunc parse_chart_expr(std::string_view text, const Chart &chart, bool allow_param);

/// Declared functions replaced by expressions in their arguments, e.g.
/// M -> "t". Derivatives of M follow from the binding.
struct FunctionBinding {
  Chart chart; // bound functions removed
  KernelBindings kernels;
};
FunctionBinding bind_chart(const Chart &chart,
                           const std::vector<std::pair<std::string, std::string>> &b);
Metric bind_functions(const Metric &g, const std::vector<std::pair<std::string, std::string>> &b);
BundleVectorField bind_field(const BundleVectorField &X, const FunctionBinding &fb);

} // namespace liesym
