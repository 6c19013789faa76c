#pragma once

#include "liesym/expr.hpp"

#include <string>
#include <vector>

namespace liesym {

/// Affine parameter, ordered coordinates, angle flags and declared opaque
/// functions. Jet symbols are named <coord>dot and <coord>ddot.
struct Chart {
  std::string param = "s";
  std::vector<std::string> coords;
  std::vector<std::string> angles;
  FunctionTable functions;

  std::size_t dim() const { return coords.size(); }
  bool is_angle(const std::string &c) const;
  std::string dot(std::size_t i) const { return coords.at(i) + "dot"; }
  std::string ddot(std::size_t i) const { return coords.at(i) + "ddot"; }
  std::vector<std::string> dots() const;
  std::vector<std::string> ddots() const;
  /// Index of a coordinate name, or -1.
  int index_of(const std::string &c) const;

  /// Throws MathError when names collide or the chart is empty.
  void validate() const;

  friend bool operator==(const Chart &, const Chart &) = default;
};

} // namespace liesym
