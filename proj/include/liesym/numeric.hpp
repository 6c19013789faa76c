#pragma once

#include "liesym/errors.hpp"
#include "liesym/ratfunc.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace liesym {

/// Thrown when a denominator (or a kernel raised to a negative power) is
/// numerically zero, or when a value is not finite.
class SingularityError : public MathError {
public:
  using MathError::MathError;
};

/// A RatFunc compiled for repeated double-precision evaluation in a fixed
/// variable order. Opaque kernels are not allowed; bind them first.
class NumericFunction {
public:
  NumericFunction() = default;
  NumericFunction(const RatFunc &f, const std::vector<std::string> &vars);
  ~NumericFunction();
  NumericFunction(NumericFunction &&) noexcept;
  NumericFunction &operator=(NumericFunction &&) noexcept;

  double operator()(std::span<const double> x) const;

  static constexpr double kSingularTol = 1e-12;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace liesym
