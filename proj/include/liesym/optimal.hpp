#pragma once

#include "liesym/liealg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace liesym {

/// A representative pattern: fixed rational entries and free slots.
struct OptimalRep {
  int id = 0;
  std::vector<std::optional<Rational>> pattern; // nullopt marks a free slot
  std::string label() const;
};

/// The nine representatives for the five-dimensional general algebra.
std::vector<OptimalRep> general_representatives();
/// Structure constants of that algebra (X1, X2 central; X3, X4, X5 rotations).
LieAlgebra general_algebra();

/// One branch of the move schedule, chosen by the first nonzero coefficient.
struct ScheduleBranch {
  std::size_t pivot = 0;                                  // 0-based
  std::vector<std::pair<std::size_t, std::size_t>> moves; // (generator, coefficient to zero)
  int target = 0;                                         // expected representative id
};
using Schedule = std::vector<ScheduleBranch>;
Schedule general_schedule();

struct Move {
  std::size_t generator = 0; // 0-based
  std::size_t zeroed = 0;
  double param = 0; // angle in radians
  bool exact = false;
  Rational cos_exact, sin_exact;
  std::string param_text;
};

struct ReductionTrace {
  Vec input;
  std::vector<Move> moves;
  std::vector<double> output;
  std::optional<Vec> exact_output;
  double scale = 1;
  std::optional<Rational> exact_scale;
  int matched = 0;               // 0 when no representative fits
  std::vector<int> also_matches; // other representatives the output fits
  std::vector<std::pair<std::string, double>> params;
};

class OrbitReducer {
public:
  OrbitReducer(const LieAlgebra &g, std::vector<OptimalRep> reps, Schedule schedule);

  /// Throws MathError on the zero vector.
  ReductionTrace reduce(const Vec &a) const;
  /// Recomputes the output from the input and the recorded moves.
  std::vector<double> replay(const ReductionTrace &t) const;
  const std::vector<OptimalRep> &reps() const { return reps_; }

  static constexpr double kMatchTol = 1e-9;

private:
  // M_i(theta) = P0 + cos(theta) Pc + sin(theta) Ps
  struct RotationForm {
    bool ok = false;
    Mat P0, Pc, Ps;
  };
  Vec apply_exact(std::size_t gen, const Rational &c, const Rational &s, const Vec &a) const;
  std::vector<double> apply_double(std::size_t gen, double theta,
                                   const std::vector<double> &a) const;
  const RotationForm &form(std::size_t gen) const;

  std::size_t m_;
  std::vector<OptimalRep> reps_;
  Schedule schedule_;
  std::vector<RotationForm> forms_;
};

ReductionTrace adjoint_orbit_reduce(const Vec &a, const LieAlgebra &g,
                                    const std::vector<OptimalRep> &reps,
                                    const Schedule &schedule = general_schedule());

/// Polynomial in the symbols a1..am.
struct InvariantCandidate {
  std::string name;
  RatFunc f;
};
std::vector<InvariantCandidate> general_invariants();

struct InvariantResult {
  std::string name;
  std::vector<bool> per_generator;
  bool invariant = false;
  int degree = -1; // homogeneous degree, -1 when not homogeneous
};

std::vector<InvariantResult> orbit_invariants_check(const LieAlgebra &g,
                                                    const std::vector<InvariantCandidate> &cands);

struct CoverageReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::size_t exact = 0;
  std::map<int, std::size_t> matched;
  std::vector<ReductionTrace> unmatched;
  double invariant_drift_max = 0;
  double replay_error_max = 0;
  std::vector<std::string> invariants_used;
  std::vector<std::pair<int, int>> separation_failures;
};

/// Pairs of representatives that no verified invariant tells apart.
std::vector<std::pair<int, int>> separation_failures(const std::vector<OptimalRep> &reps,
                                                     const std::vector<InvariantCandidate> &inv);

/// Random vectors from a seeded generator; extra vectors are reduced first
/// (used to inject edge cases).
CoverageReport verify_optimal_cover(const LieAlgebra &g, const std::vector<OptimalRep> &reps,
                                    std::size_t samples, std::uint64_t seed,
                                    const std::vector<Vec> &extra = {},
                                    const Schedule &schedule = general_schedule());

} // namespace liesym
