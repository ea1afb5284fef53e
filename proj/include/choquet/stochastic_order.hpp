#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "choquet/capacity.hpp"
#include "choquet/curve.hpp"
#include "choquet/position.hpp"

namespace choquet {

/// Outcome of a dominance query. When the order fails, `witness` carries a
/// point where the defining inequality breaks, with both sides evaluated.
struct DominanceWitness {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct DominanceVerdict {
  bool holds = true;
  std::optional<DominanceWitness> witness;
};

/// First-order dominance of X by Y with respect to c.
///
/// Decided by comparing the two distribution functions at the union of
/// their breakpoints: on a finite space the level sets of u(X) for any
/// non-decreasing u are level sets of X, so G_X >= G_Y everywhere is
/// equivalent to E_c(u(X)) <= E_c(u(Y)) for every non-decreasing u.
DominanceVerdict dominates_st(const Position& x, const Position& y,
                              const Capacity& c);

/// Stop-loss dominance: integrated survival functions compared at every
/// breakpoint of both positions. The verdict is recomputed through the
/// quantile tail integrals and the two characterisations must agree;
/// a disagreement throws CharacterizationMismatch (an internal bug, the
/// two routes are provably equivalent).
DominanceVerdict dominates_sl(const Position& x, const Position& y,
                              const Capacity& c);

/// S_X(x) = integral_x^inf c(X > z) dz, evaluated exactly (the survival
/// function is a step function of z). Equals the Choquet expectation of the
/// call payoff (X - x)^+.
double integrated_survival(const Position& x, const Capacity& c, double at);

/// integral_alpha^1 r_X^+(u) du, evaluated exactly from the quantile
/// plateaus; alpha in [0,1].
double quantile_tail_integral(const Position& x, const Capacity& c,
                              double alpha);

/// Exact value of integral_0^1 g(t) r_X^+(t) dt for a non-negative,
/// non-decreasing piecewise-affine weight curve g; throws InvalidWeight.
double weighted_quantile_integral(const Position& x, const Capacity& c,
                                  const SegmentCurve& weight);

/// Non-decreasing test utility used by the falsifier and the dominance
/// cross-checks.
struct TestUtility {
  enum class Kind { indicator, call, convex };
  Kind kind = Kind::call;
  double threshold = 0.0;       // indicator / call parameter
  std::vector<double> knots;    // convex kind: slope change points
  std::vector<double> slopes;   // convex kind: knots.size() + 1 slopes,
                                // non-negative and non-decreasing

  double operator()(double z) const;
  Position apply(const Position& x) const;
  std::string describe() const;
};

/// Searches for a non-decreasing convex utility separating the two Choquet
/// expected utilities: all call payoffs at the joint breakpoints first,
/// then `trials` random convex piecewise-affine utilities. Returns the
/// first utility with E_c(u(X)) > E_c(u(Y)) + 1e-9, or nothing. Absence of
/// a witness is evidence, not proof, of increasing-convex dominance.
std::optional<TestUtility> falsify_icx(const Position& x, const Position& y,
                                       const Capacity& c, int trials,
                                       std::uint64_t seed);

}  // namespace choquet
