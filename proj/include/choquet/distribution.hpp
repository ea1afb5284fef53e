#pragma once

#include "choquet/capacity.hpp"
#include "choquet/position.hpp"
#include "choquet/step_function.hpp"

namespace choquet {

/// Distribution function of a position with respect to a capacity:
/// G_X(x) = 1 - c(X > x). Right-continuous; breakpoints are exactly the
/// distinct values of X; 0 below the smallest value, 1 at and above the
/// largest.
StepFunction distribution_function(const Position& x, const Capacity& c);

/// Lower and upper quantile functions on (0,1):
///   lower(t) = inf{x : G_X(x) >= t}   (left-continuous in t)
///   upper(t) = inf{x : G_X(x) >  t}   (right-continuous in t)
/// Both share the same plateau data and differ only in the read at their
/// jump points. The stored endpoint values follow the limit conventions
/// at(0) = lim_{t->0+} upper(t) and at(1) = lim_{t->1-} lower(t).
struct QuantilePair {
  StepFunction lower;
  StepFunction upper;

  double at_zero() const { return upper.front_plateau(); }
  double at_one() const { return upper.back_plateau(); }

  /// Evaluation with the endpoint conventions folded in, t in [0,1].
  double lower_at(double t) const;
  double upper_at(double t) const;
};

QuantilePair quantiles(const Position& x, const Capacity& c);

}  // namespace choquet
