#include "choquet/stochastic_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "choquet/choquet.hpp"
#include "choquet/distribution.hpp"
#include "choquet/rng.hpp"

namespace choquet {

namespace {

constexpr double kSeparation = 1e-9;

/// Survival data of a position: distinct values ascending, c(X > value) per
/// value, and the tail integrals S(value) anchored at the breakpoints.
struct SurvivalProfile {
  std::vector<double> values;
  std::vector<double> survival;
  std::vector<double> tail;
  double survival_below = 1.0;  // c(full), survival left of all values

  double tail_at(double x) const {
    if (x >= values.back()) return 0.0;
    if (x < values.front()) {
      return tail.front() + survival_below * (values.front() - x);
    }
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - values.begin()) - 1;
    return tail[j] - survival[j] * (x - values[j]);
  }
};

SurvivalProfile survival_profile(const Position& x, const Capacity& c) {
  SurvivalProfile profile;
  profile.values = x.values();
  std::sort(profile.values.begin(), profile.values.end());
  profile.values.erase(
      std::unique(profile.values.begin(), profile.values.end()),
      profile.values.end());
  profile.survival.resize(profile.values.size());
  for (std::size_t j = 0; j < profile.values.size(); ++j) {
    profile.survival[j] = c.value(x.above(profile.values[j]));
  }
  profile.survival_below = c.value(x.space().full());
  profile.tail.assign(profile.values.size(), 0.0);
  for (std::size_t j = profile.values.size() - 1; j-- > 0;) {
    profile.tail[j] = profile.tail[j + 1] +
                      profile.survival[j] *
                          (profile.values[j + 1] - profile.values[j]);
  }
  return profile;
}

/// Quantile tail data: thresholds of r^+ plus anchored tail integrals
/// T(threshold) = integral over [threshold, 1) of r^+.
struct QuantileTail {
  std::vector<double> thresholds;  // ascending, inside (0,1)
  std::vector<double> plateaus;    // size thresholds + 1
  std::vector<double> tail;        // tail[j] = T(thresholds[j]); T(1) = 0

  double at(double alpha) const {
    const auto it =
        std::upper_bound(thresholds.begin(), thresholds.end(), alpha);
    const std::size_t j = static_cast<std::size_t>(it - thresholds.begin());
    const double upper = j < thresholds.size() ? thresholds[j] : 1.0;
    const double base = j < thresholds.size() ? tail[j] : 0.0;
    return base + plateaus[j] * (upper - alpha);
  }
};

QuantileTail quantile_tail(const Position& x, const Capacity& c) {
  const QuantilePair q = quantiles(x, c);
  QuantileTail data;
  data.thresholds = q.upper.breakpoints();
  data.plateaus = q.upper.plateaus();
  data.tail.assign(data.thresholds.size(), 0.0);
  double acc = 0.0;
  for (std::size_t j = data.thresholds.size(); j-- > 0;) {
    const double upper =
        (j + 1 < data.thresholds.size()) ? data.thresholds[j + 1] : 1.0;
    acc += data.plateaus[j + 1] * (upper - data.thresholds[j]);
    data.tail[j] = acc;
  }
  return data;
}

std::vector<double> merged_breakpoints(const Position& x, const Position& y) {
  std::vector<double> points(x.values());
  points.insert(points.end(), y.values().begin(), y.values().end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace

DominanceVerdict dominates_st(const Position& x, const Position& y,
                              const Capacity& c) {
  require_same_space(x.space(), y.space(), "first-order dominance");
  require_same_space(x.space(), c.space(), "first-order dominance");
  const StepFunction gx = distribution_function(x, c);
  const StepFunction gy = distribution_function(y, c);
  for (double point : merged_breakpoints(x, y)) {
    const double lhs = gx.value(point);
    const double rhs = gy.value(point);
    if (lhs < rhs) {
      return DominanceVerdict{false, DominanceWitness{point, lhs, rhs}};
    }
  }
  return DominanceVerdict{true, std::nullopt};
}

double integrated_survival(const Position& x, const Capacity& c, double at) {
  require_same_space(x.space(), c.space(), "integrated survival");
  return survival_profile(x, c).tail_at(at);
}

double quantile_tail_integral(const Position& x, const Capacity& c,
                              double alpha) {
  require_same_space(x.space(), c.space(), "quantile tail integral");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(Errc::out_of_domain, "tail integral needs alpha in [0,1]");
  }
  if (alpha == 1.0) return 0.0;
  return quantile_tail(x, c).at(alpha);
}

DominanceVerdict dominates_sl(const Position& x, const Position& y,
                              const Capacity& c) {
  require_same_space(x.space(), y.space(), "stop-loss dominance");
  require_same_space(x.space(), c.space(), "stop-loss dominance");

  // Characterisation by integrated survival functions. Both sides are
  // piecewise affine with kinks at the positions' values, agree above the
  // largest value (both zero) and run parallel below the smallest, so
  // comparing at the union of breakpoints decides the order everywhere.
  const SurvivalProfile sx = survival_profile(x, c);
  const SurvivalProfile sy = survival_profile(y, c);
  DominanceVerdict by_survival{true, std::nullopt};
  for (double point : merged_breakpoints(x, y)) {
    const double lhs = sx.tail_at(point);
    const double rhs = sy.tail_at(point);
    if (lhs > rhs) {
      by_survival = DominanceVerdict{false, DominanceWitness{point, lhs, rhs}};
      break;
    }
  }

  // Independent recomputation through the quantile tail integrals,
  // compared at the union of the quantile jump points and at 0+. The tail
  // difference is piecewise affine with kinks at these points and vanishes
  // at 1, so this grid decides the order on all of (0,1).
  const QuantileTail tx = quantile_tail(x, c);
  const QuantileTail ty = quantile_tail(y, c);
  std::vector<double> alphas{0.0};
  alphas.insert(alphas.end(), tx.thresholds.begin(), tx.thresholds.end());
  alphas.insert(alphas.end(), ty.thresholds.begin(), ty.thresholds.end());
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  bool by_quantiles = true;
  for (double alpha : alphas) {
    if (tx.at(alpha) > ty.at(alpha)) {
      by_quantiles = false;
      break;
    }
  }

  // The two characterisations are equivalent, so a split verdict signals an
  // implementation fault, not a property of the inputs.
  if (by_survival.holds != by_quantiles) {
    std::ostringstream message;
    message << "stop-loss characterisations disagree (survival says "
            << (by_survival.holds ? "holds" : "fails") << ", quantiles say "
            << (by_quantiles ? "holds" : "fails") << ")";
    fail(Errc::characterization_mismatch, message.str());
  }
  return by_survival;
}

double weighted_quantile_integral(const Position& x, const Capacity& c,
                                  const SegmentCurve& weight) {
  require_same_space(x.space(), c.space(), "weighted quantile integral");
  CurveDecrease drop;
  if (find_decrease(weight, &drop)) {
    fail(Errc::invalid_weight,
         "weight curve decreases near t=" + std::to_string(drop.t));
  }
  if (min_value(weight) < -1e-12) {
    fail(Errc::invalid_weight, "weight curve must be non-negative");
  }

  const QuantilePair q = quantiles(x, c);
  std::vector<double> cuts{0.0, 1.0};
  for (double t : q.upper.breakpoints()) cuts.push_back(t);
  for (double knot : weight.interior_knots()) cuts.push_back(knot);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Both factors are affine/constant inside every cell, so the midpoint
  // value of the weight integrates it exactly.
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double width = cuts[k + 1] - cuts[k];
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    integral += q.upper.value(mid) * weight.value(mid) * width;
  }
  return integral;
}

double TestUtility::operator()(double z) const {
  switch (kind) {
    case Kind::indicator:
      return z > threshold ? 1.0 : 0.0;
    case Kind::call:
      return std::max(z - threshold, 0.0);
    case Kind::convex: {
      // Anchored at u(knots[0]) = 0; slope slopes[0] left of the first
      // knot, slopes[j+1] between knots[j] and knots[j+1], the last slope
      // onwards. Slopes are non-negative and non-decreasing.
      double value = slopes.front() * std::min(z - knots.front(), 0.0);
      for (std::size_t j = 0; j < knots.size(); ++j) {
        const double span = (j + 1 < knots.size())
                                ? knots[j + 1] - knots[j]
                                : std::numeric_limits<double>::infinity();
        value += slopes[j + 1] * std::clamp(z - knots[j], 0.0, span);
      }
      return value;
    }
  }
  return 0.0;
}

Position TestUtility::apply(const Position& x) const {
  std::vector<double> values(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    values[i] = (*this)(x.value(i));
  }
  return Position(x.space(), std::move(values));
}

std::string TestUtility::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::indicator:
      out << "indicator(threshold=" << threshold << ")";
      break;
    case Kind::call:
      out << "call(strike=" << threshold << ")";
      break;
    case Kind::convex: {
      out << "convex(knots=[";
      for (std::size_t j = 0; j < knots.size(); ++j) {
        out << (j ? "," : "") << knots[j];
      }
      out << "], slopes=[";
      for (std::size_t j = 0; j < slopes.size(); ++j) {
        out << (j ? "," : "") << slopes[j];
      }
      out << "])";
      break;
    }
  }
  return out.str();
}

std::optional<TestUtility> falsify_icx(const Position& x, const Position& y,
                                       const Capacity& c, int trials,
                                       std::uint64_t seed) {
  require_same_space(x.space(), y.space(), "increasing-convex falsifier");
  require_same_space(x.space(), c.space(), "increasing-convex falsifier");
  if (trials < 1) {
    fail(Errc::invalid_value, "falsifier needs at least one trial");
  }

  const auto separates = [&](const TestUtility& u) {
    return choquet_expectation(u.apply(x), c) >
           choquet_expectation(u.apply(y), c) + kSeparation;
  };

  // Call payoffs at every joint breakpoint, lowest strike first.
  for (double strike : merged_breakpoints(x, y)) {
    const TestUtility u{TestUtility::Kind::call, strike, {}, {}};
    if (separates(u)) return u;
  }

  // Random convex non-decreasing utilities on the joint range.
  const double lo = std::min(x.min(), y.min());
  const double hi = std::max(x.max(), y.max());
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t knot_count = 1 + rng.index(4);
    TestUtility u{TestUtility::Kind::convex,
                  0.0,
                  rng.sorted_uniform(knot_count, lo, hi),
                  {}};
    u.knots.erase(std::unique(u.knots.begin(), u.knots.end()), u.knots.end());
    double slope = rng.chance(0.3) ? 0.0 : rng.uniform(0.0, 1.0);
    for (std::size_t j = 0; j <= u.knots.size(); ++j) {
      u.slopes.push_back(slope);
      slope += rng.uniform(0.0, 2.0);
    }
    if (separates(u)) return u;
  }
  return std::nullopt;
}

}  // namespace choquet
