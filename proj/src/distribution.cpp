#include "choquet/distribution.hpp"

#include <algorithm>
#include <string>

namespace choquet {

namespace {

std::vector<double> distinct_sorted_values(const Position& x) {
  std::vector<double> values(x.values());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

StepFunction distribution_function(const Position& x, const Capacity& c) {
  require_same_space(x.space(), c.space(), "distribution function");
  const std::vector<double> breakpoints = distinct_sorted_values(x);
  std::vector<double> plateaus;
  plateaus.reserve(breakpoints.size() + 1);
  plateaus.push_back(1.0 - c.value(x.space().full()));
  for (double b : breakpoints) {
    plateaus.push_back(1.0 - c.value(x.above(b)));
  }
  return StepFunction::right_continuous(breakpoints, std::move(plateaus));
}

QuantilePair quantiles(const Position& x, const Capacity& c) {
  const StepFunction g = distribution_function(x, c);
  const std::vector<double>& values = g.breakpoints();  // distinct X values
  const std::vector<double>& plateaus = g.plateaus();

  // Level g.plateaus()[j+1] is G at values[j]; G climbs to 1 at the top
  // value. The upper quantile jumps exactly at the distinct interior
  // levels of G.
  std::vector<double> thresholds;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    const double level = plateaus[j + 1];
    if (level > 0.0 && level < 1.0 &&
        (thresholds.empty() || level > thresholds.back())) {
      thresholds.push_back(level);
    }
  }

  // upper(t) = first value whose G-level strictly exceeds t, evaluated at
  // each threshold interval's left end.
  std::vector<double> quantile_plateaus;
  quantile_plateaus.reserve(thresholds.size() + 1);
  auto first_value_above = [&](double t) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (plateaus[j + 1] > t) return values[j];
    }
    return values.back();  // G reaches 1 at the top value
  };
  quantile_plateaus.push_back(first_value_above(0.0));
  for (double t : thresholds) {
    quantile_plateaus.push_back(first_value_above(t));
  }

  return QuantilePair{
      StepFunction::left_continuous(thresholds, quantile_plateaus),
      StepFunction::right_continuous(thresholds, quantile_plateaus)};
}

double QuantilePair::lower_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(Errc::out_of_domain,
         "quantile argument " + std::to_string(t) + " outside [0,1]");
  }
  if (t == 0.0) return at_zero();
  if (t == 1.0) return at_one();
  return lower.value(t);
}

double QuantilePair::upper_at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(Errc::out_of_domain,
         "quantile argument " + std::to_string(t) + " outside [0,1]");
  }
  if (t == 0.0) return at_zero();
  if (t == 1.0) return at_one();
  return upper.value(t);
}

}  // namespace choquet
