#include "choquet/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choquet/errors.hpp"

namespace choquet {

namespace {
// Validation slack for plateau monotonicity; values produced by validated
// capacities are monotone only up to this tolerance.
constexpr double kTol = 1e-12;
}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> plateaus, bool left_mode)
    : breakpoints_(std::move(breakpoints)),
      plateaus_(std::move(plateaus)),
      left_mode_(left_mode) {
  if (plateaus_.size() != breakpoints_.size() + 1) {
    fail(Errc::invalid_value,
         "step function needs exactly one plateau more than breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      fail(Errc::invalid_value,
           "step function breakpoints must be strictly increasing");
    }
  }
  for (double t : breakpoints_) {
    if (!std::isfinite(t)) {
      fail(Errc::invalid_value, "step function breakpoints must be finite");
    }
  }
  for (std::size_t i = 0; i < plateaus_.size(); ++i) {
    if (!std::isfinite(plateaus_[i])) {
      fail(Errc::invalid_value, "step function plateaus must be finite");
    }
    if (i > 0 && plateaus_[i] < plateaus_[i - 1] - kTol) {
      fail(Errc::invalid_value,
           "step function plateaus must be non-decreasing (plateau " +
               std::to_string(i) + " drops)");
    }
  }
}

StepFunction StepFunction::right_continuous(std::vector<double> breakpoints,
                                            std::vector<double> plateaus) {
  return StepFunction(std::move(breakpoints), std::move(plateaus), false);
}

StepFunction StepFunction::left_continuous(std::vector<double> breakpoints,
                                           std::vector<double> plateaus) {
  return StepFunction(std::move(breakpoints), std::move(plateaus), true);
}

double StepFunction::left_limit(double x) const {
  // Number of breakpoints strictly below x selects the plateau in force
  // just to the left of x.
  const auto it =
      std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return plateaus_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepFunction::right_limit(double x) const {
  const auto it =
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  return plateaus_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

}  // namespace choquet
