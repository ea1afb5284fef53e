#pragma once

#include <vector>

namespace choquet {

/// Piecewise-constant non-decreasing function with finitely many jumps.
///
/// Stored as strictly increasing breakpoints t_1 < ... < t_k together with
/// plateau values v_0 <= ... <= v_k. Two read conventions exist:
///   right-continuous:  v_0 on (-inf, t_1), v_j on [t_j, t_{j+1}), v_k on [t_k, inf)
///   left-continuous:   v_0 on (-inf, t_1], v_j on (t_j, t_{j+1}], v_k on (t_k, inf)
///
/// Distribution functions and upper quantile functions are right-continuous;
/// lower quantile functions use the left-continuous read of the same data.
class StepFunction {
 public:
  static StepFunction right_continuous(std::vector<double> breakpoints,
                                       std::vector<double> plateaus);
  static StepFunction left_continuous(std::vector<double> breakpoints,
                                      std::vector<double> plateaus);

  /// Value at x under the stored convention.
  double value(double x) const {
    return left_mode_ ? left_limit(x) : right_limit(x);
  }
  /// Limit from the left at x (independent of the convention).
  double left_limit(double x) const;
  /// Limit from the right at x (independent of the convention).
  double right_limit(double x) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& plateaus() const { return plateaus_; }
  double front_plateau() const { return plateaus_.front(); }
  double back_plateau() const { return plateaus_.back(); }
  bool is_left_continuous() const { return left_mode_; }

  friend bool operator==(const StepFunction& a, const StepFunction& b) =
      default;

 private:
  StepFunction(std::vector<double> breakpoints, std::vector<double> plateaus,
               bool left_mode);

  std::vector<double> breakpoints_;
  std::vector<double> plateaus_;
  bool left_mode_ = false;
};

}  // namespace choquet
