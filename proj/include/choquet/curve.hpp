#pragma once

#include <vector>

namespace choquet {

/// One affine piece of a curve on the unit interval: value offset + slope*t
/// on the left-open right-closed interval (left, right].
struct AffineSegment {
  double left = 0.0;
  double right = 1.0;
  double offset = 0.0;
  double slope = 0.0;

  double at(double t) const { return offset + slope * t; }
};

/// Piecewise-affine curve on [0,1]: a pinned value at t = 0 plus affine
/// pieces on half-open intervals (t_j, t_{j+1}] tiling (0, 1] exactly.
/// Jumps are allowed at piece boundaries; the value at a boundary point
/// belongs to the piece ending there.
///
/// This is the common carrier for distortion curves and for the weight
/// curves of quantile integrals; each use site imposes its own extra
/// constraints (pins, monotonicity, sign).
class SegmentCurve {
 public:
  SegmentCurve(double value_at_zero, std::vector<AffineSegment> segments);

  /// Exact evaluation; t = 0 returns the pinned value. Throws OutOfDomain
  /// outside [0,1].
  double value(double t) const;
  /// Limit from the right at t in [0, 1): the value of the piece starting
  /// just above t.
  double right_limit(double t) const;
  /// Slope of the piece containing t (t in (0,1]).
  double slope_at(double t) const;

  double value_at_zero() const { return value_at_zero_; }
  const std::vector<AffineSegment>& segments() const { return segments_; }
  /// Interior piece boundaries, strictly inside (0,1).
  std::vector<double> interior_knots() const;

  /// Largest |value| the curve attains on [0,1] (checked at piece ends and
  /// limits); ignores where in [0,1] it happens.
  double max_abs_value() const;

  static SegmentCurve identity();
  static SegmentCurve constant(double value);

  friend bool operator==(const SegmentCurve& a, const SegmentCurve& b);

 private:
  std::size_t piece_index(double t) const;

  double value_at_zero_ = 0.0;
  std::vector<AffineSegment> segments_;
};

inline bool operator==(const AffineSegment& a, const AffineSegment& b) {
  return a.left == b.left && a.right == b.right && a.offset == b.offset &&
         a.slope == b.slope;
}

/// Location where a curve decreases: value drops from `before` to `after`
/// moving rightwards through t.
struct CurveDecrease {
  double t = 0.0;
  double before = 0.0;
  double after = 0.0;
};

/// First violation of monotonicity (up to tolerance), if any: a negative
/// in-piece slope or a downward jump across a boundary (including t = 0).
bool find_decrease(const SegmentCurve& curve, CurveDecrease* out,
                   double tol = 1e-12);

/// Smallest value the curve attains on [0,1].
double min_value(const SegmentCurve& curve);

/// Checks the shape constraints of a distortion curve: value 0 at t = 0,
/// value 1 at t = 1, non-decreasing, range within [0,1]. Throws
/// NotNormalized / NotMonotone / InvalidValue with a witness location.
void require_distortion_shape(const SegmentCurve& curve);

}  // namespace choquet
