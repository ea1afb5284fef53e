#pragma once

#include <vector>

#include "choquet/curve.hpp"
#include "choquet/position.hpp"

namespace choquet {

/// A validated distortion curve: non-decreasing piecewise-affine map of
/// [0,1] onto itself with value(0) = 0 and value(1) = 1. Jumps are allowed,
/// with the half-open piece semantics of SegmentCurve: the indicator of
/// (a,1] evaluates to 0 at t = a and to 1 just above it.
class DistortionCurve {
 public:
  explicit DistortionCurve(SegmentCurve curve);

  /// value(0) = 0 and value(1) = 1 hold exactly; validation already bounds
  /// the last piece within 1e-12 of 1, and the contract pins the endpoint.
  double value(double t) const {
    if (t == 1.0) return 1.0;
    return curve_.value(t);
  }
  /// Right limit at 0; positive iff the curve jumps at the origin.
  double at_zero_plus() const { return curve_.right_limit(0.0); }
  double slope_at(double t) const { return curve_.slope_at(t); }
  const SegmentCurve& curve() const { return curve_; }

  static DistortionCurve identity();
  /// Indicator of (1-alpha, 1]; the curve behind a value-at-risk measure
  /// at level alpha in (0,1).
  static DistortionCurve value_at_risk(double alpha);
  /// t -> min(t, 1-alpha) / (1-alpha); concave, behind an average
  /// value-at-risk at level alpha in (0,1).
  static DistortionCurve average_value_at_risk(double alpha);

  friend bool operator==(const DistortionCurve& a, const DistortionCurve& b) {
    return a.curve_ == b.curve_;
  }

 private:
  SegmentCurve curve_;
};

/// Per-block specification of a built-in distortion.
struct BuiltinSpec {
  enum class Kind { identity, var, avar };
  Kind kind = Kind::identity;
  double alpha = 0.5;  // ignored for identity

  static BuiltinSpec identity() { return {Kind::identity, 0.0}; }
  static BuiltinSpec var(double alpha) { return {Kind::var, alpha}; }
  static BuiltinSpec avar(double alpha) { return {Kind::avar, alpha}; }
};

/// A random distortion: one distortion curve per block of the conditioning
/// partition. Immutable after construction.
class RandomDistortion {
 public:
  RandomDistortion(BlockPartition partition,
                   std::vector<DistortionCurve> curves);

  const BlockPartition& partition() const { return partition_; }
  std::size_t block_count() const { return curves_.size(); }
  const DistortionCurve& curve(std::size_t block) const {
    return curves_[block];
  }

  /// The same curve on every block.
  static RandomDistortion uniform(const BlockPartition& partition,
                                  DistortionCurve curve);

 private:
  BlockPartition partition_;
  std::vector<DistortionCurve> curves_;
};

/// Validates one raw curve per block; throws NotNormalized / NotMonotone /
/// GapOrOverlap / BlockCountMismatch.
RandomDistortion build_distortion(const BlockPartition& partition,
                                  std::vector<SegmentCurve> raw_curves);

/// Built-in curves per block; throws InvalidLevel for alpha outside (0,1).
RandomDistortion builtin_distortion(const BlockPartition& partition,
                                    const std::vector<BuiltinSpec>& kinds);

/// Exact evaluation of one block's curve at t in [0,1].
double eval_distortion(const RandomDistortion& d, std::size_t block,
                       double t);

/// Per-block concavity report. A block is concave iff its curve is
/// continuous on (0,1] with non-increasing slopes; a jump at 0 is allowed
/// and surfaces as at_zero_plus > 0.
struct ConcavityReport {
  std::vector<bool> concave;
  std::vector<double> at_zero_plus;

  bool all_concave() const {
    for (bool b : concave) {
      if (!b) return false;
    }
    return true;
  }
};

ConcavityReport is_concave(const RandomDistortion& d);
bool curve_is_concave(const DistortionCurve& curve);

}  // namespace choquet
