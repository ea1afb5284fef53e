#include "choquet/distortion.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace choquet {

namespace {
constexpr double kTol = 1e-12;
}

DistortionCurve::DistortionCurve(SegmentCurve curve)
    : curve_(std::move(curve)) {
  require_distortion_shape(curve_);
}

DistortionCurve DistortionCurve::identity() {
  return DistortionCurve(SegmentCurve::identity());
}

DistortionCurve DistortionCurve::value_at_risk(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(Errc::invalid_level,
         "value-at-risk level must lie in (0,1), got " +
             std::to_string(alpha));
  }
  const double knot = 1.0 - alpha;
  return DistortionCurve(SegmentCurve(
      0.0, {AffineSegment{0.0, knot, 0.0, 0.0},
            AffineSegment{knot, 1.0, 1.0, 0.0}}));
}

DistortionCurve DistortionCurve::average_value_at_risk(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(Errc::invalid_level,
         "average value-at-risk level must lie in (0,1), got " +
             std::to_string(alpha));
  }
  const double knot = 1.0 - alpha;
  return DistortionCurve(SegmentCurve(
      0.0, {AffineSegment{0.0, knot, 0.0, 1.0 / knot},
            AffineSegment{knot, 1.0, 1.0, 0.0}}));
}

RandomDistortion::RandomDistortion(BlockPartition partition,
                                   std::vector<DistortionCurve> curves)
    : partition_(std::move(partition)), curves_(std::move(curves)) {
  if (curves_.size() != partition_.block_count()) {
    fail(Errc::block_count_mismatch,
         "expected " + std::to_string(partition_.block_count()) +
             " curves, got " + std::to_string(curves_.size()));
  }
}

RandomDistortion RandomDistortion::uniform(const BlockPartition& partition,
                                           DistortionCurve curve) {
  std::vector<DistortionCurve> curves(partition.block_count(), curve);
  return RandomDistortion(partition, std::move(curves));
}

RandomDistortion build_distortion(const BlockPartition& partition,
                                  std::vector<SegmentCurve> raw_curves) {
  if (raw_curves.size() != partition.block_count()) {
    fail(Errc::block_count_mismatch,
         "expected one curve per block (" +
             std::to_string(partition.block_count()) + "), got " +
             std::to_string(raw_curves.size()));
  }
  std::vector<DistortionCurve> curves;
  curves.reserve(raw_curves.size());
  for (auto& raw : raw_curves) {
    curves.emplace_back(std::move(raw));
  }
  return RandomDistortion(partition, std::move(curves));
}

RandomDistortion builtin_distortion(const BlockPartition& partition,
                                    const std::vector<BuiltinSpec>& kinds) {
  if (kinds.size() != partition.block_count()) {
    fail(Errc::block_count_mismatch,
         "expected one kind per block (" +
             std::to_string(partition.block_count()) + "), got " +
             std::to_string(kinds.size()));
  }
  std::vector<DistortionCurve> curves;
  curves.reserve(kinds.size());
  for (const auto& spec : kinds) {
    switch (spec.kind) {
      case BuiltinSpec::Kind::identity:
        curves.push_back(DistortionCurve::identity());
        break;
      case BuiltinSpec::Kind::var:
        curves.push_back(DistortionCurve::value_at_risk(spec.alpha));
        break;
      case BuiltinSpec::Kind::avar:
        curves.push_back(DistortionCurve::average_value_at_risk(spec.alpha));
        break;
    }
  }
  return RandomDistortion(partition, std::move(curves));
}

double eval_distortion(const RandomDistortion& d, std::size_t block,
                       double t) {
  if (block >= d.block_count()) {
    fail(Errc::out_of_domain,
         "block index " + std::to_string(block) + " out of range");
  }
  return d.curve(block).value(t);
}

bool curve_is_concave(const DistortionCurve& curve) {
  const auto& segments = curve.curve().segments();
  double previous_slope = std::numeric_limits<double>::infinity();
  double previous_end = curve.at_zero_plus();
  for (const auto& s : segments) {
    // No upward jump inside (0,1]: the curve must be continuous there
    // (a jump at 0 is permitted and does not enter this loop).
    if (s.left > 0.0 && std::abs(s.at(s.left) - previous_end) > kTol) {
      return false;
    }
    if (s.slope > previous_slope + kTol) return false;
    previous_slope = s.slope;
    previous_end = s.at(s.right);
  }
  return true;
}

ConcavityReport is_concave(const RandomDistortion& d) {
  ConcavityReport report;
  report.concave.reserve(d.block_count());
  report.at_zero_plus.reserve(d.block_count());
  for (std::size_t b = 0; b < d.block_count(); ++b) {
    report.concave.push_back(curve_is_concave(d.curve(b)));
    report.at_zero_plus.push_back(d.curve(b).at_zero_plus());
  }
  return report;
}

}  // namespace choquet
