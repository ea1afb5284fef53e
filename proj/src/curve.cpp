#include "choquet/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choquet/errors.hpp"

namespace choquet {

SegmentCurve::SegmentCurve(double value_at_zero,
                           std::vector<AffineSegment> segments)
    : value_at_zero_(value_at_zero), segments_(std::move(segments)) {
  if (segments_.empty()) {
    fail(Errc::gap_or_overlap, "curve needs at least one segment");
  }
  if (segments_.front().left != 0.0) {
    fail(Errc::gap_or_overlap, "first segment must start at 0");
  }
  if (segments_.back().right != 1.0) {
    fail(Errc::gap_or_overlap, "last segment must end at 1");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.left < s.right)) {
      fail(Errc::gap_or_overlap, "segment " + std::to_string(i) +
                                     " is empty or reversed");
    }
    if (!std::isfinite(s.offset) || !std::isfinite(s.slope) ||
        !std::isfinite(value_at_zero_)) {
      fail(Errc::invalid_value, "curve coefficients must be finite");
    }
    if (i > 0 && segments_[i - 1].right != s.left) {
      fail(Errc::gap_or_overlap,
           "segments must tile (0,1] exactly; break between pieces " +
               std::to_string(i - 1) + " and " + std::to_string(i));
    }
  }
}

std::size_t SegmentCurve::piece_index(double t) const {
  // First piece whose right endpoint is >= t contains t (pieces are
  // left-open right-closed).
  auto it = std::lower_bound(
      segments_.begin(), segments_.end(), t,
      [](const AffineSegment& s, double x) { return s.right < x; });
  return static_cast<std::size_t>(it - segments_.begin());
}

double SegmentCurve::value(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(Errc::out_of_domain,
         "curve argument " + std::to_string(t) + " outside [0,1]");
  }
  if (t == 0.0) return value_at_zero_;
  return segments_[piece_index(t)].at(t);
}

double SegmentCurve::right_limit(double t) const {
  if (!(t >= 0.0 && t < 1.0)) {
    fail(Errc::out_of_domain,
         "right limit needs an argument in [0,1), got " + std::to_string(t));
  }
  // The piece starting just above t is the one containing any point in
  // (t, next boundary); pieces are closed on the right, so look past t.
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double x, const AffineSegment& s) { return x < s.right; });
  return it->at(t);
}

double SegmentCurve::slope_at(double t) const {
  if (!(t > 0.0 && t <= 1.0)) {
    fail(Errc::out_of_domain,
         "slope is defined on (0,1], got " + std::to_string(t));
  }
  return segments_[piece_index(t)].slope;
}

std::vector<double> SegmentCurve::interior_knots() const {
  std::vector<double> knots;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    knots.push_back(segments_[i].right);
  }
  return knots;
}

double SegmentCurve::max_abs_value() const {
  double m = std::abs(value_at_zero_);
  for (const auto& s : segments_) {
    m = std::max(m, std::abs(s.at(s.left)));
    m = std::max(m, std::abs(s.at(s.right)));
  }
  return m;
}

SegmentCurve SegmentCurve::identity() {
  return SegmentCurve(0.0, {AffineSegment{0.0, 1.0, 0.0, 1.0}});
}

SegmentCurve SegmentCurve::constant(double value) {
  return SegmentCurve(value, {AffineSegment{0.0, 1.0, value, 0.0}});
}

bool operator==(const SegmentCurve& a, const SegmentCurve& b) {
  return a.value_at_zero_ == b.value_at_zero_ && a.segments_ == b.segments_;
}

bool find_decrease(const SegmentCurve& curve, CurveDecrease* out,
                   double tol) {
  const auto report = [&](double t, double before, double after) {
    if (out != nullptr) *out = CurveDecrease{t, before, after};
    return true;
  };
  double previous = curve.value_at_zero();
  double previous_t = 0.0;
  for (const auto& s : curve.segments()) {
    const double start = s.at(s.left);  // right limit entering the piece
    if (start < previous - tol) return report(previous_t, previous, start);
    if (s.slope < -tol) {
      const double mid = 0.5 * (s.left + s.right);
      return report(mid, s.at(mid), s.at(s.right));
    }
    previous = s.at(s.right);
    previous_t = s.right;
  }
  return false;
}

double min_value(const SegmentCurve& curve) {
  double m = curve.value_at_zero();
  for (const auto& s : curve.segments()) {
    m = std::min(m, std::min(s.at(s.left), s.at(s.right)));
  }
  return m;
}

void require_distortion_shape(const SegmentCurve& curve) {
  constexpr double tol = 1e-12;
  if (curve.value_at_zero() != 0.0) {
    fail(Errc::not_normalized, "distortion value at 0 must be exactly 0");
  }
  CurveDecrease drop;
  if (find_decrease(curve, &drop, tol)) {
    fail(Errc::not_monotone,
         "distortion decreases near t=" + std::to_string(drop.t) + " (" +
             std::to_string(drop.before) + " -> " + std::to_string(drop.after) +
             ")");
  }
  const double at_one = curve.segments().back().at(1.0);
  if (std::abs(at_one - 1.0) > tol) {
    fail(Errc::not_normalized,
         "distortion value at 1 is " + std::to_string(at_one) + ", not 1");
  }
  if (min_value(curve) < -tol || curve.max_abs_value() > 1.0 + tol) {
    fail(Errc::invalid_value, "distortion values must stay within [0,1]");
  }
}

}  // namespace choquet
