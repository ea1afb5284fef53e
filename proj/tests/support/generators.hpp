#pragma once

// Random model builders shared by the unit and acceptance suites. All
// sampling goes through choquet::Rng so a fixed seed reproduces the same
// models everywhere.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "choquet/capacity.hpp"
#include "choquet/choquet.hpp"
#include "choquet/distortion.hpp"
#include "choquet/position.hpp"
#include "choquet/rng.hpp"

namespace testgen {

using namespace choquet;

inline SampleSpace space_of(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::string(1, static_cast<char>('a' + i % 26)) +
                     (i >= 26 ? std::to_string(i / 26) : ""));
  }
  return SampleSpace(std::move(labels));
}

/// c(A) = |A| / n, the uniform probability.
inline Capacity uniform_capacity(const SampleSpace& space) {
  std::vector<double> table(space.event_count());
  for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
    table[bits] = static_cast<double>(Event{bits}.count()) /
                  static_cast<double>(space.size());
  }
  return validate_capacity(space, std::move(table));
}

/// c(A) = (|A| / n)^2, a strictly non-additive capacity.
inline Capacity counting_squared_capacity(const SampleSpace& space) {
  std::vector<double> table(space.event_count());
  for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
    const double share = static_cast<double>(Event{bits}.count()) /
                         static_cast<double>(space.size());
    table[bits] = share * share;
  }
  return validate_capacity(space, std::move(table));
}

/// A capacity with c(target) = gamma: 1 on the full event, gamma on every
/// other superset of target, 0 elsewhere. Monotone for any gamma in [0,1].
inline Capacity pinned_capacity(const SampleSpace& space, Event target,
                                double gamma) {
  std::vector<double> table(space.event_count(), 0.0);
  for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
    if (target.subset_of(Event{bits})) table[bits] = gamma;
  }
  table[space.full().bits] = 1.0;
  return validate_capacity(space, std::move(table));
}

inline std::vector<double> random_probability_weights(const SampleSpace& space,
                                                      Rng& rng) {
  std::vector<double> weights(space.size());
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform(0.05, 1.0);
    total += w;
  }
  for (double& w : weights) w /= total;
  // Renormalise the largest weight so the sum is 1 to the last ulp.
  double sum = 0.0;
  for (double w : weights) sum += w;
  weights.back() += 1.0 - sum;
  return weights;
}

/// Strictly increasing interior knots with a minimum gap, plus 0 and 1.
inline std::vector<double> random_knot_grid(Rng& rng, std::size_t pieces) {
  std::vector<double> gaps(pieces);
  double total = 0.0;
  for (double& g : gaps) {
    g = rng.uniform(0.5, 1.5);
    total += g;
  }
  std::vector<double> knots{0.0};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pieces; ++i) {
    acc += gaps[i] / total;
    knots.push_back(acc);
  }
  knots.push_back(1.0);
  return knots;
}

/// Random monotone normalised piecewise-affine curve with jumps: a valid
/// distortion curve with up to max_pieces pieces.
inline SegmentCurve random_monotone_curve(Rng& rng,
                                          std::size_t max_pieces = 5) {
  const std::size_t pieces = 1 + rng.index(max_pieces);
  const std::vector<double> knots = random_knot_grid(rng, pieces);
  std::vector<double> ladder = rng.sorted_uniform(2 * pieces, 0.0, 1.0);
  ladder.back() = 1.0;
  std::vector<AffineSegment> segments;
  for (std::size_t j = 0; j < pieces; ++j) {
    const double t0 = knots[j];
    const double t1 = knots[j + 1];
    const double v0 = ladder[2 * j];      // right limit entering the piece
    const double v1 = ladder[2 * j + 1];  // value at the closing knot
    const double slope = (v1 - v0) / (t1 - t0);
    segments.push_back(AffineSegment{t0, t1, v0 - slope * t0, slope});
  }
  return SegmentCurve(0.0, std::move(segments));
}

/// Random concave distortion curve: continuous on (0,1], non-increasing
/// slopes, optional jump at 0. Slopes stay below ~30.
inline SegmentCurve random_concave_curve(Rng& rng,
                                         std::size_t max_pieces = 4) {
  const double jump = rng.chance(0.5) ? 0.0 : rng.uniform(0.0, 0.4);
  const std::size_t pieces = 1 + rng.index(max_pieces);
  const std::vector<double> knots = random_knot_grid(rng, pieces);
  std::vector<double> slopes = rng.sorted_uniform(pieces, 0.1, 3.0);
  std::reverse(slopes.begin(), slopes.end());  // non-increasing
  double gain = 0.0;
  for (std::size_t j = 0; j < pieces; ++j) {
    gain += slopes[j] * (knots[j + 1] - knots[j]);
  }
  const double scale = (1.0 - jump) / gain;
  std::vector<AffineSegment> segments;
  double value = jump;
  for (std::size_t j = 0; j < pieces; ++j) {
    const double t0 = knots[j];
    const double t1 = knots[j + 1];
    const double slope = slopes[j] * scale;
    segments.push_back(AffineSegment{t0, t1, value - slope * t0, slope});
    value += slope * (t1 - t0);
  }
  return SegmentCurve(0.0, std::move(segments));
}

inline BlockPartition random_partition(const SampleSpace& space, Rng& rng,
                                       std::size_t max_blocks = 3) {
  const std::size_t blocks =
      1 + rng.index(std::min(max_blocks, space.size()));
  const std::vector<std::size_t> perm = rng.permutation(space.size());
  std::vector<Event> events(blocks);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    // First `blocks` atoms seed the blocks so none is empty.
    const std::size_t b = i < blocks ? i : rng.index(blocks);
    events[b] = events[b].with(perm[i]);
  }
  return BlockPartition(space, std::move(events));
}

inline RandomDistortion random_distortion(const BlockPartition& partition,
                                          Rng& rng,
                                          std::size_t max_pieces = 5) {
  std::vector<SegmentCurve> curves;
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    curves.push_back(random_monotone_curve(rng, max_pieces));
  }
  return build_distortion(partition, std::move(curves));
}

inline RandomDistortion random_concave_distortion(
    const BlockPartition& partition, Rng& rng, std::size_t max_pieces = 4) {
  std::vector<SegmentCurve> curves;
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    curves.push_back(random_concave_curve(rng, max_pieces));
  }
  return build_distortion(partition, std::move(curves));
}

/// Random capacity, mixing three constructions: monotone tables raised
/// from subsets, distorted probabilities, sups of probabilities. Always
/// passes validation.
inline Capacity random_capacity(const SampleSpace& space, Rng& rng) {
  switch (rng.index(3)) {
    case 0: {
      std::vector<double> table(space.event_count(), 0.0);
      // Fill in popcount order so every subset is already assigned.
      std::vector<std::uint32_t> masks;
      for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
        masks.push_back(bits);
      }
      std::sort(masks.begin(), masks.end(),
                [](std::uint32_t a, std::uint32_t b) {
                  const auto ca = Event{a}.count(), cb = Event{b}.count();
                  return ca != cb ? ca < cb : a < b;
                });
      for (std::uint32_t bits : masks) {
        if (bits == 0) continue;
        double floor_value = 0.0;
        for (std::size_t i = 0; i < space.size(); ++i) {
          if (!Event{bits}.contains(i)) continue;
          const std::uint32_t sub = bits & ~(std::uint32_t{1} << i);
          floor_value = std::max(floor_value, table[sub]);
        }
        const double lambda = std::pow(rng.uniform(), 2.0 + space.size() / 2.0);
        table[bits] = floor_value + lambda * (1.0 - floor_value);
      }
      table[space.full().bits] = 1.0;
      return validate_capacity(space, std::move(table));
    }
    case 1: {
      return capacity_from_generator(
          space, DistortedProbability{random_probability_weights(space, rng),
                                      random_monotone_curve(rng)});
    }
    default: {
      std::vector<std::vector<double>> measures;
      const std::size_t count = 1 + rng.index(3);
      for (std::size_t j = 0; j < count; ++j) {
        measures.push_back(random_probability_weights(space, rng));
      }
      return capacity_from_generator(space, SupOfProbabilities{measures});
    }
  }
}

/// Values on a coarse grid so ties across positions happen regularly.
inline double random_level(Rng& rng, double lo, double hi) {
  if (rng.chance(0.4)) {
    return lo + (hi - lo) * (static_cast<double>(rng.index(9)) / 8.0);
  }
  return rng.uniform(lo, hi);
}

inline Position random_position(const SampleSpace& space, Rng& rng,
                                double lo = -2.0, double hi = 2.0) {
  std::vector<double> values(space.size());
  for (double& v : values) v = random_level(rng, lo, hi);
  return Position(space, std::move(values));
}

/// Comonotonic pair built from a shared ranking and two non-decreasing
/// value ladders; comonotone by construction.
inline std::pair<Position, Position> random_comonotonic_pair(
    const SampleSpace& space, Rng& rng, double lo = -2.0, double hi = 2.0) {
  const std::vector<std::size_t> perm = rng.permutation(space.size());
  std::vector<double> xs(space.size()), ys(space.size());
  std::vector<double> ladder_x(space.size()), ladder_y(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    ladder_x[i] = random_level(rng, lo, hi);
    ladder_y[i] = random_level(rng, lo, hi);
  }
  std::sort(ladder_x.begin(), ladder_x.end());
  std::sort(ladder_y.begin(), ladder_y.end());
  for (std::size_t i = 0; i < space.size(); ++i) {
    xs[perm[i]] = ladder_x[i];
    ys[perm[i]] = ladder_y[i];
  }
  return {Position(space, std::move(xs)), Position(space, std::move(ys))};
}

}  // namespace testgen
