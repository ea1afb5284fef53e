#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "choquet/capacity.hpp"
#include "choquet/distortion.hpp"
#include "choquet/position.hpp"

namespace choquet {

/// A block-measurable result: one real value per block of a partition.
struct ConditionalValue {
  BlockPartition partition;
  std::vector<double> values;

  double at(std::size_t block) const { return values[block]; }
  std::size_t block_count() const { return values.size(); }
  Position to_position() const;
};

/// Randomly distorted Choquet integral of a position, one value per block.
///
/// Evaluated exactly through the layer decomposition: with the distinct
/// values of X sorted descending w_1 > ... > w_m and U_i = {X >= w_i},
///   result(b) = min(X) + sum_i (w_i - w_{i+1}) * phi_b(c(U_i)),
/// the last difference being taken against min(X). The layer sum equals the
/// defining survival-function integral for every bounded X because
/// translation by min(X) shifts the integral by exactly min(X).
ConditionalValue rd_choquet(const Position& x, const Capacity& c,
                            const RandomDistortion& d);

/// Midpoint-rule evaluation of the two defining integrals, truncated where
/// the integrands vanish. Converges at rate O(grid_step); used as an
/// independent check of the exact layer formula, never in production paths.
ConditionalValue rd_choquet_oracle(const Position& x, const Capacity& c,
                                   const RandomDistortion& d,
                                   double grid_step);

/// Quantile-side evaluation for concave distortions:
///   result(b) = phi_b(0+) * r_X^+(1) + integral_0^1 slope_b(1-t) r_X^+(t) dt
/// with the integral computed as an exact finite sum over the common
/// refinement of the quantile plateaus and the curve knots. Throws
/// NotConcave if any block's curve is not concave.
ConditionalValue rd_choquet_concave_dual(const Position& x, const Capacity& c,
                                         const RandomDistortion& d);

/// Classical Choquet integral (identity distortion, no conditioning).
double choquet_expectation(const Position& x, const Capacity& c);

struct ComonotonicityCheck {
  bool comonotonic = true;
  /// Pair of atom indices whose increments have opposite signs.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Pairwise increment test over all atom pairs, O(n^2).
ComonotonicityCheck are_comonotonic(const Position& x, const Position& y);

/// Common ordered step representation of a comonotonic pair: disjoint
/// events covering the space with both value lists non-increasing.
struct ComonotonicForm {
  SampleSpace space;
  std::vector<Event> events;
  std::vector<double> xs;
  std::vector<double> ys;

  Position first() const;
  Position second() const;
};

/// Builds the common representation of two non-negative comonotonic
/// positions by sorting atoms on (X, Y) lexicographically, descending, and
/// merging equal value pairs. Throws NotComonotonic / NegativeInput.
ComonotonicForm comonotonic_decomposition(const Position& x,
                                          const Position& y);

}  // namespace choquet
