#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "choquet/curve.hpp"
#include "choquet/sample_space.hpp"

namespace choquet {

/// Tolerance for the groundedness / normalisation / monotonicity checks.
inline constexpr double kCapacityTol = 1e-12;

/// Generator specs for capacities.
///
/// ExplicitTable lists one value per event, indexed by the event bitmask.
/// DistortedProbability composes a one-dimensional distortion with an
/// additive probability: c(A) = psi(sum of atom weights in A). Weights are
/// renormalised by their total so that c(full) evaluates psi at exactly 1.
/// SupOfProbabilities takes the pointwise maximum of finitely many additive
/// probabilities, which is always a capacity.
struct ExplicitTable {
  std::vector<double> values;
};
struct DistortedProbability {
  std::vector<double> weights;
  SegmentCurve psi = SegmentCurve::identity();
};
struct SupOfProbabilities {
  std::vector<std::vector<double>> weights;
};
using CapacityGenerator =
    std::variant<ExplicitTable, DistortedProbability, SupOfProbabilities>;

/// A grounded, normalised, monotone set function on all events of a finite
/// sample space. Immutable after construction; values always lie in [0,1]
/// up to kCapacityTol.
///
/// Spaces with at most SampleSpace::max_table_atoms atoms are backed by a
/// fully validated event table. Larger spaces are only reachable through
/// generators whose form guarantees the capacity axioms, and evaluate
/// lazily.
class Capacity {
 public:
  const SampleSpace& space() const { return space_; }

  double value(Event e) const;
  double value_of_bits(std::uint32_t bits) const { return value(Event{bits}); }

  bool table_backed() const;

  friend Capacity validate_capacity(const SampleSpace& space,
                                    std::vector<double> table);
  friend Capacity capacity_from_generator(const SampleSpace& space,
                                          const CapacityGenerator& gen);

 private:
  struct Table {
    std::shared_ptr<const std::vector<double>> values;
  };
  struct Distorted {
    std::vector<double> atom_weights;  // normalised, per atom
    SegmentCurve psi;
  };
  struct SupProbs {
    std::vector<std::vector<double>> normalised;  // per measure, per atom
  };
  using Impl = std::variant<Table, Distorted, SupProbs>;

  Capacity(SampleSpace space, Impl impl)
      : space_(std::move(space)), impl_(std::move(impl)) {}

  SampleSpace space_;
  Impl impl_;
};

/// Checks groundedness (c(empty)=0), normalisation (c(full)=1) and
/// monotonicity over all covering pairs (S, S+{i}); returns the validated
/// capacity or throws NotGrounded / NotNormalized / NotMonotone (with a
/// witness pair in the message) / MissingEvent.
Capacity validate_capacity(const SampleSpace& space,
                           std::vector<double> table);

/// Expands the generator to a full table and validates it when the space is
/// small enough; otherwise returns a lazily evaluated capacity whose form is
/// monotone by construction. Probability weights must be non-negative and
/// sum to 1 within kCapacityTol.
Capacity capacity_from_generator(const SampleSpace& space,
                                 const CapacityGenerator& gen);

}  // namespace choquet
