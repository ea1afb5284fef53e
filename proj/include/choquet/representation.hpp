#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "choquet/capacity.hpp"
#include "choquet/choquet.hpp"
#include "choquet/distortion.hpp"
#include "choquet/position.hpp"

namespace choquet {

/// Evaluation contract of a conditional risk measure on a fixed space and
/// conditioning partition: positions in, one value per block out.
/// Implementations must be deterministic.
class ConditionalRiskMeasure {
 public:
  virtual ~ConditionalRiskMeasure() = default;
  virtual const SampleSpace& space() const = 0;
  virtual const BlockPartition& partition() const = 0;
  virtual ConditionalValue evaluate(const Position& x) const = 0;
};

/// The reference implementation: a randomly distorted Choquet integral.
class DistortionRiskMeasure final : public ConditionalRiskMeasure {
 public:
  DistortionRiskMeasure(Capacity capacity, RandomDistortion distortion)
      : capacity_(std::move(capacity)), distortion_(std::move(distortion)) {}

  const SampleSpace& space() const override { return capacity_.space(); }
  const BlockPartition& partition() const override {
    return distortion_.partition();
  }
  ConditionalValue evaluate(const Position& x) const override;

  const Capacity& capacity() const { return capacity_; }
  const RandomDistortion& distortion() const { return distortion_; }

 private:
  Capacity capacity_;
  RandomDistortion distortion_;
};

/// Out-of-process risk measure. Each evaluation launches `command` through
/// the shell, writes one JSON request line to its stdin:
///   {"atoms":[...],"blocks":[[atom indices]...],"position":[...]}
/// and expects one JSON reply line on stdout: {"values":[one per block]}.
class PluginRiskMeasure final : public ConditionalRiskMeasure {
 public:
  PluginRiskMeasure(SampleSpace space, BlockPartition partition,
                    std::string command);

  const SampleSpace& space() const override { return space_; }
  const BlockPartition& partition() const override { return partition_; }
  ConditionalValue evaluate(const Position& x) const override;

 private:
  SampleSpace space_;
  BlockPartition partition_;
  std::string command_;
};

/// Nested events built from an atom ranking: level k is the top-k atoms.
/// The capacity values along the chain form the achievable grid on which
/// an induced distortion is identified.
struct NestedChain {
  SampleSpace space;
  std::vector<std::size_t> ranking;  // permutation of atom indices
  std::vector<Event> events;         // size n+1, from empty to full
  std::vector<double> grid;          // c(events[k]), non-decreasing
};

NestedChain build_nested_chain(const Capacity& c,
                               const std::vector<std::size_t>& ranking);
NestedChain build_nested_chain(const Capacity& c,
                               const std::vector<std::string>& ranking);

/// Distortion values recovered on the achievable grid: value[block][k]
/// = rho(indicator of chain event k). Chain levels sharing a grid value
/// must agree; extraction checks this.
struct GridDistortion {
  std::vector<double> grid;
  std::vector<std::vector<double>> values;  // [block][level]
};

/// Evaluates rho on every chain indicator. Throws PartitionMismatch when
/// rho conditions on a different partition, and WellDefinednessViolation
/// when two levels with equal grid value disagree by more than 1e-9 (rho
/// is then not distribution invariant and induces no distortion).
GridDistortion extract_distortion(const ConditionalRiskMeasure& rho,
                                  const NestedChain& chain,
                                  const BlockPartition& partition);

/// One sampled axiom check; sampling can certify failure only.
struct AxiomCheck {
  std::string name;
  int trials = 0;
  int violations = 0;
  std::string counterexample;  // first violation, human readable

  bool passed() const { return violations == 0; }
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool all_passed() const {
    for (const auto& check : checks) {
      if (!check.passed()) return false;
    }
    return true;
  }
  const AxiomCheck& check(const std::string& name) const;
};

/// Samples positions and reports violations of: comonotonic additivity,
/// translation invariance, positive homogeneity, consistency with
/// first-order dominance, normalisation and groundedness.
AxiomReport check_axioms(const ConditionalRiskMeasure& rho, const Capacity& c,
                         int trials, std::uint64_t seed);

/// How grid values extend to a full curve between grid points, where the
/// induced distortion is genuinely unidentified.
enum class GridLift {
  linear,  // affine interpolation between grid points
  step,    // constant on each piece at the value of its upper grid point
};

RandomDistortion lift_grid_distortion(const GridDistortion& grid,
                                      const BlockPartition& partition,
                                      GridLift lift);

struct RepresentationReport {
  GridDistortion grid;
  /// Worst per-block gap |rho(X) - distorted integral(X)| over sampled
  /// chain-adapted positions (constant on chain rings, ordered with the
  /// ranking); zero when rho is itself a distorted integral.
  double max_error_adapted = 0.0;
  /// The same gap over unconstrained positions; generally nonzero because
  /// off-grid survival values hit the unidentified part of the lift.
  double max_error_arbitrary = 0.0;
  /// Discrete midpoint concavity on the grid: pairs (s,t) whose midpoint is
  /// itself a grid value must satisfy v(s)/2 + v(t)/2 <= v(midpoint).
  int concavity_triples = 0;
  int concavity_violations = 0;

  bool grid_concave() const { return concavity_violations == 0; }
};

RepresentationReport verify_representation(const ConditionalRiskMeasure& rho,
                                           const Capacity& c,
                                           const NestedChain& chain,
                                           const BlockPartition& partition,
                                           int trials, std::uint64_t seed,
                                           GridLift lift = GridLift::linear);

}  // namespace choquet
