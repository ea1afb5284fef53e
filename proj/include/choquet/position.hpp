#pragma once

#include <vector>

#include "choquet/sample_space.hpp"

namespace choquet {

/// A bounded measurable function on a finite sample space: one finite real
/// value per atom. Interpreted as a loss throughout.
class Position {
 public:
  Position(SampleSpace space, std::vector<double> values);

  const SampleSpace& space() const { return space_; }
  double value(std::size_t atom) const { return values_[atom]; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;
  double sup_norm() const;

  /// Event {X > x} under strict comparison of stored doubles.
  Event above(double x) const;

  static Position constant(const SampleSpace& space, double value);
  static Position indicator(const SampleSpace& space, Event e);

 private:
  SampleSpace space_;
  std::vector<double> values_;
};

Position operator+(const Position& a, const Position& b);
Position operator+(const Position& x, double a);
Position operator*(double a, const Position& x);

/// The conditioning structure: a partition of the sample space into
/// disjoint non-empty blocks covering all atoms.
class BlockPartition {
 public:
  BlockPartition(SampleSpace space, std::vector<Event> blocks);

  const SampleSpace& space() const { return space_; }
  std::size_t block_count() const { return blocks_.size(); }
  Event block(std::size_t i) const { return blocks_[i]; }
  const std::vector<Event>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t atom) const;
  std::string block_label(std::size_t i) const {
    return space_.event_key(blocks_[i]);
  }

  static BlockPartition trivial(const SampleSpace& space);

  friend bool operator==(const BlockPartition& a, const BlockPartition& b) {
    return a.space_ == b.space_ && a.blocks_ == b.blocks_;
  }

 private:
  SampleSpace space_;
  std::vector<Event> blocks_;
};

/// True iff the position is constant on every block.
bool is_block_measurable(const Position& x, const BlockPartition& g);

}  // namespace choquet
