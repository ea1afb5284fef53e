#include "choquet/position.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace choquet {

Position::Position(SampleSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    fail(Errc::invalid_value,
         "position needs one value per atom (" +
             std::to_string(space_.size()) + "), got " +
             std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(Errc::invalid_value, "position values must be finite");
    }
  }
}

double Position::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Position::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double Position::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Event Position::above(double x) const {
  Event e;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > x) e = e.with(i);
  }
  return e;
}

Position Position::constant(const SampleSpace& space, double value) {
  return Position(space, std::vector<double>(space.size(), value));
}

Position Position::indicator(const SampleSpace& space, Event e) {
  std::vector<double> values(space.size(), 0.0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (e.contains(i)) values[i] = 1.0;
  }
  return Position(space, std::move(values));
}

Position operator+(const Position& a, const Position& b) {
  require_same_space(a.space(), b.space(), "position sum");
  std::vector<double> values(a.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = a.value(i) + b.value(i);
  }
  return Position(a.space(), std::move(values));
}

Position operator+(const Position& x, double a) {
  std::vector<double> values(x.values());
  for (double& v : values) v += a;
  return Position(x.space(), std::move(values));
}

Position operator*(double a, const Position& x) {
  std::vector<double> values(x.values());
  for (double& v : values) v *= a;
  return Position(x.space(), std::move(values));
}

BlockPartition::BlockPartition(SampleSpace space, std::vector<Event> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  if (blocks_.empty()) {
    fail(Errc::invalid_value, "partition needs at least one block");
  }
  Event seen;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Event b = blocks_[i];
    if (b.empty()) {
      fail(Errc::invalid_value,
           "partition block " + std::to_string(i) + " is empty");
    }
    if (!b.subset_of(space_.full())) {
      fail(Errc::invalid_value,
           "partition block " + std::to_string(i) +
               " is not a subset of the sample space");
    }
    if (!seen.intersect(b).empty()) {
      fail(Errc::invalid_value,
           "partition blocks overlap at block " + std::to_string(i));
    }
    seen = seen.unite(b);
  }
  if (!(seen == space_.full())) {
    fail(Errc::invalid_value, "partition blocks do not cover the space");
  }
}

std::size_t BlockPartition::block_of(std::size_t atom) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].contains(atom)) return i;
  }
  fail(Errc::invalid_value, "atom outside all partition blocks");
}

BlockPartition BlockPartition::trivial(const SampleSpace& space) {
  return BlockPartition(space, {space.full()});
}

bool is_block_measurable(const Position& x, const BlockPartition& g) {
  require_same_space(x.space(), g.space(), "block measurability");
  for (const Event block : g.blocks()) {
    double reference = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!block.contains(i)) continue;
      if (first) {
        reference = x.value(i);
        first = false;
      } else if (x.value(i) != reference) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace choquet
