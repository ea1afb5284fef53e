#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "choquet/errors.hpp"

namespace choquet {

/// A measurable event: a subset of the atom indices of a finite sample
/// space, stored as a bitmask. Bit i set means atom i is a member.
struct Event {
  std::uint32_t bits = 0;

  constexpr bool contains(std::size_t atom) const {
    return (bits >> atom) & 1u;
  }
  constexpr std::size_t count() const {
    return static_cast<std::size_t>(std::popcount(bits));
  }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool subset_of(Event other) const {
    return (bits & ~other.bits) == 0;
  }
  constexpr Event with(std::size_t atom) const {
    return Event{bits | (std::uint32_t{1} << atom)};
  }
  constexpr Event unite(Event other) const { return Event{bits | other.bits}; }
  constexpr Event intersect(Event other) const {
    return Event{bits & other.bits};
  }

  friend constexpr bool operator==(Event a, Event b) = default;
};

/// Finite sample space: an ordered list of uniquely labelled atoms.
/// Events are subsets of {0, ..., size()-1}; the space holds at most 24
/// atoms so every event fits a 32-bit mask.
class SampleSpace {
 public:
  static constexpr std::size_t max_atoms = 24;
  /// Atoms with an explicit full event table are limited to this size;
  /// larger spaces must use generator-backed capacities.
  static constexpr std::size_t max_table_atoms = 16;

  explicit SampleSpace(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::string& label(std::size_t atom) const { return atoms_[atom]; }
  const std::vector<std::string>& labels() const { return atoms_; }

  /// Index of a labelled atom; throws InvalidValue for unknown labels.
  std::size_t index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;

  Event full() const {
    return Event{(std::uint32_t{1} << atoms_.size()) - 1u};
  }
  /// Number of events, 2^size(). Only meaningful for table-backed use.
  std::uint64_t event_count() const { return std::uint64_t{1} << atoms_.size(); }

  Event complement(Event e) const { return Event{~e.bits & full().bits}; }

  Event event_from_labels(const std::vector<std::string>& labels) const;
  /// Member labels of an event, sorted lexicographically.
  std::vector<std::string> labels_of(Event e) const;
  /// Canonical key: sorted member labels joined by "|"; "" for the empty
  /// event. Used for serialized capacity tables and diagnostics.
  std::string event_key(Event e) const;
  Event event_from_key(const std::string& key) const;

  friend bool operator==(const SampleSpace& a, const SampleSpace& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  std::vector<std::string> atoms_;
};

/// Throws SpaceMismatch unless the two spaces have identical atom lists.
void require_same_space(const SampleSpace& a, const SampleSpace& b,
                        const char* context);

}  // namespace choquet
