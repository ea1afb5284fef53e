#include "choquet/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace choquet {

namespace {

std::vector<double> normalise_weights(const SampleSpace& space,
                                      const std::vector<double>& weights,
                                      const char* what) {
  if (weights.size() != space.size()) {
    fail(Errc::invalid_probability,
         std::string(what) + " needs one weight per atom (" +
             std::to_string(space.size()) + "), got " +
             std::to_string(weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      fail(Errc::invalid_probability,
           std::string(what) + " weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kCapacityTol) {
    fail(Errc::invalid_probability,
         std::string(what) + " weights sum to " + std::to_string(total) +
             ", expected 1");
  }
  std::vector<double> normalised(weights);
  for (double& w : normalised) w /= total;
  return normalised;
}

double event_weight(const std::vector<double>& atom_weights, Event e) {
  double total_in = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < atom_weights.size(); ++i) {
    total += atom_weights[i];
    if (e.contains(i)) total_in += atom_weights[i];
  }
  // The total is 1 up to rounding; clamping keeps the distortion argument
  // inside its domain.
  return std::clamp(total_in / total, 0.0, 1.0);
}

}  // namespace

double Capacity::value(Event e) const {
  if (!e.subset_of(space_.full())) {
    fail(Errc::invalid_value, "event is not a subset of the sample space");
  }
  if (const auto* table = std::get_if<Table>(&impl_)) {
    return (*table->values)[e.bits];
  }
  if (const auto* distorted = std::get_if<Distorted>(&impl_)) {
    const double t = event_weight(distorted->atom_weights, e);
    // psi passed the distortion shape checks; its endpoint values are 0
    // and 1 by contract even when the stored pieces end within rounding.
    if (t == 0.0) return 0.0;
    if (t == 1.0) return 1.0;
    return distorted->psi.value(t);
  }
  const auto& sup = std::get<SupProbs>(impl_);
  double best = 0.0;
  for (const auto& weights : sup.normalised) {
    best = std::max(best, event_weight(weights, e));
  }
  return best;
}

bool Capacity::table_backed() const {
  return std::holds_alternative<Table>(impl_);
}

Capacity validate_capacity(const SampleSpace& space,
                           std::vector<double> table) {
  if (space.size() > SampleSpace::max_table_atoms) {
    fail(Errc::invalid_value,
         "explicit capacity tables are limited to " +
             std::to_string(SampleSpace::max_table_atoms) +
             " atoms; use a generator for larger spaces");
  }
  const std::uint64_t expected = space.event_count();
  if (table.size() != expected) {
    fail(Errc::missing_event,
         "capacity table has " + std::to_string(table.size()) +
             " entries, expected " + std::to_string(expected) +
             " (one per event)");
  }
  for (std::uint32_t bits = 0; bits < expected; ++bits) {
    if (!std::isfinite(table[bits])) {
      fail(Errc::invalid_value, "capacity of event \"" +
                                    space.event_key(Event{bits}) +
                                    "\" is not finite");
    }
  }
  if (std::abs(table[0]) > kCapacityTol) {
    fail(Errc::not_grounded, "c(empty) = " + std::to_string(table[0]) +
                                 ", expected 0");
  }
  const std::uint32_t full = space.full().bits;
  if (std::abs(table[full] - 1.0) > kCapacityTol) {
    fail(Errc::not_normalized,
         "c(full) = " + std::to_string(table[full]) + ", expected 1");
  }
  // Monotonicity over all covering pairs (S, S + {i}); any violation of
  // A subset B implies one along a covering chain.
  for (std::uint32_t bits = 0; bits < expected; ++bits) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      const Event sub{bits};
      if (sub.contains(i)) continue;
      const Event super = sub.with(i);
      if (table[bits] > table[super.bits] + kCapacityTol) {
        fail(Errc::not_monotone,
             "c(\"" + space.event_key(sub) + "\") = " +
                 std::to_string(table[bits]) + " exceeds c(\"" +
                 space.event_key(super) + "\") = " +
                 std::to_string(table[super.bits]));
      }
    }
  }
  auto shared =
      std::make_shared<const std::vector<double>>(std::move(table));
  return Capacity(space, Capacity::Table{std::move(shared)});
}

Capacity capacity_from_generator(const SampleSpace& space,
                                 const CapacityGenerator& gen) {
  if (const auto* table = std::get_if<ExplicitTable>(&gen)) {
    return validate_capacity(space, table->values);
  }

  Capacity::Impl impl = std::visit(
      [&](const auto& g) -> Capacity::Impl {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, DistortedProbability>) {
          require_distortion_shape(g.psi);
          return Capacity::Distorted{
              normalise_weights(space, g.weights, "distorted probability"),
              g.psi};
        } else if constexpr (std::is_same_v<G, SupOfProbabilities>) {
          if (g.weights.empty()) {
            fail(Errc::invalid_probability,
                 "sup-of-probabilities needs at least one measure");
          }
          std::vector<std::vector<double>> normalised;
          normalised.reserve(g.weights.size());
          for (const auto& w : g.weights) {
            normalised.push_back(
                normalise_weights(space, w, "sup-of-probabilities"));
          }
          return Capacity::SupProbs{std::move(normalised)};
        } else {
          fail(Errc::invalid_value, "unreachable generator kind");
        }
      },
      gen);
  Capacity lazy(space, std::move(impl));

  if (space.size() <= SampleSpace::max_table_atoms) {
    // Small spaces get the fully validated table; the generator forms are
    // monotone by construction, so this re-validation is a consistency
    // check rather than a requirement.
    std::vector<double> table(space.event_count());
    for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
      table[bits] = lazy.value(Event{bits});
    }
    return validate_capacity(space, std::move(table));
  }
  return lazy;
}

}  // namespace choquet
