#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "choquet/capacity.hpp"
#include "choquet/choquet.hpp"
#include "choquet/distortion.hpp"
#include "choquet/position.hpp"
#include "choquet/stochastic_order.hpp"

namespace choquet {

/// Current on-disk schema. Files carrying any other version are rejected.
inline constexpr const char* kScenarioVersion = "choquet-risk/1";

/// A fully validated scenario: sample space, capacity, conditioning
/// partition, named positions and named random distortions. The capacity
/// keeps its generator spec so files round-trip structurally.
struct Scenario {
  SampleSpace space;
  CapacityGenerator capacity_spec;
  Capacity capacity;
  BlockPartition partition;
  std::map<std::string, Position> positions;
  std::map<std::string, RandomDistortion> distortions;
  std::optional<std::uint64_t> seed;

  const Position& position(const std::string& name) const;
  const RandomDistortion& distortion(const std::string& name) const;
};

/// Parses and validates a scenario document. Throws SyntaxError for
/// malformed JSON, SchemaError for missing/extra/ill-typed fields (naming
/// the offending path), and ValidationError wrapping the module error for
/// semantically broken components (naming the offending element).
Scenario parse_scenario(const std::string& text);

/// Deterministic serialization: sorted keys, numbers in shortest exact
/// round-trip form. serialize -> parse -> serialize is byte-stable.
std::string serialize_scenario(const Scenario& scenario);

/// One evaluation row: per-block values of a position under a distortion,
/// with an optional oracle recomputation.
struct EvalRecord {
  std::string position;
  std::string distortion;
  ConditionalValue value;
  std::optional<ConditionalValue> oracle;
};

/// Deterministic JSON array, sorted keys, byte-identical across runs.
std::string results_to_json(const std::vector<EvalRecord>& records);
/// CSV with one row per block: position,distortion,block,value[,oracle].
/// Numbers carry 17 significant digits. Header-only when empty.
std::string results_to_csv(const std::vector<EvalRecord>& records);

std::string verdict_to_json(const std::string& order,
                            const DominanceVerdict& verdict);
std::string falsifier_to_json(const std::optional<TestUtility>& witness);

}  // namespace choquet
