#include "choquet/scenario.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace choquet {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

[[noreturn]] void schema_fail(const std::string& path,
                              const std::string& message) {
  fail(Errc::schema_error, path + ": " + message);
}

const json& require_key(const json& object, const std::string& path,
                        const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) {
    schema_fail(path, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

void reject_unknown_keys(const json& object, const std::string& path,
                         std::initializer_list<const char*> known) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) ok = true;
    }
    if (!ok) schema_fail(path, "unknown field \"" + key + "\"");
  }
}

const json& as_object(const json& value, const std::string& path) {
  if (!value.is_object()) schema_fail(path, "expected an object");
  return value;
}

const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) schema_fail(path, "expected an array");
  return value;
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) schema_fail(path, "expected a number");
  return value.get<double>();
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) schema_fail(path, "expected a string");
  return value.get<std::string>();
}

std::vector<double> as_number_array(const json& value,
                                    const std::string& path) {
  std::vector<double> out;
  for (const auto& item : as_array(value, path)) {
    out.push_back(as_number(item, path));
  }
  return out;
}

/// Curve specs shared by the distortion blocks and the capacity's psi:
/// identity / var / avar / explicit segments with knot values and right
/// limits.
SegmentCurve parse_curve_spec(const json& spec, const std::string& path) {
  as_object(spec, path);
  const std::string kind = as_string(require_key(spec, path, "kind"), path);
  if (kind == "identity") {
    reject_unknown_keys(spec, path, {"kind"});
    return SegmentCurve::identity();
  }
  if (kind == "var" || kind == "avar") {
    reject_unknown_keys(spec, path, {"kind", "alpha"});
    const double alpha =
        as_number(require_key(spec, path, "alpha"), path + ".alpha");
    const DistortionCurve curve =
        kind == "var" ? DistortionCurve::value_at_risk(alpha)
                      : DistortionCurve::average_value_at_risk(alpha);
    return curve.curve();
  }
  if (kind == "segments") {
    reject_unknown_keys(spec, path,
                        {"kind", "knots", "values-at-knot",
                         "values-right-limit"});
    const std::vector<double> knots =
        as_number_array(require_key(spec, path, "knots"), path + ".knots");
    const std::vector<double> at_knot = as_number_array(
        require_key(spec, path, "values-at-knot"), path + ".values-at-knot");
    const std::vector<double> right_limit =
        as_number_array(require_key(spec, path, "values-right-limit"),
                        path + ".values-right-limit");
    if (knots.size() < 2) {
      schema_fail(path + ".knots", "need at least the knots 0 and 1");
    }
    if (at_knot.size() != knots.size() ||
        right_limit.size() != knots.size()) {
      schema_fail(path, "knots, values-at-knot and values-right-limit must "
                        "have equal length");
    }
    std::vector<AffineSegment> segments;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
      const double t0 = knots[j];
      const double t1 = knots[j + 1];
      if (!(t1 > t0)) {
        schema_fail(path + ".knots", "knots must be strictly increasing");
      }
      const double v0 = right_limit[j];
      const double v1 = at_knot[j + 1];
      const double slope = (v1 - v0) / (t1 - t0);
      segments.push_back(AffineSegment{t0, t1, v0 - slope * t0, slope});
    }
    return SegmentCurve(at_knot.front(), std::move(segments));
  }
  schema_fail(path + ".kind", "unknown curve kind \"" + kind + "\"");
}

json curve_spec_to_json(const SegmentCurve& curve) {
  json spec;
  spec["kind"] = "segments";
  auto& knots = spec["knots"] = json::array();
  auto& at_knot = spec["values-at-knot"] = json::array();
  auto& right_limit = spec["values-right-limit"] = json::array();
  knots.push_back(0.0);
  at_knot.push_back(curve.value_at_zero());
  right_limit.push_back(curve.segments().front().at(0.0));
  for (std::size_t j = 0; j < curve.segments().size(); ++j) {
    const AffineSegment& s = curve.segments()[j];
    knots.push_back(s.right);
    at_knot.push_back(s.at(s.right));
    right_limit.push_back(j + 1 < curve.segments().size()
                              ? curve.segments()[j + 1].at(s.right)
                              : s.at(s.right));
  }
  return spec;
}

SampleSpace parse_space(const json& value) {
  as_object(value, "space");
  reject_unknown_keys(value, "space", {"atoms"});
  std::vector<std::string> atoms;
  for (const auto& atom :
       as_array(require_key(value, "space", "atoms"), "space.atoms")) {
    atoms.push_back(as_string(atom, "space.atoms"));
  }
  try {
    return SampleSpace(std::move(atoms));
  } catch (const Error& e) {
    fail(Errc::validation_error, std::string("space: ") + e.what());
  }
}

CapacityGenerator parse_capacity_spec(const json& value,
                                      const SampleSpace& space) {
  as_object(value, "capacity");
  const std::string kind =
      as_string(require_key(value, "capacity", "kind"), "capacity.kind");
  if (kind == "table") {
    reject_unknown_keys(value, "capacity", {"kind", "values"});
    const json& table =
        as_object(require_key(value, "capacity", "values"),
                  "capacity.values");
    std::vector<double> values(space.event_count(), 0.0);
    std::vector<bool> present(space.event_count(), false);
    for (const auto& [key, entry] : table.items()) {
      Event event;
      try {
        event = space.event_from_key(key);
      } catch (const Error&) {
        schema_fail("capacity.values", "unknown event \"" + key + "\"");
      }
      if (space.event_key(event) != key) {
        schema_fail("capacity.values",
                    "event key \"" + key + "\" is not canonical");
      }
      if (present[event.bits]) {
        schema_fail("capacity.values", "duplicate event \"" + key + "\"");
      }
      present[event.bits] = true;
      values[event.bits] = as_number(entry, "capacity.values." + key);
    }
    for (std::uint32_t bits = 0; bits < space.event_count(); ++bits) {
      if (!present[bits]) {
        schema_fail("capacity.values", "missing event \"" +
                                           space.event_key(Event{bits}) +
                                           "\"");
      }
    }
    return ExplicitTable{std::move(values)};
  }
  if (kind == "distorted-probability") {
    reject_unknown_keys(value, "capacity", {"kind", "weights", "psi"});
    return DistortedProbability{
        as_number_array(require_key(value, "capacity", "weights"),
                        "capacity.weights"),
        parse_curve_spec(require_key(value, "capacity", "psi"),
                         "capacity.psi")};
  }
  if (kind == "sup-of-probabilities") {
    reject_unknown_keys(value, "capacity", {"kind", "weights"});
    std::vector<std::vector<double>> measures;
    for (const auto& row :
         as_array(require_key(value, "capacity", "weights"),
                  "capacity.weights")) {
      measures.push_back(as_number_array(row, "capacity.weights"));
    }
    return SupOfProbabilities{std::move(measures)};
  }
  schema_fail("capacity.kind", "unknown capacity kind \"" + kind + "\"");
}

json capacity_spec_to_json(const CapacityGenerator& spec,
                           const SampleSpace& space) {
  json out;
  if (const auto* table = std::get_if<ExplicitTable>(&spec)) {
    out["kind"] = "table";
    json values;
    for (std::uint32_t bits = 0;
         bits < static_cast<std::uint32_t>(table->values.size()); ++bits) {
      values[space.event_key(Event{bits})] = table->values[bits];
    }
    out["values"] = std::move(values);
    return out;
  }
  if (const auto* distorted = std::get_if<DistortedProbability>(&spec)) {
    out["kind"] = "distorted-probability";
    out["weights"] = distorted->weights;
    out["psi"] = curve_spec_to_json(distorted->psi);
    return out;
  }
  const auto& sup = std::get<SupOfProbabilities>(spec);
  out["kind"] = "sup-of-probabilities";
  out["weights"] = sup.weights;
  return out;
}

BlockPartition parse_partition(const json& value, const SampleSpace& space) {
  as_object(value, "partition");
  reject_unknown_keys(value, "partition", {"blocks"});
  std::vector<Event> blocks;
  for (const auto& block :
       as_array(require_key(value, "partition", "blocks"),
                "partition.blocks")) {
    std::vector<std::string> labels;
    for (const auto& label : as_array(block, "partition.blocks")) {
      labels.push_back(as_string(label, "partition.blocks"));
    }
    try {
      blocks.push_back(space.event_from_labels(labels));
    } catch (const Error& e) {
      fail(Errc::validation_error,
           std::string("partition: ") + e.what());
    }
  }
  try {
    return BlockPartition(space, std::move(blocks));
  } catch (const Error& e) {
    fail(Errc::validation_error, std::string("partition: ") + e.what());
  }
}

}  // namespace

const Position& Scenario::position(const std::string& name) const {
  const auto it = positions.find(name);
  if (it == positions.end()) {
    fail(Errc::invalid_value, "no position named \"" + name + "\"");
  }
  return it->second;
}

const RandomDistortion& Scenario::distortion(const std::string& name) const {
  const auto it = distortions.find(name);
  if (it == distortions.end()) {
    fail(Errc::invalid_value, "no distortion named \"" + name + "\"");
  }
  return it->second;
}

Scenario parse_scenario(const std::string& text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  as_object(document, "document");
  reject_unknown_keys(document, "document",
                      {"version", "space", "capacity", "partition",
                       "positions", "distortions", "seed"});

  const std::string version =
      as_string(require_key(document, "document", "version"), "version");
  if (version != kScenarioVersion) {
    schema_fail("version", "unsupported schema \"" + version +
                               "\"; this build reads \"" +
                               std::string(kScenarioVersion) + "\"");
  }

  SampleSpace space = parse_space(require_key(document, "document", "space"));
  CapacityGenerator spec = parse_capacity_spec(
      require_key(document, "document", "capacity"), space);
  Capacity capacity = [&] {
    try {
      return capacity_from_generator(space, spec);
    } catch (const Error& e) {
      fail(Errc::validation_error, std::string("capacity: ") + e.what());
    }
  }();
  BlockPartition partition =
      parse_partition(require_key(document, "document", "partition"), space);

  std::map<std::string, Position> positions;
  if (document.contains("positions")) {
    for (const auto& [name, values] :
         as_object(document["positions"], "positions").items()) {
      try {
        positions.emplace(name,
                          Position(space, as_number_array(
                                              values, "positions." + name)));
      } catch (const Error& e) {
        if (e.code() == Errc::schema_error) throw;
        fail(Errc::validation_error,
             "position \"" + name + "\": " + e.what());
      }
    }
  }

  std::map<std::string, RandomDistortion> distortions;
  if (document.contains("distortions")) {
    for (const auto& [name, blocks] :
         as_object(document["distortions"], "distortions").items()) {
      const std::string path = "distortions." + name;
      try {
        std::vector<SegmentCurve> curves;
        for (const auto& block : as_array(blocks, path)) {
          curves.push_back(parse_curve_spec(block, path));
        }
        distortions.emplace(name,
                            build_distortion(partition, std::move(curves)));
      } catch (const Error& e) {
        if (e.code() == Errc::schema_error) throw;
        fail(Errc::validation_error,
             "distortion \"" + name + "\": " + e.what());
      }
    }
  }

  std::optional<std::uint64_t> seed;
  if (document.contains("seed")) {
    const json& s = document["seed"];
    if (!s.is_number_unsigned()) {
      schema_fail("seed", "expected an unsigned integer");
    }
    seed = s.get<std::uint64_t>();
  }

  return Scenario{std::move(space),      std::move(spec),
                  std::move(capacity),   std::move(partition),
                  std::move(positions),  std::move(distortions),
                  seed};
}

std::string serialize_scenario(const Scenario& scenario) {
  json document;
  document["version"] = kScenarioVersion;
  document["space"]["atoms"] = scenario.space.labels();
  document["capacity"] =
      capacity_spec_to_json(scenario.capacity_spec, scenario.space);
  auto& blocks = document["partition"]["blocks"] = json::array();
  for (std::size_t b = 0; b < scenario.partition.block_count(); ++b) {
    blocks.push_back(scenario.space.labels_of(scenario.partition.block(b)));
  }
  if (!scenario.positions.empty()) {
    json positions;
    for (const auto& [name, position] : scenario.positions) {
      positions[name] = position.values();
    }
    document["positions"] = std::move(positions);
  }
  if (!scenario.distortions.empty()) {
    json distortions;
    for (const auto& [name, distortion] : scenario.distortions) {
      auto curves = json::array();
      for (std::size_t b = 0; b < distortion.block_count(); ++b) {
        curves.push_back(curve_spec_to_json(distortion.curve(b).curve()));
      }
      distortions[name] = std::move(curves);
    }
    document["distortions"] = std::move(distortions);
  }
  if (scenario.seed) document["seed"] = *scenario.seed;
  return document.dump(2) + "\n";
}

std::string results_to_json(const std::vector<EvalRecord>& records) {
  json out = json::array();
  for (const auto& record : records) {
    const BlockPartition& partition = record.value.partition;
    for (std::size_t b = 0; b < record.value.block_count(); ++b) {
      json row;
      row["position"] = record.position;
      row["distortion"] = record.distortion;
      row["block"] = partition.block_label(b);
      row["value"] = record.value.at(b);
      if (record.oracle) row["oracle"] = record.oracle->at(b);
      out.push_back(std::move(row));
    }
  }
  return out.dump(2) + "\n";
}

std::string results_to_csv(const std::vector<EvalRecord>& records) {
  bool with_oracle = false;
  for (const auto& record : records) {
    if (record.oracle) with_oracle = true;
  }
  std::ostringstream out;
  out << "position,distortion,block,value";
  if (with_oracle) out << ",oracle";
  out << "\n";
  for (const auto& record : records) {
    const BlockPartition& partition = record.value.partition;
    for (std::size_t b = 0; b < record.value.block_count(); ++b) {
      out << record.position << ',' << record.distortion << ','
          << partition.block_label(b) << ','
          << format_double(record.value.at(b));
      if (with_oracle) {
        out << ',';
        if (record.oracle) out << format_double(record.oracle->at(b));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string verdict_to_json(const std::string& order,
                            const DominanceVerdict& verdict) {
  json out;
  out["order"] = order;
  out["holds"] = verdict.holds;
  if (verdict.witness) {
    out["witness"] = {{"x", verdict.witness->x},
                      {"lhs", verdict.witness->lhs},
                      {"rhs", verdict.witness->rhs}};
  }
  return out.dump(2) + "\n";
}

std::string falsifier_to_json(const std::optional<TestUtility>& witness) {
  json out;
  out["order"] = "icx-falsify";
  out["witness-found"] = witness.has_value();
  if (witness) out["witness"] = witness->describe();
  return out.dump(2) + "\n";
}

}  // namespace choquet
