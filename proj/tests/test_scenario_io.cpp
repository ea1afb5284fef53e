#include <functional>

#include "choquet/scenario.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace choquet;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::invalid_value;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({
  "version": "choquet-risk/1",
  "space": {"atoms": ["a", "b"]},
  "capacity": {"kind": "table",
               "values": {"": 0.0, "a": 0.5, "b": 0.5, "a|b": 1.0}},
  "partition": {"blocks": [["a", "b"]]},
  "positions": {"X": [1.0, 0.0]}
})";

const char* kRich = R"({
  "version": "choquet-risk/1",
  "space": {"atoms": ["a", "b", "c", "d"]},
  "capacity": {"kind": "distorted-probability",
               "weights": [0.25, 0.25, 0.25, 0.25],
               "psi": {"kind": "identity"}},
  "partition": {"blocks": [["a", "b"], ["c", "d"]]},
  "positions": {"X": [3.0, 1.0, 1.0, 0.0], "unit": [1.0, 1.0, 1.0, 1.0]},
  "distortions": {
    "varPair": [{"kind": "var", "alpha": 0.3}, {"kind": "var", "alpha": 0.6}],
    "mix": [{"kind": "avar", "alpha": 0.5},
            {"kind": "segments", "knots": [0.0, 0.5, 1.0],
             "values-at-knot": [0.0, 0.25, 1.0],
             "values-right-limit": [0.0, 0.5, 1.0]}]
  },
  "seed": 42
})";

}  // namespace

TEST_CASE("minimal scenario parses") {
  const Scenario scenario = parse_scenario(kMinimal);
  CHECK(scenario.space.size() == 2);
  CHECK(scenario.capacity.value(scenario.space.event_from_key("a")) == 0.5);
  CHECK(scenario.partition.block_count() == 1);
  CHECK(scenario.positions.size() == 1);
  CHECK(scenario.position("X").value(0) == 1.0);
  CHECK_FALSE(scenario.seed.has_value());
}

TEST_CASE("rich scenario parses with distortions and seed") {
  const Scenario scenario = parse_scenario(kRich);
  CHECK(scenario.distortions.size() == 2);
  CHECK(scenario.seed == 42);
  const RandomDistortion& mix = scenario.distortion("mix");
  CHECK(eval_distortion(mix, 0, 0.25) == doctest::Approx(0.5));
  // Segment block: value 0.25 at the knot, right limit 0.5 just above.
  CHECK(eval_distortion(mix, 1, 0.5) == doctest::Approx(0.25));
  CHECK(eval_distortion(mix, 1, 0.500001) == doctest::Approx(0.500001)
                                                 .epsilon(1e-4));
  const RandomDistortion& pair = scenario.distortion("varPair");
  CHECK(eval_distortion(pair, 0, 0.7) == 0.0);
  CHECK(eval_distortion(pair, 1, 0.41) == 1.0);
}

TEST_CASE("parse errors carry the offending path") {
  SUBCASE("syntax") {
    CHECK(code_of([] { parse_scenario("{not json"); }) == Errc::syntax_error);
  }

  SUBCASE("missing event in the table names it") {
    const char* text = R"({
      "version": "choquet-risk/1",
      "space": {"atoms": ["a", "b"]},
      "capacity": {"kind": "table",
                   "values": {"": 0.0, "a": 0.5, "b": 0.5}},
      "partition": {"blocks": [["a", "b"]]}
    })";
    CHECK(code_of([&] { parse_scenario(text); }) == Errc::schema_error);
    CHECK(message_of([&] { parse_scenario(text); }).find("a|b") !=
          std::string::npos);
  }

  SUBCASE("invalid var level becomes a ValidationError naming the element") {
    const char* text = R"({
      "version": "choquet-risk/1",
      "space": {"atoms": ["a", "b"]},
      "capacity": {"kind": "table",
                   "values": {"": 0.0, "a": 0.5, "b": 0.5, "a|b": 1.0}},
      "partition": {"blocks": [["a", "b"]]},
      "distortions": {"bad": [{"kind": "var", "alpha": 1.5}]}
    })";
    const std::string message = message_of([&] { parse_scenario(text); });
    CHECK(code_of([&] { parse_scenario(text); }) == Errc::validation_error);
    CHECK(message.find("bad") != std::string::npos);
    CHECK(message.find("InvalidLevel") != std::string::npos);
  }

  SUBCASE("unsupported version is rejected by name") {
    const std::string message = message_of(
        [] { parse_scenario(R"({"version": "choquet-risk/9"})"); });
    CHECK(message.find("choquet-risk/9") != std::string::npos);
  }

  SUBCASE("unknown top-level fields are rejected") {
    const char* text = R"({
      "version": "choquet-risk/1",
      "space": {"atoms": ["a"]},
      "capacity": {"kind": "table", "values": {"": 0.0, "a": 1.0}},
      "partition": {"blocks": [["a"]]},
      "bogus": 1
    })";
    CHECK(code_of([&] { parse_scenario(text); }) == Errc::schema_error);
  }

  SUBCASE("wrong-length positions name the element") {
    const char* text = R"({
      "version": "choquet-risk/1",
      "space": {"atoms": ["a", "b"]},
      "capacity": {"kind": "table",
                   "values": {"": 0.0, "a": 0.5, "b": 0.5, "a|b": 1.0}},
      "partition": {"blocks": [["a", "b"]]},
      "positions": {"shorty": [1.0]}
    })";
    CHECK(code_of([&] { parse_scenario(text); }) == Errc::validation_error);
    CHECK(message_of([&] { parse_scenario(text); }).find("shorty") !=
          std::string::npos);
  }

  SUBCASE("non-monotone table becomes a ValidationError") {
    const char* text = R"({
      "version": "choquet-risk/1",
      "space": {"atoms": ["a", "b", "c"]},
      "capacity": {"kind": "table",
                   "values": {"": 0.0, "a": 0.5, "b": 0.0, "c": 0.0,
                              "a|b": 0.4, "a|c": 0.5, "b|c": 0.4,
                              "a|b|c": 1.0}},
      "partition": {"blocks": [["a", "b", "c"]]}
    })";
    const std::string message = message_of([&] { parse_scenario(text); });
    CHECK(code_of([&] { parse_scenario(text); }) == Errc::validation_error);
    CHECK(message.find("NotMonotone") != std::string::npos);
  }
}

TEST_CASE("serialize -> parse -> serialize is byte-stable") {
  for (const char* fixture : {kMinimal, kRich}) {
    const Scenario first = parse_scenario(fixture);
    const std::string once = serialize_scenario(first);
    const Scenario second = parse_scenario(once);
    const std::string twice = serialize_scenario(second);
    CHECK(once == twice);

    // Semantic agreement of the parsed models.
    CHECK(first.space == second.space);
    CHECK(first.partition == second.partition);
    for (std::uint32_t bits = 0; bits < first.space.event_count(); ++bits) {
      CHECK(first.capacity.value(Event{bits}) ==
            second.capacity.value(Event{bits}));
    }
    for (const auto& [name, position] : first.positions) {
      CHECK(position.values() == second.position(name).values());
    }
  }
}

TEST_CASE("result records serialize deterministically") {
  const Scenario scenario = parse_scenario(kRich);
  const ConditionalValue value{scenario.partition, {0.0, 1.0}};

  SUBCASE("csv has one row per block") {
    const std::string csv =
        results_to_csv({EvalRecord{"X", "varPair", value, std::nullopt}});
    CHECK(csv ==
          "position,distortion,block,value\n"
          "X,varPair,a|b,0\n"
          "X,varPair,c|d,1\n");
  }

  SUBCASE("oracle column appears when present") {
    const ConditionalValue oracle{scenario.partition, {0.0001, 0.9999}};
    const std::string csv =
        results_to_csv({EvalRecord{"X", "varPair", value, oracle}});
    CHECK(csv.find(",oracle\n") != std::string::npos);
    CHECK(csv.find("0.99990000000000001") != std::string::npos);
  }

  SUBCASE("empty inputs give an empty array and a bare header") {
    CHECK(results_to_json({}) == "[]\n");
    CHECK(results_to_csv({}) == "position,distortion,block,value\n");
  }

  SUBCASE("verdict json includes the witness triple") {
    DominanceVerdict verdict{false, DominanceWitness{1.0, 0.75, 1.0}};
    const std::string text = verdict_to_json("st", verdict);
    CHECK(text.find("\"witness\"") != std::string::npos);
    CHECK(text.find("\"x\"") != std::string::npos);
    CHECK(text.find("\"lhs\"") != std::string::npos);
    CHECK(text.find("\"rhs\"") != std::string::npos);
    CHECK(verdict_to_json("st", DominanceVerdict{true, std::nullopt})
              .find("witness") == std::string::npos);
  }

  SUBCASE("identical inputs produce identical bytes") {
    const std::string a =
        results_to_json({EvalRecord{"X", "mix", value, std::nullopt}});
    const std::string b =
        results_to_json({EvalRecord{"X", "mix", value, std::nullopt}});
    CHECK(a == b);
  }
}
