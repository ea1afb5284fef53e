#include <cmath>
#include <functional>

#include "choquet/distortion.hpp"
#include "choquet/rng.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace choquet;
using testgen::space_of;

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

}  // namespace

TEST_CASE("built-in curves evaluate exactly") {
  const SampleSpace space = space_of(2);
  const BlockPartition trivial = BlockPartition::trivial(space);
  const RandomDistortion var =
      builtin_distortion(trivial, {BuiltinSpec::var(0.3)});
  const RandomDistortion avar =
      builtin_distortion(trivial, {BuiltinSpec::avar(0.5)});
  const RandomDistortion id =
      builtin_distortion(trivial, {BuiltinSpec::identity()});

  // Indicator of (0.7, 1]: closed on the left of the jump.
  CHECK(eval_distortion(var, 0, 0.7) == 0.0);
  CHECK(eval_distortion(var, 0, 0.71) == 1.0);
  CHECK(eval_distortion(var, 0, 1.0) == 1.0);
  CHECK(eval_distortion(var, 0, 0.0) == 0.0);

  CHECK(eval_distortion(avar, 0, 0.3) == doctest::Approx(0.6));
  CHECK(eval_distortion(avar, 0, 0.5) == doctest::Approx(1.0));
  CHECK(eval_distortion(avar, 0, 0.8) == 1.0);

  CHECK(eval_distortion(id, 0, 0.42) == 0.42);

  // The boundary t = 1 - alpha belongs to the linear piece.
  const RandomDistortion avar25 =
      builtin_distortion(trivial, {BuiltinSpec::avar(0.25)});
  CHECK(eval_distortion(avar25, 0, 0.75) == doctest::Approx(1.0));

  CHECK(code_of([&] { eval_distortion(var, 0, 1.5); }) == Errc::out_of_domain);
  CHECK(code_of([&] { eval_distortion(var, 0, -0.5); }) ==
        Errc::out_of_domain);
  CHECK(code_of([&] {
          builtin_distortion(trivial, {BuiltinSpec::var(1.5)});
        }) == Errc::invalid_level);
  CHECK(code_of([&] {
          builtin_distortion(trivial, {BuiltinSpec::avar(0.0)});
        }) == Errc::invalid_level);
}

TEST_CASE("build_distortion validates curve invariants") {
  const SampleSpace space = space_of(4);
  const BlockPartition two(space, {space.event_from_labels({"a", "b"}),
                                   space.event_from_labels({"c", "d"})});

  SUBCASE("identity on every block is valid") {
    const RandomDistortion d = build_distortion(
        two, {SegmentCurve::identity(), SegmentCurve::identity()});
    CHECK(d.block_count() == 2);
  }

  SUBCASE("wrong block count") {
    CHECK(code_of([&] {
            build_distortion(two, {SegmentCurve::identity()});
          }) == Errc::block_count_mismatch);
  }

  SUBCASE("not normalised at 1") {
    // phi(1) = 0.9
    SegmentCurve bad(0.0, {AffineSegment{0.0, 1.0, 0.0, 0.9}});
    CHECK(code_of([&] {
            build_distortion(two, {bad, SegmentCurve::identity()});
          }) == Errc::not_normalized);
  }

  SUBCASE("downward jump is caught with a witness near the boundary") {
    // t on (0, 0.5], t - 0.2 on (0.5, 1]: drops at 0.5+.
    SegmentCurve bad(0.0, {AffineSegment{0.0, 0.5, 0.0, 1.0},
                           AffineSegment{0.5, 1.0, -0.2, 1.0}});
    try {
      build_distortion(two, {SegmentCurve::identity(), bad});
      FAIL("expected NotMonotone");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_monotone);
      CHECK(std::string(e.what()).find("0.5") != std::string::npos);
    }
  }

  SUBCASE("segments must tile (0,1]") {
    CHECK(code_of([&] {
            SegmentCurve(0.0, {AffineSegment{0.0, 0.4, 0.0, 1.0},
                               AffineSegment{0.5, 1.0, 0.0, 1.0}});
          }) == Errc::gap_or_overlap);
    CHECK(code_of([&] {
            SegmentCurve(0.0, {AffineSegment{0.1, 1.0, 0.0, 1.0}});
          }) == Errc::gap_or_overlap);
  }
}

TEST_CASE("concavity classification") {
  const SampleSpace space = space_of(2);
  const BlockPartition trivial = BlockPartition::trivial(space);

  for (int k = 1; k < 100; ++k) {
    const double alpha = k / 100.0;
    const RandomDistortion avar =
        builtin_distortion(trivial, {BuiltinSpec::avar(alpha)});
    const RandomDistortion var =
        builtin_distortion(trivial, {BuiltinSpec::var(alpha)});
    const ConcavityReport ra = is_concave(avar);
    const ConcavityReport rv = is_concave(var);
    CHECK(ra.concave[0]);
    CHECK(ra.at_zero_plus[0] == 0.0);
    CHECK_FALSE(rv.concave[0]);
  }

  const ConcavityReport rid =
      is_concave(builtin_distortion(trivial, {BuiltinSpec::identity()}));
  CHECK(rid.concave[0]);

  // Jump at 0 is allowed for concave curves.
  SegmentCurve jumpy(0.0, {AffineSegment{0.0, 1.0, 0.5, 0.5}});
  const ConcavityReport rj =
      is_concave(build_distortion(trivial, {jumpy}));
  CHECK(rj.concave[0]);
  CHECK(rj.at_zero_plus[0] == doctest::Approx(0.5));
}

TEST_CASE("random concave curves have non-increasing slopes") {
  Rng rng(5);
  const SampleSpace space = space_of(2);
  const BlockPartition trivial = BlockPartition::trivial(space);
  for (int round = 0; round < 50; ++round) {
    const SegmentCurve curve = testgen::random_concave_curve(rng);
    const RandomDistortion d = build_distortion(trivial, {curve});
    const ConcavityReport report = is_concave(d);
    CHECK(report.concave[0]);
    CHECK(report.at_zero_plus[0] >= 0.0);
    double previous = 1e300;
    for (const auto& s : curve.segments()) {
      CHECK(s.slope <= previous + 1e-12);
      previous = s.slope;
    }
  }
}

TEST_CASE("evaluation is non-decreasing in t") {
  Rng rng(6);
  const SampleSpace space = space_of(4);
  for (int round = 0; round < 25; ++round) {
    const BlockPartition partition = testgen::random_partition(space, rng);
    const RandomDistortion d = testgen::random_distortion(partition, rng);
    for (std::size_t b = 0; b < d.block_count(); ++b) {
      // Grid plus all knots and their tight neighbourhoods.
      std::vector<double> ts;
      for (int k = 0; k <= 1000; ++k) ts.push_back(k / 1000.0);
      for (double knot : d.curve(b).curve().interior_knots()) {
        ts.push_back(knot);
        if (knot - 1e-9 > 0.0) ts.push_back(knot - 1e-9);
        if (knot + 1e-9 < 1.0) ts.push_back(knot + 1e-9);
      }
      std::sort(ts.begin(), ts.end());
      double previous = -1.0;
      for (double t : ts) {
        const double value = eval_distortion(d, b, t);
        CHECK(value >= previous - 1e-12);
        CHECK(value >= -1e-12);
        CHECK(value <= 1.0 + 1e-12);
        previous = value;
      }
      CHECK(eval_distortion(d, b, 0.0) == 0.0);
      CHECK(eval_distortion(d, b, 1.0) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("builtin curves match their closed forms on a grid") {
  const SampleSpace space = space_of(2);
  const BlockPartition trivial = BlockPartition::trivial(space);
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const RandomDistortion var =
        builtin_distortion(trivial, {BuiltinSpec::var(alpha)});
    const RandomDistortion avar =
        builtin_distortion(trivial, {BuiltinSpec::avar(alpha)});
    for (int k = 0; k <= 1000; ++k) {
      const double t = k / 1000.0;
      const double var_expected = (t > 1.0 - alpha) ? 1.0 : 0.0;
      CHECK(eval_distortion(var, 0, t) == var_expected);
      if (t > 0.0) {
        const double avar_expected =
            std::min(t, 1.0 - alpha) / (1.0 - alpha);
        CHECK(eval_distortion(avar, 0, t) ==
              doctest::Approx(avar_expected).epsilon(1e-12));
      }
    }
  }
}
