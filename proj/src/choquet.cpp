#include "choquet/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "choquet/distribution.hpp"

namespace choquet {

namespace {

/// Distinct values of X descending, with the event {X >= value} cumulated
/// per layer and its capacity evaluated once.
struct LayerData {
  std::vector<double> values;      // w_1 > ... > w_m
  std::vector<double> capacities;  // c({X >= w_i})
};

LayerData layers(const Position& x, const Capacity& c) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.value(a) > x.value(b);
  });

  LayerData data;
  Event cumulative;
  std::size_t i = 0;
  while (i < order.size()) {
    const double w = x.value(order[i]);
    while (i < order.size() && x.value(order[i]) == w) {
      cumulative = cumulative.with(order[i]);
      ++i;
    }
    data.values.push_back(w);
    data.capacities.push_back(c.value(cumulative));
  }
  return data;
}

void require_same_setting(const Position& x, const Capacity& c,
                          const RandomDistortion& d) {
  require_same_space(x.space(), c.space(), "distorted Choquet integral");
  require_same_space(x.space(), d.partition().space(),
                     "distorted Choquet integral");
}

}  // namespace

Position ConditionalValue::to_position() const {
  std::vector<double> atom_values(partition.space().size(), 0.0);
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    for (std::size_t i = 0; i < atom_values.size(); ++i) {
      if (partition.block(b).contains(i)) atom_values[i] = values[b];
    }
  }
  return Position(partition.space(), std::move(atom_values));
}

ConditionalValue rd_choquet(const Position& x, const Capacity& c,
                            const RandomDistortion& d) {
  require_same_setting(x, c, d);
  const LayerData data = layers(x, c);
  const double base = data.values.back();  // min(X)

  std::vector<double> result(d.block_count(), base);
  for (std::size_t b = 0; b < d.block_count(); ++b) {
    const DistortionCurve& phi = d.curve(b);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < data.values.size(); ++i) {
      sum += (data.values[i] - data.values[i + 1]) *
             phi.value(data.capacities[i]);
    }
    result[b] += sum;
  }
  return ConditionalValue{d.partition(), std::move(result)};
}

ConditionalValue rd_choquet_oracle(const Position& x, const Capacity& c,
                                   const RandomDistortion& d,
                                   double grid_step) {
  require_same_setting(x, c, d);
  if (!(grid_step > 0.0)) {
    fail(Errc::invalid_value, "oracle grid step must be positive");
  }

  // Survival function c(X > t) as explicit data: value s_j on
  // [values[j], values[j+1]), 1 below the smallest value, 0 at the top.
  std::vector<double> values(x.values());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<double> survival(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    survival[j] = c.value(x.above(values[j]));
  }
  const auto survival_at = [&](double t) {
    const auto it = std::upper_bound(values.begin(), values.end(), t);
    if (it == values.begin()) return 1.0;
    return survival[static_cast<std::size_t>(it - values.begin()) - 1];
  };

  std::vector<double> result(d.block_count(), 0.0);
  const auto accumulate = [&](double lo, double hi, bool shifted) {
    if (!(hi > lo)) return;
    const auto cells =
        static_cast<std::size_t>(std::ceil((hi - lo) / grid_step));
    const double width = (hi - lo) / static_cast<double>(cells);
    for (std::size_t k = 0; k < cells; ++k) {
      const double mid = lo + (static_cast<double>(k) + 0.5) * width;
      const double s = survival_at(mid);
      for (std::size_t b = 0; b < d.block_count(); ++b) {
        const double phi = d.curve(b).value(s);
        result[b] += (shifted ? phi - 1.0 : phi) * width;
      }
    }
  };
  accumulate(0.0, x.max() + 1.0, false);
  accumulate(x.min() - 1.0, 0.0, true);
  return ConditionalValue{d.partition(), std::move(result)};
}

ConditionalValue rd_choquet_concave_dual(const Position& x, const Capacity& c,
                                         const RandomDistortion& d) {
  require_same_setting(x, c, d);
  const ConcavityReport report = is_concave(d);
  for (std::size_t b = 0; b < report.concave.size(); ++b) {
    if (!report.concave[b]) {
      fail(Errc::not_concave,
           "block " + std::to_string(b) + " has a non-concave curve");
    }
  }

  const QuantilePair q = quantiles(x, c);
  const double top = q.at_one();  // sup_{t<1} r_X^+(t)

  // Refinement of (0,1) by the quantile jump points and, per block, the
  // curve knots mapped through t -> 1-t. Both factors of the integrand are
  // constant on each open cell, so reading them at the midpoint is exact.
  std::vector<double> result(d.block_count(), 0.0);
  for (std::size_t b = 0; b < d.block_count(); ++b) {
    const DistortionCurve& phi = d.curve(b);
    std::vector<double> cuts{0.0, 1.0};
    for (double t : q.upper.breakpoints()) cuts.push_back(t);
    for (double knot : phi.curve().interior_knots()) {
      const double t = 1.0 - knot;
      if (t > 0.0 && t < 1.0) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      integral += phi.slope_at(1.0 - mid) * q.upper.value(mid) *
                  (cuts[k + 1] - cuts[k]);
    }
    result[b] = report.at_zero_plus[b] * top + integral;
  }
  return ConditionalValue{d.partition(), std::move(result)};
}

double choquet_expectation(const Position& x, const Capacity& c) {
  require_same_space(x.space(), c.space(), "Choquet expectation");
  const LayerData data = layers(x, c);
  double sum = data.values.back();
  for (std::size_t i = 0; i + 1 < data.values.size(); ++i) {
    sum += (data.values[i] - data.values[i + 1]) * data.capacities[i];
  }
  return sum;
}

ComonotonicityCheck are_comonotonic(const Position& x, const Position& y) {
  require_same_space(x.space(), y.space(), "comonotonicity");
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x.value(i) - x.value(j);
      const double dy = y.value(i) - y.value(j);
      if ((dx > 0.0 && dy < 0.0) || (dx < 0.0 && dy > 0.0)) {
        return ComonotonicityCheck{false, std::make_pair(i, j)};
      }
    }
  }
  return ComonotonicityCheck{true, std::nullopt};
}

Position ComonotonicForm::first() const {
  std::vector<double> values(space.size(), 0.0);
  for (std::size_t k = 0; k < events.size(); ++k) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (events[k].contains(i)) values[i] = xs[k];
    }
  }
  return Position(space, std::move(values));
}

Position ComonotonicForm::second() const {
  std::vector<double> values(space.size(), 0.0);
  for (std::size_t k = 0; k < events.size(); ++k) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (events[k].contains(i)) values[i] = ys[k];
    }
  }
  return Position(space, std::move(values));
}

ComonotonicForm comonotonic_decomposition(const Position& x,
                                          const Position& y) {
  require_same_space(x.space(), y.space(), "comonotonic decomposition");
  if (x.min() < 0.0 || y.min() < 0.0) {
    fail(Errc::negative_input,
         "comonotonic decomposition needs non-negative positions");
  }
  const ComonotonicityCheck check = are_comonotonic(x, y);
  if (!check.comonotonic) {
    fail(Errc::not_comonotonic,
         "positions are not comonotonic (atoms " +
             std::to_string(check.witness->first) + ", " +
             std::to_string(check.witness->second) + ")");
  }

  // Comonotonicity makes the (X, Y) pairs totally ordered, so the
  // lexicographic descending sort orders both coordinates at once.
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (x.value(a) != x.value(b)) return x.value(a) > x.value(b);
    return y.value(a) > y.value(b);
  });

  ComonotonicForm form{x.space(), {}, {}, {}};
  std::size_t i = 0;
  while (i < order.size()) {
    const double xv = x.value(order[i]);
    const double yv = y.value(order[i]);
    Event group;
    while (i < order.size() && x.value(order[i]) == xv &&
           y.value(order[i]) == yv) {
      group = group.with(order[i]);
      ++i;
    }
    form.events.push_back(group);
    form.xs.push_back(xv);
    form.ys.push_back(yv);
  }
  return form;
}

}  // namespace choquet
