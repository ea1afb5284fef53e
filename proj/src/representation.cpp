#include "choquet/representation.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "choquet/rng.hpp"
#include "choquet/stochastic_order.hpp"
#include "json.hpp"

namespace choquet {

namespace {

constexpr double kAxiomTol = 1e-9;

std::string format_block_gap(const BlockPartition& partition,
                             std::size_t block, double lhs, double rhs) {
  std::ostringstream out;
  out << "block \"" << partition.block_label(block) << "\": " << lhs
      << " vs " << rhs;
  return out.str();
}

Position sample_position(const SampleSpace& space, Rng& rng) {
  std::vector<double> values(space.size());
  for (double& v : values) v = rng.uniform(-2.0, 2.0);
  return Position(space, std::move(values));
}

std::pair<Position, Position> sample_comonotonic_pair(
    const SampleSpace& space, Rng& rng) {
  const std::vector<std::size_t> perm = rng.permutation(space.size());
  std::vector<double> lx = rng.sorted_uniform(space.size(), -2.0, 2.0);
  std::vector<double> ly = rng.sorted_uniform(space.size(), -2.0, 2.0);
  std::vector<double> xs(space.size()), ys(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    xs[perm[i]] = lx[i];
    ys[perm[i]] = ly[i];
  }
  return {Position(space, std::move(xs)), Position(space, std::move(ys))};
}

/// Position constant on the chain rings, non-increasing along the ranking:
/// every strict upper level set is a chain event.
Position sample_chain_adapted(const NestedChain& chain, Rng& rng) {
  std::vector<double> ladder = rng.sorted_uniform(chain.ranking.size(), -2.0,
                                                  2.0);
  // Coin-flip ties keep flat rings common.
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (rng.chance(0.3)) ladder[i] = ladder[i - 1];
  }
  std::reverse(ladder.begin(), ladder.end());  // non-increasing
  std::vector<double> values(chain.ranking.size());
  for (std::size_t r = 0; r < chain.ranking.size(); ++r) {
    values[chain.ranking[r]] = ladder[r];
  }
  return Position(chain.space, std::move(values));
}

}  // namespace

ConditionalValue DistortionRiskMeasure::evaluate(const Position& x) const {
  return rd_choquet(x, capacity_, distortion_);
}

PluginRiskMeasure::PluginRiskMeasure(SampleSpace space,
                                     BlockPartition partition,
                                     std::string command)
    : space_(std::move(space)),
      partition_(std::move(partition)),
      command_(std::move(command)) {
  require_same_space(space_, partition_.space(), "plugin risk measure");
  if (command_.empty()) {
    fail(Errc::plugin_failure, "plugin command is empty");
  }
}

ConditionalValue PluginRiskMeasure::evaluate(const Position& x) const {
  require_same_space(x.space(), space_, "plugin evaluation");

  nlohmann::json request;
  request["atoms"] = space_.labels();
  auto& blocks = request["blocks"] = nlohmann::json::array();
  for (std::size_t b = 0; b < partition_.block_count(); ++b) {
    auto block = nlohmann::json::array();
    for (std::size_t i = 0; i < space_.size(); ++i) {
      if (partition_.block(b).contains(i)) block.push_back(i);
    }
    blocks.push_back(std::move(block));
  }
  request["position"] = x.values();
  const std::string request_line = request.dump() + "\n";

  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0) {
    fail(Errc::plugin_failure, "could not create plugin pipes");
  }
  const pid_t pid = fork();
  if (pid < 0) {
    fail(Errc::plugin_failure, "could not fork plugin process");
  }
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);

  std::size_t written = 0;
  while (written < request_line.size()) {
    const ssize_t n = write(to_child[1], request_line.data() + written,
                            request_line.size() - written);
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  close(to_child[1]);

  std::string reply;
  char buffer[4096];
  ssize_t n = 0;
  while ((n = read(from_child[0], buffer, sizeof(buffer))) > 0) {
    reply.append(buffer, static_cast<std::size_t>(n));
  }
  close(from_child[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    fail(Errc::plugin_failure,
         "plugin \"" + command_ + "\" exited abnormally");
  }

  try {
    const auto parsed = nlohmann::json::parse(reply);
    const auto& values = parsed.at("values");
    if (!values.is_array() || values.size() != partition_.block_count()) {
      fail(Errc::plugin_failure, "plugin reply needs one value per block");
    }
    std::vector<double> result;
    for (const auto& v : values) result.push_back(v.get<double>());
    return ConditionalValue{partition_, std::move(result)};
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::plugin_failure,
         std::string("plugin reply is not valid JSON: ") + e.what());
  }
}

NestedChain build_nested_chain(const Capacity& c,
                               const std::vector<std::size_t>& ranking) {
  const SampleSpace& space = c.space();
  if (ranking.size() != space.size()) {
    fail(Errc::invalid_ranking,
         "ranking needs all " + std::to_string(space.size()) + " atoms");
  }
  std::vector<bool> seen(space.size(), false);
  for (std::size_t atom : ranking) {
    if (atom >= space.size() || seen[atom]) {
      fail(Errc::invalid_ranking, "ranking is not a permutation of atoms");
    }
    seen[atom] = true;
  }

  NestedChain chain{space, ranking, {}, {}};
  Event cumulative;
  chain.events.push_back(cumulative);
  chain.grid.push_back(c.value(cumulative));
  for (std::size_t atom : ranking) {
    cumulative = cumulative.with(atom);
    chain.events.push_back(cumulative);
    chain.grid.push_back(c.value(cumulative));
  }
  return chain;
}

NestedChain build_nested_chain(const Capacity& c,
                               const std::vector<std::string>& ranking) {
  std::vector<std::size_t> indices;
  indices.reserve(ranking.size());
  for (const auto& label : ranking) {
    if (!c.space().has_label(label)) {
      fail(Errc::invalid_ranking, "unknown atom \"" + label + "\" in ranking");
    }
    indices.push_back(c.space().index_of(label));
  }
  return build_nested_chain(c, indices);
}

GridDistortion extract_distortion(const ConditionalRiskMeasure& rho,
                                  const NestedChain& chain,
                                  const BlockPartition& partition) {
  require_same_space(rho.space(), chain.space, "distortion extraction");
  if (!(rho.partition() == partition)) {
    fail(Errc::partition_mismatch,
         "risk measure conditions on a different partition");
  }

  GridDistortion grid;
  grid.grid = chain.grid;
  grid.values.assign(partition.block_count(),
                     std::vector<double>(chain.events.size(), 0.0));
  for (std::size_t k = 0; k < chain.events.size(); ++k) {
    const ConditionalValue value =
        rho.evaluate(Position::indicator(chain.space, chain.events[k]));
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      grid.values[b][k] = value.at(b);
    }
  }

  // Chain levels with equal capacity must induce equal values; otherwise
  // rho distinguishes equally-distributed indicators and induces nothing.
  for (std::size_t k = 0; k + 1 < grid.grid.size(); ++k) {
    if (grid.grid[k] != grid.grid[k + 1]) continue;
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      const double gap =
          std::abs(grid.values[b][k] - grid.values[b][k + 1]);
      if (gap > kAxiomTol) {
        std::ostringstream message;
        message << "chain levels " << k << " and " << k + 1
                << " share grid value " << grid.grid[k]
                << " but block \"" << partition.block_label(b)
                << "\" extracts " << grid.values[b][k] << " vs "
                << grid.values[b][k + 1];
        fail(Errc::well_definedness_violation, message.str());
      }
    }
  }
  return grid;
}

const AxiomCheck& AxiomReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  fail(Errc::invalid_value, "no axiom check named \"" + name + "\"");
}

AxiomReport check_axioms(const ConditionalRiskMeasure& rho, const Capacity& c,
                         int trials, std::uint64_t seed) {
  require_same_space(rho.space(), c.space(), "axiom checks");
  if (trials < 1) {
    fail(Errc::invalid_value, "axiom checks need at least one trial");
  }
  const SampleSpace& space = rho.space();
  const BlockPartition& partition = rho.partition();
  Rng rng(seed);

  AxiomCheck comonotonic{"comonotonic-additivity", 0, 0, ""};
  AxiomCheck translation{"translation-invariance", 0, 0, ""};
  AxiomCheck homogeneity{"positive-homogeneity", 0, 0, ""};
  AxiomCheck consistency{"st-consistency", 0, 0, ""};
  AxiomCheck normalisation{"normalisation", 0, 0, ""};
  AxiomCheck groundedness{"groundedness", 0, 0, ""};

  const auto record = [&](AxiomCheck& check, std::size_t block, double lhs,
                          double rhs) {
    ++check.violations;
    if (check.counterexample.empty()) {
      check.counterexample = format_block_gap(partition, block, lhs, rhs);
    }
  };

  {
    const ConditionalValue one =
        rho.evaluate(Position::constant(space, 1.0));
    const ConditionalValue zero =
        rho.evaluate(Position::constant(space, 0.0));
    normalisation.trials = 1;
    groundedness.trials = 1;
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      if (std::abs(one.at(b) - 1.0) > kAxiomTol) {
        record(normalisation, b, one.at(b), 1.0);
      }
      if (std::abs(zero.at(b)) > kAxiomTol) {
        record(groundedness, b, zero.at(b), 0.0);
      }
    }
  }

  for (int trial = 0; trial < trials; ++trial) {
    {
      const auto [u, v] = sample_comonotonic_pair(space, rng);
      const ConditionalValue sum = rho.evaluate(u + v);
      const ConditionalValue left = rho.evaluate(u);
      const ConditionalValue right = rho.evaluate(v);
      ++comonotonic.trials;
      for (std::size_t b = 0; b < partition.block_count(); ++b) {
        if (std::abs(sum.at(b) - left.at(b) - right.at(b)) > kAxiomTol) {
          record(comonotonic, b, sum.at(b), left.at(b) + right.at(b));
          break;
        }
      }
    }
    {
      const Position x = sample_position(space, rng);
      const double a = rng.uniform(-3.0, 3.0);
      const ConditionalValue base = rho.evaluate(x);
      const ConditionalValue shifted = rho.evaluate(x + a);
      ++translation.trials;
      for (std::size_t b = 0; b < partition.block_count(); ++b) {
        if (std::abs(shifted.at(b) - base.at(b) - a) > kAxiomTol) {
          record(translation, b, shifted.at(b), base.at(b) + a);
          break;
        }
      }
      const double scale = rng.uniform(0.0, 3.0);
      const ConditionalValue scaled = rho.evaluate(scale * x);
      ++homogeneity.trials;
      for (std::size_t b = 0; b < partition.block_count(); ++b) {
        if (std::abs(scaled.at(b) - scale * base.at(b)) >
            kAxiomTol * std::max(1.0, std::abs(scale * base.at(b)))) {
          record(homogeneity, b, scaled.at(b), scale * base.at(b));
          break;
        }
      }
    }
    {
      const Position x = sample_position(space, rng);
      Position y = x;
      if (rng.chance(0.5)) {
        std::vector<double> higher(x.values());
        for (double& v : higher) v += rng.uniform(0.0, 1.5);
        y = Position(space, std::move(higher));
      } else {
        // Permuted values: when the capacity is symmetric these pairs are
        // equal in distribution, certified in both directions, and expose
        // risk measures that are not distribution invariant.
        const std::vector<std::size_t> perm = rng.permutation(space.size());
        std::vector<double> shuffled(space.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
          shuffled[perm[i]] = x.value(i);
        }
        y = Position(space, std::move(shuffled));
      }
      if (dominates_st(x, y, c).holds) {
        const ConditionalValue vx = rho.evaluate(x);
        const ConditionalValue vy = rho.evaluate(y);
        ++consistency.trials;
        for (std::size_t b = 0; b < partition.block_count(); ++b) {
          if (vx.at(b) > vy.at(b) + kAxiomTol) {
            record(consistency, b, vx.at(b), vy.at(b));
            break;
          }
        }
      }
    }
  }

  return AxiomReport{{comonotonic, translation, homogeneity, consistency,
                      normalisation, groundedness}};
}

RandomDistortion lift_grid_distortion(const GridDistortion& grid,
                                      const BlockPartition& partition,
                                      GridLift lift) {
  if (grid.values.size() != partition.block_count()) {
    fail(Errc::block_count_mismatch,
         "grid distortion has " + std::to_string(grid.values.size()) +
             " blocks, partition has " +
             std::to_string(partition.block_count()));
  }
  if (grid.grid.empty() || grid.grid.front() > kCapacityTol ||
      grid.grid.back() < 1.0 - kCapacityTol) {
    fail(Errc::invalid_value, "grid must run from 0 to 1");
  }

  // Deduplicate repeated grid values (extraction guarantees their block
  // values agree) and pin the ends to exactly 0 and 1.
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < grid.grid.size(); ++k) {
    if (keep.empty() || grid.grid[k] > grid.grid[keep.back()]) {
      keep.push_back(k);
    }
  }
  std::vector<double> ts;
  for (std::size_t k : keep) ts.push_back(grid.grid[k]);
  ts.front() = 0.0;
  ts.back() = 1.0;

  std::vector<SegmentCurve> curves;
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    std::vector<double> vs;
    for (std::size_t k : keep) vs.push_back(grid.values[b][k]);
    std::vector<AffineSegment> segments;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      if (lift == GridLift::step) {
        segments.push_back(AffineSegment{ts[k], ts[k + 1], vs[k + 1], 0.0});
      } else {
        const double slope = (vs[k + 1] - vs[k]) / (ts[k + 1] - ts[k]);
        segments.push_back(
            AffineSegment{ts[k], ts[k + 1], vs[k] - slope * ts[k], slope});
      }
    }
    curves.emplace_back(0.0, std::move(segments));
  }
  return build_distortion(partition, std::move(curves));
}

RepresentationReport verify_representation(const ConditionalRiskMeasure& rho,
                                           const Capacity& c,
                                           const NestedChain& chain,
                                           const BlockPartition& partition,
                                           int trials, std::uint64_t seed,
                                           GridLift lift) {
  require_same_space(rho.space(), c.space(), "representation check");
  RepresentationReport report;
  report.grid = extract_distortion(rho, chain, partition);
  const RandomDistortion lifted =
      lift_grid_distortion(report.grid, partition, lift);

  Rng rng(seed);
  for (int trial = 0; trial < std::max(trials, 1); ++trial) {
    const Position adapted = sample_chain_adapted(chain, rng);
    const ConditionalValue expected = rho.evaluate(adapted);
    const ConditionalValue actual = rd_choquet(adapted, c, lifted);
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      report.max_error_adapted = std::max(
          report.max_error_adapted, std::abs(expected.at(b) - actual.at(b)));
    }

    const Position arbitrary = sample_position(chain.space, rng);
    const ConditionalValue expected_free = rho.evaluate(arbitrary);
    const ConditionalValue actual_free = rd_choquet(arbitrary, c, lifted);
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      report.max_error_arbitrary =
          std::max(report.max_error_arbitrary,
                   std::abs(expected_free.at(b) - actual_free.at(b)));
    }
  }

  // Midpoint concavity on the deduplicated grid, per block.
  std::vector<double> ts;
  std::vector<std::vector<double>> vs(partition.block_count());
  for (std::size_t k = 0; k < report.grid.grid.size(); ++k) {
    if (!ts.empty() && report.grid.grid[k] <= ts.back()) continue;
    ts.push_back(report.grid.grid[k]);
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
      vs[b].push_back(report.grid.values[b][k]);
    }
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i; j < ts.size(); ++j) {
      const double mid = 0.5 * (ts[i] + ts[j]);
      const auto it = std::lower_bound(ts.begin(), ts.end(), mid - 1e-12);
      if (it == ts.end() || std::abs(*it - mid) > 1e-12) continue;
      const std::size_t l = static_cast<std::size_t>(it - ts.begin());
      ++report.concavity_triples;
      for (std::size_t b = 0; b < partition.block_count(); ++b) {
        if (0.5 * vs[b][i] + 0.5 * vs[b][j] > vs[b][l] + kAxiomTol) {
          ++report.concavity_violations;
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace choquet
