#include "choquet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "choquet/distribution.hpp"
#include "choquet/representation.hpp"
#include "choquet/scenario.hpp"
#include "json.hpp"

namespace choquet {

namespace {

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(Errc::invalid_value, "cannot open \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(read_file(path));
}

std::uint64_t resolve_seed(const Scenario& scenario,
                           const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("CHOQUET_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return scenario.seed.value_or(0);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) out.push_back(token);
  return out;
}

/// "builtin:NAME" names a distortion from the scenario; "plugin:CMD" runs
/// CMD per evaluation through the line protocol.
std::unique_ptr<ConditionalRiskMeasure> make_rho(const Scenario& scenario,
                                                 const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    fail(Errc::usage_error,
         "--rho expects builtin:<distortion> or plugin:<command>");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "builtin") {
    return std::make_unique<DistortionRiskMeasure>(
        scenario.capacity, scenario.distortion(rest));
  }
  if (kind == "plugin") {
    return std::make_unique<PluginRiskMeasure>(scenario.space,
                                               scenario.partition, rest);
  }
  fail(Errc::usage_error, "unknown rho kind \"" + kind + "\"");
}

NestedChain make_chain(const Scenario& scenario,
                       const std::string& ranking_flag) {
  if (ranking_flag.empty()) {
    std::vector<std::size_t> ranking(scenario.space.size());
    std::iota(ranking.begin(), ranking.end(), std::size_t{0});
    return build_nested_chain(scenario.capacity, ranking);
  }
  return build_nested_chain(scenario.capacity, split_csv(ranking_flag));
}

nlohmann::json grid_to_json(const GridDistortion& grid,
                            const BlockPartition& partition) {
  nlohmann::json out;
  out["grid"] = grid.grid;
  auto& blocks = out["blocks"] = nlohmann::json::array();
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    nlohmann::json entry;
    entry["block"] = partition.block_label(b);
    entry["values"] = grid.values[b];
    blocks.push_back(std::move(entry));
  }
  return out;
}

int run_validate(const std::string& path, std::ostream& out,
                 std::ostream& err) {
  const Scenario scenario = load_scenario(path);
  nlohmann::json summary;
  summary["valid"] = true;
  summary["atoms"] = scenario.space.size();
  summary["blocks"] = scenario.partition.block_count();
  summary["positions"] = scenario.positions.size();
  summary["distortions"] = scenario.distortions.size();
  out << summary.dump(2) << "\n";
  err << "scenario \"" << path << "\" is valid\n";
  return 0;
}

int run_eval(const Scenario& scenario, const std::string& position,
             const std::string& distortion, double oracle_step, bool as_json,
             std::ostream& out) {
  const Position& x = scenario.position(position);
  const RandomDistortion& d = scenario.distortion(distortion);
  EvalRecord record{position, distortion,
                    rd_choquet(x, scenario.capacity, d), std::nullopt};
  if (oracle_step > 0.0) {
    record.oracle = rd_choquet_oracle(x, scenario.capacity, d, oracle_step);
  }
  out << (as_json ? results_to_json({record}) : results_to_csv({record}));
  return 0;
}

int run_dominance(const Scenario& scenario, const std::string& order,
                  const std::string& x_name, const std::string& y_name,
                  int trials, std::uint64_t seed, bool strict,
                  std::ostream& out) {
  const Position& x = scenario.position(x_name);
  const Position& y = scenario.position(y_name);
  if (order == "st" || order == "sl") {
    const DominanceVerdict verdict =
        order == "st" ? dominates_st(x, y, scenario.capacity)
                      : dominates_sl(x, y, scenario.capacity);
    out << verdict_to_json(order, verdict);
    return (strict && !verdict.holds) ? 1 : 0;
  }
  if (order == "icx-falsify") {
    const auto witness = falsify_icx(x, y, scenario.capacity, trials, seed);
    out << falsifier_to_json(witness);
    return (strict && witness.has_value()) ? 1 : 0;
  }
  fail(Errc::usage_error, "--order must be st, sl or icx-falsify");
}

int run_extract(const Scenario& scenario, const std::string& rho_spec,
                const std::string& ranking, std::ostream& out) {
  const auto rho = make_rho(scenario, rho_spec);
  const NestedChain chain = make_chain(scenario, ranking);
  const GridDistortion grid =
      extract_distortion(*rho, chain, scenario.partition);
  out << grid_to_json(grid, scenario.partition).dump(2) << "\n";
  return 0;
}

int run_verify(const Scenario& scenario, const std::string& rho_spec,
               const std::string& ranking, int trials, std::uint64_t seed,
               const std::string& lift_name, std::ostream& out) {
  const auto rho = make_rho(scenario, rho_spec);
  const NestedChain chain = make_chain(scenario, ranking);
  const GridLift lift =
      lift_name == "step" ? GridLift::step : GridLift::linear;
  const RepresentationReport report = verify_representation(
      *rho, scenario.capacity, chain, scenario.partition, trials, seed, lift);
  const AxiomReport axioms =
      check_axioms(*rho, scenario.capacity, trials, seed);

  nlohmann::json output;
  output["max-error-adapted"] = report.max_error_adapted;
  output["max-error-arbitrary"] = report.max_error_arbitrary;
  output["concavity"] = {{"triples", report.concavity_triples},
                         {"violations", report.concavity_violations}};
  output["grid"] = grid_to_json(report.grid, scenario.partition);
  auto& checks = output["axioms"] = nlohmann::json::array();
  for (const auto& check : axioms.checks) {
    nlohmann::json entry;
    entry["name"] = check.name;
    entry["trials"] = check.trials;
    entry["violations"] = check.violations;
    if (!check.counterexample.empty()) {
      entry["counterexample"] = check.counterexample;
    }
    checks.push_back(std::move(entry));
  }
  out << output.dump(2) << "\n";
  return 0;
}

int run_report(const Scenario& scenario, std::ostream& out) {
  std::vector<EvalRecord> records;
  for (const auto& [pname, position] : scenario.positions) {
    for (const auto& [dname, distortion] : scenario.distortions) {
      records.push_back(EvalRecord{
          pname, dname, rd_choquet(position, scenario.capacity, distortion),
          std::nullopt});
    }
  }
  out << results_to_csv(records);

  out << "\nposition,x,cdf,survival\n";
  for (const auto& [pname, position] : scenario.positions) {
    const StepFunction g = distribution_function(position, scenario.capacity);
    for (double b : g.breakpoints()) {
      const double cdf = g.value(b);
      out << pname << ',' << format_double(b) << ',' << format_double(cdf)
          << ',' << format_double(1.0 - cdf) << "\n";
    }
  }

  out << "\nposition,t,lower_quantile,upper_quantile\n";
  for (const auto& [pname, position] : scenario.positions) {
    const QuantilePair q = quantiles(position, scenario.capacity);
    std::vector<double> ts{0.0};
    for (double t : q.upper.breakpoints()) ts.push_back(t);
    ts.push_back(1.0);
    for (double t : ts) {
      out << pname << ',' << format_double(t) << ','
          << format_double(q.lower_at(t)) << ','
          << format_double(q.upper_at(t)) << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Finite-space engine for randomly distorted Choquet integrals"};
  app.name("choquet-risk");
  app.require_subcommand(1);

  std::string file;
  std::string position, distortion;
  std::string order, x_name, y_name;
  std::string rho_spec, ranking, lift_name = "linear";
  double oracle_step = 0.0;
  int trials = 200;
  bool strict = false;
  bool as_json = false;
  std::optional<std::uint64_t> seed_flag;

  const auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "scenario file")->required();
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a scenario");
  add_file(validate);

  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate a distorted Choquet integral per block");
  add_file(eval);
  eval->add_option("--position", position, "position name")->required();
  eval->add_option("--distortion", distortion, "distortion name")->required();
  eval->add_option("--oracle", oracle_step,
                   "also run the quadrature oracle with this grid step");
  eval->add_flag("--json", as_json, "emit JSON instead of CSV");

  CLI::App* dominance =
      app.add_subcommand("dominance", "decide a dominance query");
  add_file(dominance);
  dominance->add_option("--order", order, "st | sl | icx-falsify")
      ->required();
  dominance->add_option("--x", x_name, "left position")->required();
  dominance->add_option("--y", y_name, "right position")->required();
  dominance->add_option("--trials", trials, "falsifier trials");
  dominance->add_option("--seed", seed_flag, "falsifier seed");
  dominance->add_flag("--strict", strict,
                      "exit 1 when the verdict is negative");

  CLI::App* extract = app.add_subcommand(
      "extract", "extract the induced distortion on a chain grid");
  add_file(extract);
  extract->add_option("--rho", rho_spec,
                      "builtin:<distortion> or plugin:<command>")
      ->required();
  extract->add_option("--ranking", ranking,
                      "comma-separated atom labels, best first "
                      "(default: scenario order)");

  CLI::App* verify = app.add_subcommand(
      "verify", "verify the representation and sampled axioms");
  add_file(verify);
  verify->add_option("--rho", rho_spec,
                     "builtin:<distortion> or plugin:<command>")
      ->required();
  verify->add_option("--ranking", ranking, "chain ranking");
  verify->add_option("--trials", trials, "sampled positions per check");
  verify->add_option("--seed", seed_flag, "sampling seed");
  verify->add_option("--lift", lift_name, "grid lift: linear | step")
      ->check(CLI::IsMember({"linear", "step"}));

  CLI::App* report = app.add_subcommand(
      "report", "evaluate everything and emit plottable tables");
  add_file(report);

  std::vector<const char*> argv;
  argv.push_back("choquet-risk");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(file, out, err);
    const Scenario scenario = load_scenario(file);
    const std::uint64_t seed = resolve_seed(scenario, seed_flag);
    if (app.got_subcommand(eval)) {
      return run_eval(scenario, position, distortion, oracle_step, as_json,
                      out);
    }
    if (app.got_subcommand(dominance)) {
      return run_dominance(scenario, order, x_name, y_name, trials, seed,
                           strict, out);
    }
    if (app.got_subcommand(extract)) {
      return run_extract(scenario, rho_spec, ranking, out);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(scenario, rho_spec, ranking, trials, seed, lift_name,
                        out);
    }
    if (app.got_subcommand(report)) return run_report(scenario, out);
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.code() == Errc::usage_error ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace choquet
