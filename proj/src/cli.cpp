// Copyright 2026 The pclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pclone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "pclone/errors.hpp"
#include "pclone/machine_sim.hpp"
#include "pclone/oracle.hpp"

namespace pclone::cli {
namespace {

using nlohmann::json;

constexpr std::array<Scenario, 3> kScenarios = {Scenario::kI, Scenario::kII, Scenario::kIII};

double RequireNumber(const json& j, const std::string& key) {
  if (!j.is_number()) throw DomainError("config field '" + key + "' must be a number");
  return j.get<double>();
}

int RequireInt(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw DomainError("config field '" + key + "' must be an integer");
  return j.get<int>();
}

SweepRange ParseRange(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) {
    throw DomainError("sweep range '" + key + "' must be [start, stop, steps]");
  }
  SweepRange r;
  r.start = RequireNumber(j[0], key);
  r.stop = RequireNumber(j[1], key);
  r.steps = RequireInt(j[2], key);
  return r;
}

json RangeJson(const std::optional<SweepRange>& r) {
  if (!r) return nullptr;
  return json::array({r->start, r->stop, r->steps});
}

std::array<double, 3> ToArray(const std::function<double(Scenario)>& f) {
  return {f(Scenario::kI), f(Scenario::kII), f(Scenario::kIII)};
}

json ScenarioJson(const std::array<double, 3>& v) {
  return json{{"I", v[0]}, {"II", v[1]}, {"III", v[2]}};
}

GridConfig Grid(const RunConfig& config) {
  return GridConfig(config.grid_resolution, grid_tolerance(config.grid_resolution));
}

json Envelope(const std::string& command, const RunConfig& config) {
  return json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command},
              {"seed", config.seed},
              {"config", to_json(config)}};
}

std::vector<double> AxisValues(const std::optional<SweepRange>& range, double fixed) {
  if (!range) return {fixed};
  std::vector<double> v = range->values();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void WriteOutput(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing output file '" + path + "'");
}

json ReadConfigFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config file is not valid JSON: ") + e.what());
  }
}

}  // namespace

std::vector<double> SweepRange::values() const {
  if (steps < 1) throw DomainError("sweep steps must be >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("sweep bounds must be finite");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {start};
  for (int i = 0; i < steps; ++i) {
    // Endpoints exact; interior points by interpolation.
    if (i == steps - 1) {
      v.push_back(stop);
    } else {
      const double t = static_cast<double>(i) / (steps - 1);
      v.push_back(start + t * (stop - start));
    }
  }
  return v;
}

CloningProblem RunConfig::problem() const {
  return CloningProblem(alpha, beta, gamma, m, Priors{priors[0], priors[1]});
}

RunConfig apply_config_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "alpha") {
      base.alpha = RequireNumber(value, key);
    } else if (key == "beta") {
      base.beta = RequireNumber(value, key);
    } else if (key == "gamma") {
      base.gamma = RequireNumber(value, key);
    } else if (key == "m") {
      base.m = RequireInt(value, key);
    } else if (key == "priors") {
      if (!value.is_array() || value.size() != 2) {
        throw DomainError("config field 'priors' must be a pair of numbers");
      }
      base.priors = {RequireNumber(value[0], key), RequireNumber(value[1], key)};
    } else if (key == "grid_resolution") {
      base.grid_resolution = RequireInt(value, key);
    } else if (key == "shots") {
      if (!value.is_number_integer()) throw DomainError("config field 'shots' must be an integer");
      base.shots = value.get<std::int64_t>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw DomainError("config field 'seed' must be a non-negative integer");
      }
      base.seed = value.get<std::uint64_t>();
    } else if (key == "sweep") {
      if (!value.is_object()) throw DomainError("config field 'sweep' must be an object");
      for (const auto& [axis, range] : value.items()) {
        if (axis == "alpha") {
          base.sweep.alpha = ParseRange(range, axis);
        } else if (axis == "beta") {
          base.sweep.beta = ParseRange(range, axis);
        } else if (axis == "gamma") {
          base.sweep.gamma = ParseRange(range, axis);
        } else if (axis == "m") {
          base.sweep.m = ParseRange(range, axis);
        } else {
          throw DomainError("unknown sweep axis '" + axis + "'");
        }
      }
    } else {
      throw DomainError("unknown config field '" + key + "'");
    }
  }
  return base;
}

void validate(const RunConfig& config) {
  (void)config.problem();
  (void)Grid(config);
  if (config.shots < 1) throw DomainError("shots must be >= 1");
  const std::array<const std::optional<SweepRange>*, 4> ranges = {
      &config.sweep.alpha, &config.sweep.beta, &config.sweep.gamma, &config.sweep.m};
  for (const auto* r : ranges) {
    if (*r) (void)(*r)->values();
  }
  if (config.sweep.m) {
    for (double v : config.sweep.m->values()) {
      if (std::abs(v - std::round(v)) > 1e-9) throw DomainError("sweep values of m must be integers");
    }
  }
}

json to_json(const RunConfig& config) {
  json sweep = json::object();
  if (config.sweep.alpha) sweep["alpha"] = RangeJson(config.sweep.alpha);
  if (config.sweep.beta) sweep["beta"] = RangeJson(config.sweep.beta);
  if (config.sweep.gamma) sweep["gamma"] = RangeJson(config.sweep.gamma);
  if (config.sweep.m) sweep["m"] = RangeJson(config.sweep.m);
  json j{{"alpha", config.alpha},
         {"beta", config.beta},
         {"gamma", config.gamma},
         {"m", config.m},
         {"priors", config.priors},
         {"grid_resolution", config.grid_resolution},
         {"shots", config.shots},
         {"seed", config.seed}};
  if (!sweep.empty()) j["sweep"] = sweep;
  return j;
}

double grid_tolerance(int resolution) {
  if (resolution < 2) return kDefaultGridTolerance;
  return std::max(kDefaultGridTolerance, 2.0 / resolution);
}

json classify_report(const RunConfig& config) {
  const CloningProblem p = config.problem();
  const Regime regime = classify_regime(p);
  const double threshold = regime.alpha_pow_m_minus_1;
  json report = Envelope("classify", config);
  report["regime"] = std::string(to_string(regime.label));
  report["boundary"] = {{"alpha_pow_m_minus_1", regime.alpha_pow_m_minus_1},
                        {"alpha_pow_2m_minus_2", regime.alpha_pow_2m_minus_2},
                        {"beta_gamma", regime.beta_gamma}};
  report["comparisons"] = {
      {"beta_le_alpha_pow_m_minus_1", p.beta() <= threshold + kRegimeSnap},
      {"gamma_le_alpha_pow_m_minus_1", p.gamma() <= threshold + kRegimeSnap},
      {"beta_gamma_le_alpha_pow_m_minus_1", regime.beta_gamma <= threshold + kRegimeSnap}};
  return report;
}

json maxima_report(const RunConfig& config, const CommandOptions& options) {
  const CloningProblem p = config.problem();
  json report = Envelope("maxima", config);
  report["regime"] = std::string(to_string(classify_regime(p).label));
  std::optional<std::array<double, 3>> closed;
  if (!options.oracle_only) {
    const ScenarioReport r = closed_form_report(p);
    closed = r.closed_form_max;
    report["closed_form"] = ScenarioJson(r.closed_form_max);
    report["scenario_II_bound"] = r.scenario_II_composition_bound ? "composition" : "exact";
    report["gap_I_II"] = r.closed_form_max[0] - r.closed_form_max[1];
  }
  if (options.oracle || options.oracle_only) {
    const GridConfig grid = Grid(config);
    const std::array<double, 3> oracle = ToArray([&](Scenario s) { return oracle_max(s, p, grid); });
    report["oracle"] = ScenarioJson(oracle);
    report["grid"] = {{"resolution", grid.resolution()}, {"tolerance", grid.tolerance()}};
    if (closed) {
      std::array<double, 3> delta{};
      for (std::size_t i = 0; i < 3; ++i) delta[i] = std::abs(oracle[i] - (*closed)[i]);
      report["delta"] = ScenarioJson(delta);
    }
  }
  return report;
}

json simulate_report(const RunConfig& config) {
  const CloningProblem p = config.problem();
  json report = Envelope("simulate", config);
  report["regime"] = std::string(to_string(classify_regime(p).label));
  json scenarios = json::object();
  for (Scenario s : kScenarios) {
    const std::vector<RatePair> rates = optimal_stage_rates(s, p);
    const double analytic = analytic_scenario_rate(s, rates, p.priors());
    const SimulationResult r = simulate_scenario(s, p, rates, config.shots, config.seed);
    const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(config.shots));
    const double deviation = r.empirical_rate - analytic;
    json stage_rates = json::array();
    for (const RatePair& rp : rates) stage_rates.push_back({rp.r1(), rp.r2()});
    json entry{{"stage_rates", stage_rates},
               {"analytic_rate", analytic},
               {"empirical_rate", r.empirical_rate},
               {"sigma", sigma},
               {"deviation", deviation},
               {"within_3_sigma", std::abs(deviation) <= 3.0 * sigma + 1e-15},
               {"trials_per_input", r.trials_per_input},
               {"successes_per_input", r.successes_per_input},
               {"mean_success_fidelity", r.mean_success_fidelity}};
    scenarios[std::string(to_string(s))] = entry;
  }
  report["scenarios"] = scenarios;
  return report;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string sweep_csv(const RunConfig& config, const CommandOptions& options) {
  if (config.sweep.empty()) throw DomainError("sweep needs at least one range");
  const bool want_oracle = options.oracle || options.oracle_only;
  const GridConfig grid = Grid(config);

  std::ostringstream csv;
  csv << "# tool=" << kToolName << " version=" << kToolVersion << " seed=" << config.seed << "\n";
  csv << "# config=" << to_json(config).dump() << "\n";
  csv << "alpha,beta,gamma,m,regime,rI,rII,rIII,oracleI,oracleII,oracleIII,gapI_II\n";

  std::vector<double> ms = AxisValues(config.sweep.m, config.m);
  for (double a : AxisValues(config.sweep.alpha, config.alpha)) {
    for (double b : AxisValues(config.sweep.beta, config.beta)) {
      for (double g : AxisValues(config.sweep.gamma, config.gamma)) {
        for (double mv : ms) {
          const int m = static_cast<int>(std::lround(mv));
          const CloningProblem p(a, b, g, m, Priors{config.priors[0], config.priors[1]});
          csv << format_number(a) << ',' << format_number(b) << ',' << format_number(g) << ','
              << m << ',' << to_string(classify_regime(p).label);
          std::string gap;
          if (options.oracle_only) {
            csv << ",,,";
          } else {
            const ScenarioReport r = closed_form_report(p);
            for (double v : r.closed_form_max) csv << ',' << format_number(v);
            gap = format_number(r.closed_form_max[0] - r.closed_form_max[1]);
          }
          if (want_oracle) {
            for (Scenario s : kScenarios) csv << ',' << format_number(oracle_max(s, p, grid));
          } else {
            csv << ",,,";
          }
          csv << ',' << gap << '\n';
        }
      }
    }
  }
  return csv.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic cloning with auxiliary systems: regimes, maxima, simulation"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  CommandOptions options;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, beta, gamma;
  std::optional<int> m, grid_resolution;
  std::optional<std::int64_t> shots;
  std::vector<double> priors, sweep_alpha, sweep_beta, sweep_gamma, sweep_m;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_flag("--oracle", options.oracle, "Also run the lattice oracle");
  app.add_flag("--oracle-only", options.oracle_only, "Oracle values only; allows unequal priors");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--alpha", alpha, "Overlap of the states to clone");
  app.add_option("--beta", beta, "Overlap of the first auxiliary pair");
  app.add_option("--gamma", gamma, "Overlap of the second auxiliary pair");
  app.add_option("--m", m, "Number of output copies");
  app.add_option("--priors", priors, "Prior probabilities P1 P2")->expected(2);
  app.add_option("--grid-resolution", grid_resolution, "Oracle lattice points per axis");
  app.add_option("--shots", shots, "Simulation shots per scenario");
  for (auto [name, target] : {std::pair{"--sweep-alpha", &sweep_alpha},
                              std::pair{"--sweep-beta", &sweep_beta},
                              std::pair{"--sweep-gamma", &sweep_gamma},
                              std::pair{"--sweep-m", &sweep_m}}) {
    app.add_option(name, *target, "Sweep range START STOP STEPS")->expected(3);
  }

  CLI::App* classify = app.add_subcommand("classify", "Regime and deciding comparisons");
  CLI::App* maxima = app.add_subcommand("maxima", "Maximal average success rates");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo run at the optimal rates");
  CLI::App* sweep = app.add_subcommand("sweep", "CSV over a parameter grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  auto to_range = [](const std::vector<double>& v) -> std::optional<SweepRange> {
    if (v.empty()) return std::nullopt;
    const double steps = v[2];
    if (steps != std::floor(steps)) throw DomainError("sweep steps must be an integer");
    return SweepRange{v[0], v[1], static_cast<int>(steps)};
  };

  try {
    RunConfig config;
    if (!config_path.empty()) config = apply_config_json(ReadConfigFile(config_path));
    if (alpha) config.alpha = *alpha;
    if (beta) config.beta = *beta;
    if (gamma) config.gamma = *gamma;
    if (m) config.m = *m;
    if (!priors.empty()) config.priors = {priors[0], priors[1]};
    if (grid_resolution) config.grid_resolution = *grid_resolution;
    if (shots) config.shots = *shots;
    if (seed) config.seed = *seed;
    if (auto r = to_range(sweep_alpha)) config.sweep.alpha = r;
    if (auto r = to_range(sweep_beta)) config.sweep.beta = r;
    if (auto r = to_range(sweep_gamma)) config.sweep.gamma = r;
    if (auto r = to_range(sweep_m)) config.sweep.m = r;
    validate(config);

    std::string text;
    if (*classify) {
      text = classify_report(config).dump(2) + "\n";
    } else if (*maxima) {
      text = maxima_report(config, options).dump(2) + "\n";
    } else if (*simulate) {
      text = simulate_report(config).dump(2) + "\n";
    } else if (*sweep) {
      text = sweep_csv(config, options);
    }
    WriteOutput(text, out_path, out);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedPriorsError& e) {
    err << "error: " << e.what() << " (use --oracle-only)\n";
    return kExitUnsupportedPriors;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad config: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    // Feasibility failures at derived rates land here too.
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistency;
  }
}

}  // namespace pclone::cli
