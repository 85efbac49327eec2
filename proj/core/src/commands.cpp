// Copyright 2026 The fputq Authors
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

#include "fputq/commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "fputq/dense_oracle.hpp"
#include "fputq/errors.hpp"

namespace fputq {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw InputError("cannot format number");
  return {buf, ptr};
}

namespace {

std::filesystem::path prepare_output(const RunConfig& config) {
  std::filesystem::path dir(config.output_directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

LatticeState initial_state(const RunConfig& config) {
  const SiteLayout layout{config.model.n_sites, config.bits};
  check_state_capacity(layout, config.max_qubits);
  const auto centers = config.initial_centers();
  return init_product_gaussian(config.model, config.grid(), config.gaussian_width(), centers);
}

PropagatorOptions propagator_options(const RunConfig& config) {
  PropagatorOptions opt;
  opt.inject_dft_sign_fault = config.inject_dft_sign_fault;
  return opt;
}

}  // namespace

SimulateResult cmd_simulate(const RunConfig& config) {
  const auto dir = prepare_output(config);
  auto state = initial_state(config);
  const SplitOperator op(config.model, config.grid(), propagator_options(config));

  SimulateResult result;
  result.observables_path = (dir / "observables.csv").string();
  result.checkpoint_path = (dir / "state.chk").string();

  auto csv = open_output(result.observables_path);
  csv << "step,t,norm,e_kin,e_pot,e_total";
  for (int j = 0; j < config.model.n_sites; ++j) csv << ",q_" << j;
  csv << '\n';

  auto write_row = [&](int step) {
    const double ek = op.kinetic_expectation(state);
    const double ep = op.potential_expectation(state);
    csv << step << ',' << format_double(step * config.dt) << ',' << format_double(state.norm()) << ','
        << format_double(ek) << ',' << format_double(ep) << ',' << format_double(ek + ep);
    for (double q : displacement_expectations(state, config.grid())) csv << ',' << format_double(q);
    csv << '\n';
    ++result.rows;
  };

  write_row(0);
  for (int step = 1; step <= config.steps; ++step) {
    op.evolve_fused(state, config.order, config.dt, 1);
    write_row(step);
  }
  if (!csv) throw ConfigError("failed writing '" + result.observables_path + "'");
  write_checkpoint(result.checkpoint_path, state);
  return result;
}

CorrelatorResult cmd_correlator(const RunConfig& config) {
  const auto dir = prepare_output(config);
  const SiteLayout layout{config.model.n_sites, config.bits};
  check_state_capacity(layout, config.max_qubits);
  if (config.evolution == EvolutionMode::kExact) check_oracle_capacity(layout);

  // Validates time lags before any allocation.
  for (double t : config.times) {
    if (config.evolution == EvolutionMode::kTrotter) (void)steps_for_duration(t, config.dt);
  }

  auto psi0 = initial_state(config);
  const GridSpec grid = config.grid();
  std::unique_ptr<TimeEvolution> evolution;
  if (config.evolution == EvolutionMode::kExact) {
    evolution = std::make_unique<ExactEvolution>(config.model, grid);
  } else {
    auto op = std::make_shared<const SplitOperator>(config.model, grid, propagator_options(config));
    evolution = std::make_unique<TrotterEvolution>(op, config.order, config.dt);
  }

  CorrelatorSeries series(*evolution, grid, weights(config.model.n_sites, config.mode_k), std::move(psi0));
  SeriesOptions opt;
  opt.times = config.times;
  opt.estimators = config.estimators;
  opt.h = config.h;
  opt.shots = config.shots;
  opt.seed = config.seed;
  opt.jobs = config.jobs;

  CorrelatorResult result;
  result.points = series.run(opt);
  result.csv_path = (dir / "correlator.csv").string();
  const std::uint64_t shots = config.shots ? static_cast<std::uint64_t>(*config.shots) : 0;
  result.n_exec = execution_count(config.times.size(), shots);

  auto csv = open_output(result.csv_path);
  csv << "t,h,estimator,re,im,bias_bound,shots,seed,n_exec\n";
  for (const auto& p : result.points) {
    const auto& c = p.correlator;
    csv << format_double(c.time_lag) << ',' << format_double(c.h) << ',' << to_string(c.estimator) << ','
        << format_double(c.value.real()) << ',' << format_double(c.value.imag()) << ','
        << format_double(c.bias_bound) << ',';
    if (config.shots) csv << *config.shots << ',' << config.seed << ',' << execution_count(1, shots);
    else csv << ",,0";
    csv << '\n';
  }
  if (!csv) throw ConfigError("failed writing '" + result.csv_path + "'");
  return result;
}

ResourceReport cmd_resources(const RunConfig& config, bool table1, std::ostream& out) {
  const auto dir = prepare_output(config);
  const auto report = resource_report(config.model.n_sites, config.bits, config.ancilla_budget(), config.order,
                                      config.resource_time, config.epsilon, config.ancilla_mode);
  const auto json = to_json_text(report);
  auto file = open_output(dir / "resources.json");
  file << json << '\n';
  out << json << '\n';
  if (table1) {
    out << "N,b,a,qubits_serial,qubits_parallel\n";
    for (const auto& row : table_one_rows()) {
      out << row.n_sites << ',' << row.bits << ',' << row.ancilla << ',' << row.serial << ',' << row.parallel << '\n';
    }
  }
  return report;
}

bool ValidateResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

ValidateResult cmd_validate(const RunConfig& config, std::ostream& out) {
  const auto dir = prepare_output(config);
  ValidateResult result;
  result.checks = run_validation_suite(config);
  result.summary_path = (dir / "validation.json").string();

  auto file = open_output(result.summary_path);
  file << "{\n  \"passed\": " << (result.passed() ? "true" : "false") << ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < result.checks.size(); ++i) {
    const auto& c = result.checks[i];
    file << "    {\"name\": \"" << json_escape(c.name) << "\", \"passed\": " << (c.passed ? "true" : "false")
         << ", \"detail\": \"" << json_escape(c.detail) << "\"}" << (i + 1 < result.checks.size() ? "," : "") << '\n';
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  file << "  ]\n}\n";
  return result;
}

int run_command(const std::string& name, const RunConfig& config, bool table1, std::ostream& out,
                std::ostream& err) {
  try {
    if (name == "simulate") {
      const auto r = cmd_simulate(config);
      out << "wrote " << r.observables_path << " (" << r.rows << " rows) and " << r.checkpoint_path << '\n';
    } else if (name == "correlator") {
      const auto r = cmd_correlator(config);
      out << "wrote " << r.csv_path << " (" << r.points.size() << " rows)\nN_exec=" << r.n_exec << '\n';
    } else if (name == "resources") {
      cmd_resources(config, table1, out);
    } else if (name == "validate") {
      const auto r = cmd_validate(config, out);
      if (!r.passed()) {
        err << "validation failed; see " << r.summary_path << '\n';
        return kExitValidationFailure;
      }
    } else {
      err << "unknown command '" << name << "'\n";
      return kExitConfigError;
    }
  } catch (const CapacityError& e) {
    err << "capacity guard: " << e.what() << '\n';
    return kExitCapacityGuard;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace fputq
