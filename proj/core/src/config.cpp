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

#include "fputq/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string_view>

#include "fputq/errors.hpp"

namespace fputq {

std::string_view to_string(EvolutionMode mode) { return mode == EvolutionMode::kTrotter ? "trotter" : "exact"; }

GridSpec RunConfig::grid() const {
  GridSpec g;
  g.bits_per_site = bits;
  g.q_max = q_max ? *q_max : default_q_max(model, bits);
  g.encoding = encoding;
  return g;
}

double RunConfig::gaussian_width() const { return width ? *width : default_gaussian_width(model); }

std::vector<double> RunConfig::initial_centers() const {
  const double mid = grid_center(grid());
  const int n = model.n_sites;
  std::vector<double> c(static_cast<std::size_t>(n), mid);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (int j = 0; j < n; ++j) {
    c[j] += displacement * std::cos(two_pi * static_cast<double>((static_cast<long>(j) * mode_k) % n) / n);
  }
  return c;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::string_view v = trim(value);
  if (v.starts_with('[') && v.ends_with(']')) v = trim(v.substr(1, v.size() - 2));
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = v.find(',', start);
    out.emplace_back(trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    throw InputError("'" + v + "' is not a number");
  }
  if (used != v.size() || !std::isfinite(d)) throw InputError("'" + v + "' is not a finite number");
  return d;
}

long long to_integer(const std::string& v) {
  std::size_t used = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw InputError("'" + v + "' is not an integer");
  }
  if (used != v.size()) throw InputError("'" + v + "' is not an integer");
  return i;
}

int to_int(const std::string& v, long long lo, long long hi) {
  const auto i = to_integer(v);
  if (i < lo || i > hi) {
    throw InputError("value " + v + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(i);
}

double positive(const std::string& v) {
  const double d = to_double(v);
  if (!(d > 0.0)) throw InputError("value " + v + " must be positive");
  return d;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InputError("'" + v + "' is not a boolean");
}

bool is_unset(const std::string& v) { return v.empty() || v == "default" || v == "auto"; }

using Setter = std::function<void(RunConfig&, const std::string&)>;

struct KeySpec {
  std::string name;
  std::string help;
  Setter set;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"model.n_sites", "number of lattice sites N >= 2",
       [](RunConfig& c, const std::string& v) { c.model.n_sites = to_int(v, 2, 64); }},
      {"model.mass", "site mass m", [](RunConfig& c, const std::string& v) { c.model.mass = positive(v); }},
      {"model.kappa", "harmonic spring constant", [](RunConfig& c, const std::string& v) { c.model.kappa = positive(v); }},
      {"model.beta", "quartic coupling (>= 0)",
       [](RunConfig& c, const std::string& v) {
         const double b = to_double(v);
         if (b < 0.0) throw InputError("beta must be non-negative");
         c.model.beta = b;
       }},
      {"model.lattice_spacing", "lattice spacing a",
       [](RunConfig& c, const std::string& v) { c.model.lattice_spacing = positive(v); }},
      {"model.hbar", "reduced Planck constant", [](RunConfig& c, const std::string& v) { c.model.hbar = positive(v); }},
      {"grid.bits", "qubits per site b",
       [](RunConfig& c, const std::string& v) { c.bits = to_int(v, GridSpec::kMinBits, GridSpec::kMaxBits); }},
      {"grid.q_max", "half-range of the displacement grid (default: automatic)",
       [](RunConfig& c, const std::string& v) {
         if (is_unset(v)) c.q_max.reset();
         else c.q_max = positive(v);
       }},
      {"grid.encoding", "offset | twos",
       [](RunConfig& c, const std::string& v) { c.encoding = parse_encoding(v); }},
      {"trotter.order", "first | second | suzuki4",
       [](RunConfig& c, const std::string& v) { c.order = parse_trotter_order(v); }},
      {"trotter.dt", "time step", [](RunConfig& c, const std::string& v) { c.dt = positive(v); }},
      {"trotter.steps", "number of simulate steps (>= 0)",
       [](RunConfig& c, const std::string& v) { c.steps = to_int(v, 0, 100000000); }},
      {"correlator.mode_k", "mode index k in [0, N)",
       [](RunConfig& c, const std::string& v) { c.mode_k = to_int(v, 0, 1 << 20); }},
      {"correlator.h", "finite-difference step", [](RunConfig& c, const std::string& v) { c.h = positive(v); }},
      {"correlator.estimator", "comma list of rect | central | richardson",
       [](RunConfig& c, const std::string& v) {
         c.estimators.clear();
         for (const auto& e : split_list(v)) c.estimators.push_back(parse_estimator(e));
         if (c.estimators.empty()) throw InputError("at least one estimator is required");
       }},
      {"correlator.times", "comma list of non-decreasing time lags (multiples of dt)",
       [](RunConfig& c, const std::string& v) {
         c.times.clear();
         for (const auto& t : split_list(v)) {
           const double d = to_double(t);
           if (d < 0.0) throw InputError("time " + t + " is negative");
           if (!c.times.empty() && d < c.times.back()) throw InputError("times must be non-decreasing");
           c.times.push_back(d);
         }
       }},
      {"correlator.shots", "shots per generating value (unset: exact values)",
       [](RunConfig& c, const std::string& v) {
         if (is_unset(v)) c.shots.reset();
         else c.shots = to_int(v, 1, 1 << 30);
       }},
      {"correlator.seed", "base seed for shot sampling",
       [](RunConfig& c, const std::string& v) {
         const auto s = to_integer(v);
         if (s < 0) throw InputError("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"correlator.evolution", "trotter | exact",
       [](RunConfig& c, const std::string& v) {
         if (v == "trotter") c.evolution = EvolutionMode::kTrotter;
         else if (v == "exact") c.evolution = EvolutionMode::kExact;
         else throw InputError("evolution must be trotter or exact, got '" + v + "'");
       }},
      {"state.width", "Gaussian width sigma (default: automatic)",
       [](RunConfig& c, const std::string& v) {
         if (is_unset(v)) c.width.reset();
         else c.width = positive(v);
       }},
      {"state.displacement", "standing-wave amplitude along mode k",
       [](RunConfig& c, const std::string& v) { c.displacement = to_double(v); }},
      {"resources.ancilla", "kinetic ancilla budget a (default 2b)",
       [](RunConfig& c, const std::string& v) {
         if (is_unset(v)) c.ancilla.reset();
         else c.ancilla = to_int(v, 1, 1 << 20);
       }},
      {"resources.time", "evolution time t for the step count",
       [](RunConfig& c, const std::string& v) { c.resource_time = positive(v); }},
      {"resources.epsilon", "target accuracy in (0, 1)",
       [](RunConfig& c, const std::string& v) {
         const double e = to_double(v);
         if (!(e > 0.0 && e < 1.0)) throw InputError("epsilon must lie in (0, 1)");
         c.epsilon = e;
       }},
      {"resources.mode", "serial | parallel",
       [](RunConfig& c, const std::string& v) { c.ancilla_mode = parse_ancilla_mode(v); }},
      {"limits.max_qubits", "statevector ceiling in qubits",
       [](RunConfig& c, const std::string& v) { c.max_qubits = to_int(v, 1, 40); }},
      {"validate.inject_dft_sign_fault", "negative control: flip the DFT sign",
       [](RunConfig& c, const std::string& v) { c.inject_dft_sign_fault = to_bool(v); }},
      {"output.directory", "directory for written artifacts",
       [](RunConfig& c, const std::string& v) {
         if (v.empty()) throw InputError("output directory must not be empty");
         c.output_directory = v;
       }},
      {"output.format", "csv",
       [](RunConfig& c, const std::string& v) {
         if (v != "csv") throw InputError("only the csv format is supported, got '" + v + "'");
         c.output_format = v;
       }},
      {"run.jobs", "worker threads for correlator evaluation",
       [](RunConfig& c, const std::string& v) { c.jobs = to_int(v, 1, 1024); }},
  };
  return specs;
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : key_specs()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

/// Cross-field checks, reported against the line of the key that last set the field.
void validate_config(const RunConfig& c, const std::map<std::string, int>& lines) {
  auto line_of = [&](std::initializer_list<const char*> keys) {
    int best = 0;
    for (const char* k : keys) {
      if (auto it = lines.find(k); it != lines.end()) best = std::max(best, it->second);
    }
    return best;
  };
  if (c.mode_k >= c.model.n_sites) {
    throw ConfigError("correlator.mode_k = " + std::to_string(c.mode_k) + " must be below n_sites = " +
                          std::to_string(c.model.n_sites),
                      line_of({"correlator.mode_k", "model.n_sites"}));
  }
  if (c.ancilla && *c.ancilla < c.bits) {
    throw ConfigError("resources.ancilla must be >= grid.bits", line_of({"resources.ancilla", "grid.bits"}));
  }
  for (double t : c.times) {
    try {
      (void)steps_for_duration(t, c.dt);
    } catch (const InputError& e) {
      throw ConfigError(std::string("correlator.times: ") + e.what(), line_of({"correlator.times", "trotter.dt"}));
    }
  }
  try {
    c.model.validate();
    c.grid().validate();
  } catch (const InputError& e) {
    throw ConfigError(e.what(), line_of({"model.n_sites", "grid.bits", "grid.q_max"}));
  }
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::map<std::string, int> lines;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError("empty section name", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (key.find('.') == std::string::npos) {
      if (section.empty()) throw ConfigError("key '" + key + "' outside any section", line_no);
      key = section + "." + key;
    }
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) throw ConfigError("unknown key '" + key + "'", line_no);
    try {
      spec->set(c, value);
    } catch (const InputError& e) {
      throw ConfigError(key + ": " + e.what(), line_no);
    }
    lines[key] = line_no;
  }
  validate_config(c, lines);
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const auto keys = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : key_specs()) out.emplace_back(k.name, k.help);
    return out;
  }();
  return keys;
}

}  // namespace fputq
