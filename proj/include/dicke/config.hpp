// Copyright 2026 The dicke-sim Authors
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

#ifndef DICKE_CONFIG_HPP
#define DICKE_CONFIG_HPP

// Run configuration.
//
// Grammar of the key-value format (UTF-8):
//
//   file    := { line '\n' }
//   line    := [ key ws? '=' ws? value ] [ '#' comment ]
//   value   := item { ',' item }
//
// Keys are case-sensitive, may appear once, and must be listed in
// config_keys(). A file whose first non-blank character is '{' is parsed as a
// JSON object with the same keys; arrays stand for comma lists.
//
// Frequencies are ratios to the simulated mode frequency, which is 1 unless
// mode_freq says otherwise. t_max is in units of 1/g.

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dicke/hamiltonians.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/trotter.hpp"

namespace dicke {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Variant model = Variant::dicke;
  std::vector<int> n_qubits{2};       // a list expands into one run per entry
  std::optional<int> fock_cutoff;     // empty means "auto"
  std::vector<int> n_trotter{7};      // a list expands into one run per entry
  double t_max = 1.0;                 // in units of 1/g
  std::vector<double> qubit_freq{0.05};
  double mode_freq = 1.0;
  double coupling = 1.5;              // g = lambda / sqrt(N)
  double bias = 0.0;
  double pulse_lambda1 = 0.0;         // lambda1 / sqrt(N)
  double pulse_alpha = 1.0;
  double pulse_tau = 1.0;
  double pulse_period = 1.0;
  std::vector<double> level_energies;
  NoiseParams noise;
  IntegratorConfig integrator;
  bool ideal_with_noise = false;
  bool record_segments = false;
  double leakage_tol = 1e-4;          // auto n_max target
  int n_max_start = 15;
  int n_max_limit = 60;
  std::string output;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "model",         "N",           "n_max",          "n_trotter",       "t_max",
      "qubit_freq",    "mode_freq",   "coupling",       "bias",            "pulse_lambda1",
      "pulse_alpha",   "pulse_tau",   "pulse_period",   "level_energies",  "kappa",
      "gamma_s",       "gamma_d",     "dt",             "stability_limit", "gate_duration",
      "ideal_with_noise", "record_segments", "leakage_tol", "n_max_start", "n_max_limit",
      "output"};
  return keys;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!v.empty() && v.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + key + "': '" + s + "' is not a finite number");
  }
  return v;
}

inline int parse_int(const std::string& key, const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("key '" + key + "': '" + s + "' is not an integer");
  }
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "': '" + s + "' is not a boolean");
}

inline std::vector<double> parse_doubles(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

inline std::vector<int> parse_ints(const std::string& key, const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) out.push_back(parse_int(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

inline Variant parse_model(const std::string& s) {
  for (Variant v : {Variant::dicke, Variant::biased, Variant::pulsed, Variant::fermi_bose_analog, Variant::broadband}) {
    if (s == to_string(v)) return v;
  }
  throw ConfigError("unknown model '" + s + "' (dicke, biased, pulsed, fermi_bose_analog, broadband)");
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(v[i]);
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace detail

using KeyValues = std::map<std::string, std::string>;

/// Parse the key-value grammar; rejects unknown and repeated keys.
inline KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

/// JSON object with the same keys; arrays become comma lists.
inline KeyValues parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("JSON config must be an object");
  const auto& keys = config_keys();
  auto scalar = [](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return detail::format_double(v.get<double>());
    throw ConfigError("key '" + key + "': unsupported JSON value");
  };
  KeyValues kv;
  for (const auto& [key, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown key '" + key + "'");
    if (v.is_array()) {
      std::string joined;
      for (size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + scalar(key, v[i]);
      kv[key] = joined;
    } else {
      kv[key] = scalar(key, v);
    }
  }
  return kv;
}

inline KeyValues parse_config_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_key_values(text);
}

/// Overwrite `cfg` with every key present in `kv`.
inline void apply_key_values(RunConfig& cfg, const KeyValues& kv) {
  using namespace detail;
  for (const auto& [key, v] : kv) {
    if (key == "model") cfg.model = parse_model(v);
    else if (key == "N") cfg.n_qubits = parse_ints(key, v);
    else if (key == "n_max") cfg.fock_cutoff = v == "auto" ? std::nullopt : std::optional<int>(parse_int(key, v));
    else if (key == "n_trotter") cfg.n_trotter = parse_ints(key, v);
    else if (key == "t_max") cfg.t_max = parse_double(key, v);
    else if (key == "qubit_freq") cfg.qubit_freq = parse_doubles(key, v);
    else if (key == "mode_freq") cfg.mode_freq = parse_double(key, v);
    else if (key == "coupling") cfg.coupling = parse_double(key, v);
    else if (key == "bias") cfg.bias = parse_double(key, v);
    else if (key == "pulse_lambda1") cfg.pulse_lambda1 = parse_double(key, v);
    else if (key == "pulse_alpha") cfg.pulse_alpha = parse_double(key, v);
    else if (key == "pulse_tau") cfg.pulse_tau = parse_double(key, v);
    else if (key == "pulse_period") cfg.pulse_period = parse_double(key, v);
    else if (key == "level_energies") cfg.level_energies = v.empty() ? std::vector<double>{} : parse_doubles(key, v);
    else if (key == "kappa") cfg.noise.kappa = parse_double(key, v);
    else if (key == "gamma_s") cfg.noise.gamma_s = parse_double(key, v);
    else if (key == "gamma_d") cfg.noise.gamma_d = parse_double(key, v);
    else if (key == "dt") cfg.integrator.dt = parse_double(key, v);
    else if (key == "stability_limit") cfg.integrator.stability_limit = parse_double(key, v);
    else if (key == "gate_duration") cfg.integrator.gate_duration = parse_double(key, v);
    else if (key == "ideal_with_noise") cfg.ideal_with_noise = parse_bool(key, v);
    else if (key == "record_segments") cfg.record_segments = parse_bool(key, v);
    else if (key == "leakage_tol") cfg.leakage_tol = parse_double(key, v);
    else if (key == "n_max_start") cfg.n_max_start = parse_int(key, v);
    else if (key == "n_max_limit") cfg.n_max_limit = parse_int(key, v);
    else if (key == "output") cfg.output = v;
    else throw ConfigError("unknown key '" + key + "'");
  }
}

/// Schema checks that do not depend on a particular (N, n) variant.
inline void validate(const RunConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be > 0");
  };
  for (int n : c.n_qubits) {
    if (n < 1 || n > 10) throw ConfigError("N must be in [1, 10]");
  }
  for (int n : c.n_trotter) {
    if (n < 1) throw ConfigError("n_trotter must be >= 1");
  }
  if (c.fock_cutoff && *c.fock_cutoff < 1) throw ConfigError("n_max must be >= 1 or auto");
  positive(c.t_max, "t_max");
  positive(c.mode_freq, "mode_freq");
  positive(c.coupling, "coupling");
  positive(c.leakage_tol, "leakage_tol");
  if (c.n_max_start < 2 || c.n_max_limit < c.n_max_start) throw ConfigError("need 2 <= n_max_start <= n_max_limit");
  try {
    c.noise.validate();
    c.integrator.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (int n : c.n_qubits) {
    if (c.qubit_freq.size() != 1 && c.qubit_freq.size() != static_cast<size_t>(n)) {
      throw ConfigError("qubit_freq must have 1 or N entries");
    }
  }
  switch (c.model) {
    case Variant::pulsed:
      positive(c.pulse_alpha, "pulse_alpha");
      positive(c.pulse_tau, "pulse_tau");
      positive(c.pulse_period, "pulse_period");
      if (std::abs(c.pulse_alpha * c.pulse_tau - 1.0) > 1e-12) throw ConfigError("pulse_alpha * pulse_tau must be 1");
      if (c.bias != 0.0) throw ConfigError("the pulsed model takes no bias");
      break;
    case Variant::fermi_bose_analog:
      if (c.level_energies.empty()) throw ConfigError("fermi_bose_analog needs level_energies");
      for (int n : c.n_qubits) {
        if (static_cast<size_t>(n) != c.level_energies.size()) {
          throw ConfigError("fermi_bose_analog needs N == number of level_energies");
        }
      }
      break;
    case Variant::broadband:
      if (c.qubit_freq.size() < 2) throw ConfigError("broadband needs one qubit_freq per qubit");
      break;
    default:
      break;
  }
  if (c.model != Variant::biased && c.bias != 0.0) throw ConfigError("bias is only valid for model = biased");
  if (c.ideal_with_noise && c.record_segments) {
    throw ConfigError("record_segments needs the noiseless ideal reference");
  }
}

inline RunConfig load_config(std::string_view text, RunConfig base = {}) {
  apply_key_values(base, parse_config_text(text));
  validate(base);
  return base;
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str(), std::move(base));
}

/// Every key with its resolved value, in config_keys() order. Re-parsing the
/// result gives back the same configuration.
inline std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
  using detail::format_double;
  using detail::join;
  return {{"model", to_string(c.model)},
          {"N", join(c.n_qubits)},
          {"n_max", c.fock_cutoff ? std::to_string(*c.fock_cutoff) : "auto"},
          {"n_trotter", join(c.n_trotter)},
          {"t_max", format_double(c.t_max)},
          {"qubit_freq", join(c.qubit_freq)},
          {"mode_freq", format_double(c.mode_freq)},
          {"coupling", format_double(c.coupling)},
          {"bias", format_double(c.bias)},
          {"pulse_lambda1", format_double(c.pulse_lambda1)},
          {"pulse_alpha", format_double(c.pulse_alpha)},
          {"pulse_tau", format_double(c.pulse_tau)},
          {"pulse_period", format_double(c.pulse_period)},
          {"level_energies", join(c.level_energies)},
          {"kappa", format_double(c.noise.kappa)},
          {"gamma_s", format_double(c.noise.gamma_s)},
          {"gamma_d", format_double(c.noise.gamma_d)},
          {"dt", format_double(c.integrator.dt)},
          {"stability_limit", format_double(c.integrator.stability_limit)},
          {"gate_duration", format_double(c.integrator.gate_duration)},
          {"ideal_with_noise", c.ideal_with_noise ? "true" : "false"},
          {"record_segments", c.record_segments ? "true" : "false"},
          {"leakage_tol", format_double(c.leakage_tol)},
          {"n_max_start", std::to_string(c.n_max_start)},
          {"n_max_limit", std::to_string(c.n_max_limit)},
          {"output", c.output}};
}

inline std::string to_key_values(const RunConfig& c) {
  std::string out;
  for (const auto& [k, v] : resolved_entries(c)) out += k + " = " + v + "\n";
  return out;
}

// Presets: units omega = 1, g = lambda / sqrt(N), kappa = 1e-2,
// Gamma_s = Gamma_d = 0.5e-2, initial state = free ground state. Each t_max is
// the longest window over which n_max = 15 keeps the top-two-level population
// below 1e-4 for N <= 3; the survival probability falls to 0.5 or less within it.

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"dicke-dsc-fidelity", "dicke-usc-photons", "pulsed-dsc-fidelity"};
  return names;
}

inline RunConfig preset(const std::string& name) {
  RunConfig c;
  c.n_qubits = {2, 3};
  c.qubit_freq = {0.05};
  c.mode_freq = 1.0;
  c.noise = {0.01, 0.005, 0.005};
  c.fock_cutoff = 15;
  if (name == "dicke-dsc-fidelity") {
    c.model = Variant::dicke;
    c.coupling = 1.5;
    c.n_trotter = {7, 9, 11};
    c.t_max = 0.7;
  } else if (name == "dicke-usc-photons") {
    c.model = Variant::dicke;
    c.coupling = 0.5;
    c.n_trotter = {7};
    c.t_max = 0.85;
  } else if (name == "pulsed-dsc-fidelity") {
    // g1 = g0 + lambda1 alpha = 2 g0 with alpha tau = 1.
    c.model = Variant::pulsed;
    c.coupling = 1.5;
    c.pulse_lambda1 = 0.15;
    c.pulse_alpha = 10.0;
    c.pulse_tau = 0.1;
    c.pulse_period = 1.0;
    c.n_trotter = {13};
    c.t_max = 0.45;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (" + known + ")");
  }
  validate(c);
  return c;
}

/// Model parameters for one qubit count, in omega = 1 units.
inline ModelParams model_params(const RunConfig& c, int n_qubits) {
  const double root_n = std::sqrt(static_cast<double>(n_qubits));
  ModelParams p;
  p.n_qubits = n_qubits;
  p.qubit_freqs = c.qubit_freq;
  p.mode_freq = c.mode_freq;
  p.coupling = c.coupling * root_n;
  p.bias = c.bias;
  if (c.model == Variant::pulsed) {
    p.pulse = PulseParams{c.coupling * root_n, c.pulse_lambda1 * root_n, c.pulse_period, c.pulse_alpha, c.pulse_tau};
  }
  if (c.model == Variant::fermi_bose_analog) {
    p.level_energies = c.level_energies;
    p.qubit_freqs.clear();
    for (double e : c.level_energies) p.qubit_freqs.push_back(2.0 * e);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

inline TrotterSchedule build_schedule(const RunConfig& c, const HilbertSpace& space, int n_qubits, int n_trotter) {
  const ModelParams p = model_params(c, n_qubits);
  const double t = c.t_max / c.coupling;
  switch (c.model) {
    case Variant::dicke:
    case Variant::broadband:
      return dicke_schedule(space, p, t, n_trotter);
    case Variant::biased:
      return biased_schedule(space, p, t, n_trotter);
    case Variant::pulsed:
      return pulsed_schedule(space, p, t, n_trotter);
    case Variant::fermi_bose_analog:
      return fermi_bose_analog_schedule(space, p, t, n_trotter);
  }
  throw ConfigError("unhandled model");
}

}  // namespace dicke

#endif  // DICKE_CONFIG_HPP
