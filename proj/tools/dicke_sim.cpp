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

// dicke-sim: command-line driver.
//
//   dicke-sim run [--config F] [--preset NAME] [--output F] [--reproducible]
//   dicke-sim sweep --config F --axis {n_trotter|N|coupling} --values v1,v2,...
//   dicke-sim verify [--filter MODULE] [--inject-fault anti-tc-sign]
//   dicke-sim schedule-dump --config F
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure, 4 verification failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dicke/dicke.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericError = 3;
constexpr int kVerifyFailure = 4;

dicke::RunConfig resolve(const std::string& config_path, const std::string& preset_name) {
  if (config_path.empty() && preset_name.empty()) throw dicke::ConfigError("pass --config, --preset or both");
  dicke::RunConfig base = preset_name.empty() ? dicke::RunConfig{} : dicke::preset(preset_name);
  if (config_path.empty()) return base;
  return dicke::load_config_file(config_path, std::move(base));
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dicke::ConfigError("cannot open output file '" + path + "'");
  emit(out);
  if (!out) throw dicke::ConfigError("failed writing '" + path + "'");
}

int cmd_run(const std::string& config_path, const std::string& preset_name, const std::string& output,
            bool reproducible) {
  dicke::RunConfig cfg = resolve(config_path, preset_name);
  if (!output.empty()) cfg.output = output;
  const std::vector<dicke::Job> jobs = dicke::expand_jobs(cfg);
  const bool multiple = jobs.size() > 1;
  if (multiple && (cfg.output.empty() || cfg.output == "-")) {
    throw dicke::ConfigError("configuration expands into " + std::to_string(jobs.size()) +
                             " runs; pass --output to write one file per run");
  }
  std::vector<dicke::JobResult> results(jobs.size());
  dicke::parallel_for(jobs.size(), dicke::worker_count(), [&](size_t i) { results[i] = dicke::run_job(cfg, jobs[i]); });
  for (const auto& r : results) {
    const std::string path = dicke::job_output_path(cfg.output, r.job, multiple);
    write_to(path, [&](std::ostream& os) { dicke::write_csv(os, cfg, r, reproducible); });
    if (!path.empty() && path != "-") std::cerr << "wrote " << path << "\n";
  }
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& preset_name, const std::string& axis_name,
              const std::string& values_text, const std::string& output, bool reproducible) {
  const dicke::RunConfig cfg = resolve(config_path, preset_name);
  const dicke::SweepAxis axis = dicke::parse_axis(axis_name);
  if (dicke::detail::trim(values_text).empty()) throw dicke::ConfigError("--values must not be empty");
  const std::vector<double> values = dicke::detail::parse_doubles("--values", values_text);
  const auto rows = dicke::sweep(cfg, axis, values, dicke::worker_count());
  write_to(output.empty() ? cfg.output : output,
           [&](std::ostream& os) { dicke::write_sweep_csv(os, cfg, axis, rows, reproducible); });
  return kOk;
}

int cmd_verify(const std::string& filter, const std::string& fault) {
  if (!fault.empty()) {
    if (fault != "anti-tc-sign") throw dicke::ConfigError("unknown fault '" + fault + "' (anti-tc-sign)");
    dicke::fault::flip_anti_tc_sign = true;
  }
  const auto results = dicke::run_checks(filter);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(13) << r.module << ' ' << r.name
              << "  measured=" << std::setprecision(3) << std::scientific << r.measured
              << " threshold=" << r.threshold << std::defaultfloat << "\n";
    failed += r.passed ? 0 : 1;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kVerifyFailure;
}

int cmd_schedule_dump(const std::string& config_path, const std::string& preset_name) {
  const dicke::RunConfig cfg = resolve(config_path, preset_name);
  for (const dicke::Job& job : dicke::expand_jobs(cfg)) {
    const int cutoff = dicke::resolve_fock_cutoff(cfg, job);
    const dicke::HilbertSpace space = dicke::build_space(job.n_qubits, cutoff);
    std::cout << dicke::build_schedule(cfg, space, job.n_qubits, job.n_trotter).dump();
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital-analog simulation of Dicke models"};
  app.require_subcommand(1);

  std::string config_path, preset_name, output, axis, values, filter, fault;
  bool reproducible = false;

  auto* run = app.add_subcommand("run", "Run a configuration or preset and write the time-series CSV");
  run->add_option("--config", config_path, "Key-value or JSON config file");
  run->add_option("--preset", preset_name, "Preset providing defaults (dicke-dsc-fidelity, dicke-usc-photons, "
                                           "pulsed-dsc-fidelity)");
  run->add_option("--output", output, "Output CSV path (default: stdout)");
  run->add_flag("--reproducible", reproducible, "Omit the timestamp comment");

  auto* sw = app.add_subcommand("sweep", "Sweep one axis and write one summary row per value");
  sw->add_option("--config", config_path, "Key-value or JSON config file");
  sw->add_option("--preset", preset_name, "Preset providing defaults");
  sw->add_option("--axis", axis, "n_trotter, N or coupling")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--output", output, "Output CSV path (default: stdout)");
  sw->add_flag("--reproducible", reproducible, "Omit the timestamp comment");

  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  ver->add_option("--filter", filter, "Only checks of this module");
  ver->add_option("--inject-fault", fault, "Mutation smoke test (anti-tc-sign)");

  auto* dump = app.add_subcommand("schedule-dump", "Print the segment list of a configuration");
  dump->add_option("--config", config_path, "Key-value or JSON config file");
  dump->add_option("--preset", preset_name, "Preset providing defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, preset_name, output, reproducible);
    if (sw->parsed()) return cmd_sweep(config_path, preset_name, axis, values, output, reproducible);
    if (ver->parsed()) return cmd_verify(filter, fault);
    if (dump->parsed()) return cmd_schedule_dump(config_path, preset_name);
  } catch (const dicke::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const dicke::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericError;
  }
  return kOk;
}
