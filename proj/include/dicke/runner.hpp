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

#ifndef DICKE_RUNNER_HPP
#define DICKE_RUNNER_HPP

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/error_bounds.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/observables.hpp"

namespace dicke {

inline constexpr const char* kWorkersEnv = "DICKE_SIM_WORKERS";

inline constexpr const char* kCsvColumns =
    "t_sim,g_t,fidelity,n_photon_trotter,n_photon_ideal,survival,leakage,trace_error";

/// One (N, n) combination of a configuration.
struct Job {
  int n_qubits = 2;
  int n_trotter = 7;
};

/// Jobs in deterministic order: N outer, n inner.
inline std::vector<Job> expand_jobs(const RunConfig& c) {
  std::vector<Job> jobs;
  for (int n : c.n_qubits) {
    for (int k : c.n_trotter) jobs.push_back({n, k});
  }
  return jobs;
}

/// Largest top-two-level population along the noiseless Trotter and ideal paths.
inline double noiseless_leakage(const TrotterSchedule& s) {
  const StateVector psi0 = ground_state(s.space);
  const Trajectory traj = execute_unitary(s, psi0);
  const detail::IdealPropagator ideal(s);
  double worst = 0.0;
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const Vector& trot = traj.states[k];
    const Vector exact = ideal.unitary_at(traj.times[k]) * psi0.amplitudes;
    worst = std::max(worst, leakage(DensityMatrix(s.space, trot * trot.adjoint())));
    worst = std::max(worst, leakage(DensityMatrix(s.space, exact * exact.adjoint())));
  }
  return worst;
}

/// Fixed n_max, or the smallest n_max_start + 5k keeping leakage below leakage_tol.
inline int resolve_fock_cutoff(const RunConfig& c, const Job& job) {
  if (c.fock_cutoff) return *c.fock_cutoff;
  for (int m = c.n_max_start; m <= c.n_max_limit; m += 5) {
    const HilbertSpace space = build_space(job.n_qubits, m);
    if (noiseless_leakage(build_schedule(c, space, job.n_qubits, job.n_trotter)) < c.leakage_tol) return m;
  }
  throw NumericalError("n_max = auto did not reach leakage < " + detail::format_double(c.leakage_tol) +
                       " below n_max_limit = " + std::to_string(c.n_max_limit));
}

struct JobResult {
  Job job;
  int fock_cutoff = 0;
  SimulationResult result;
};

inline JobResult run_job(const RunConfig& c, const Job& job) {
  JobResult out{job, resolve_fock_cutoff(c, job), {}};
  const HilbertSpace space = build_space(job.n_qubits, out.fock_cutoff);
  const TrotterSchedule s = build_schedule(c, space, job.n_qubits, job.n_trotter);
  const DensityMatrix rho0 = DensityMatrix::pure(ground_state(space));
  RunOptions opts;
  opts.ideal_with_noise = c.ideal_with_noise;
  opts.record_segments = c.record_segments;
  out.result = run_schedule(s, rho0, c.noise, c.integrator, opts);
  return out;
}

/// Config of a single job with every list collapsed and n_max resolved.
inline RunConfig job_config(RunConfig c, const JobResult& r) {
  c.n_qubits = {r.job.n_qubits};
  c.n_trotter = {r.job.n_trotter};
  c.fock_cutoff = r.fock_cutoff;
  return c;
}

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline void write_preamble(std::ostream& os, const char* kind, const RunConfig& c, bool reproducible) {
  os << "# dicke-sim " << kind << "\n";
  if (!reproducible) os << "# generated: " << utc_timestamp() << "\n";
  os << "# initial_state: free ground state (all qubits down, vacuum)\n";
  for (const auto& [k, v] : resolved_entries(c)) os << "# config: " << k << " = " << v << "\n";
}

}  // namespace detail

/// Time-series CSV: preamble of comments, then the fixed columns.
inline void write_csv(std::ostream& os, const RunConfig& c, const JobResult& r, bool reproducible) {
  const SimulationResult& s = r.result;
  RunConfig resolved = job_config(c, r);
  resolved.output.clear();
  detail::write_preamble(os, "run", resolved, reproducible);
  os << kCsvColumns << "\n";
  using detail::format_double;
  for (size_t k = 0; k < s.size(); ++k) {
    os << format_double(s.time_grid[k].t_sim) << ',' << format_double(s.time_grid[k].g_t) << ','
       << format_double(s.fidelity[k]) << ',' << format_double(s.photon_number_trotter[k]) << ','
       << format_double(s.photon_number_ideal[k]) << ',' << format_double(s.survival[k]) << ','
       << format_double(s.leakage[k]) << ',' << format_double(s.trace_error[k]) << "\n";
  }
}

/// Rebuild the configuration echoed in a CSV produced by write_csv or write_sweep_csv.
inline RunConfig config_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string text;
  const std::string tag = "# config: ";
  while (std::getline(in, line)) {
    if (line.rfind(tag, 0) == 0) text += line.substr(tag.size()) + "\n";
  }
  if (text.empty()) throw ConfigError("no echoed configuration found");
  return load_config(text);
}

/// Output path of one job: the configured path, with _N<N>_n<n> inserted
/// before the extension when the configuration expands into several jobs.
inline std::string job_output_path(const std::string& path, const Job& job, bool multiple) {
  if (!multiple) return path;
  const std::string suffix = "_N" + std::to_string(job.n_qubits) + "_n" + std::to_string(job.n_trotter);
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

/// Worker count from DICKE_SIM_WORKERS (default 1).
inline int worker_count() {
  const char* env = std::getenv(kWorkersEnv);
  if (env == nullptr || *env == '\0') return 1;
  int n = 0;
  const std::string s(env);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) {
    throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
  }
  return n;
}

/// Runs task(i) for i in [0, count) on `workers` threads. Results are stored by
/// index, so completion order never affects the output; the first failure in
/// index order is rethrown.
inline void parallel_for(size_t count, int workers, const std::function<void(size_t)>& task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

enum class SweepAxis { n_trotter, n_qubits, coupling };

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "n_trotter") return SweepAxis::n_trotter;
  if (s == "N") return SweepAxis::n_qubits;
  if (s == "coupling") return SweepAxis::coupling;
  throw ConfigError("unknown sweep axis '" + s + "' (n_trotter, N, coupling)");
}

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::n_trotter: return "n_trotter";
    case SweepAxis::n_qubits: return "N";
    case SweepAxis::coupling: return "coupling";
  }
  return "?";
}

struct SweepRow {
  double value = 0.0;
  JobResult run;
  ErrorReport error;
};

inline std::vector<SweepRow> sweep(const RunConfig& base, SweepAxis axis, const std::vector<double>& values,
                                   int workers = 1) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (base.n_qubits.size() != 1 && axis != SweepAxis::n_qubits) throw ConfigError("sweep needs a single N");
  if (base.n_trotter.size() != 1 && axis != SweepAxis::n_trotter) throw ConfigError("sweep needs a single n_trotter");
  std::vector<RunConfig> configs;
  for (double v : values) {
    RunConfig c = base;
    if (axis == SweepAxis::coupling) {
      c.coupling = v;
    } else {
      if (v != std::round(v)) throw ConfigError(std::string(axis_name(axis)) + " values must be integers");
      (axis == SweepAxis::n_trotter ? c.n_trotter : c.n_qubits) = {static_cast<int>(v)};
    }
    validate(c);
    configs.push_back(std::move(c));
  }
  std::vector<SweepRow> rows(values.size());
  parallel_for(values.size(), workers, [&](size_t i) {
    const RunConfig& c = configs[i];
    const Job job{c.n_qubits.front(), c.n_trotter.front()};
    rows[i].value = values[i];
    rows[i].run = run_job(c, job);
    const HilbertSpace space = build_space(job.n_qubits, rows[i].run.fock_cutoff);
    const TrotterSchedule s = build_schedule(c, space, job.n_qubits, job.n_trotter);
    rows[i].error = error_report(s, model_params(c, job.n_qubits), ground_state(space));
  });
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const RunConfig& c, SweepAxis axis, const std::vector<SweepRow>& rows,
                            bool reproducible) {
  RunConfig echo = c;
  echo.output.clear();
  detail::write_preamble(os, "sweep", echo, reproducible);
  os << "# sweep_axis: " << axis_name(axis) << "\n";
  os << axis_name(axis)
     << "_value,N,n_trotter,n_max,final_fidelity,measured_error,leading_term_norm,cauchy_schwarz_bound\n";
  using detail::format_double;
  for (const auto& r : rows) {
    os << format_double(r.value) << ',' << r.run.job.n_qubits << ',' << r.run.job.n_trotter << ','
       << r.run.fock_cutoff << ',' << format_double(r.run.result.fidelity.back()) << ','
       << format_double(r.error.measured_error) << ',' << format_double(r.error.leading_term_norm) << ','
       << format_double(r.error.cauchy_schwarz_bound) << "\n";
  }
}

}  // namespace dicke

#endif  // DICKE_RUNNER_HPP
