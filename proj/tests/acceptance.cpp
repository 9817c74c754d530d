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


// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Runtime limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/dicke.hpp"

namespace {

using namespace dicke;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

std::string fix(double v, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

ModelParams fig5_params(int n) { return ModelParams::homogeneous(n, 0.05, 1.0, 1.5 * std::sqrt(double(n))); }

// Preset runs are shared by criteria 5, 6 and 9.
struct PresetRun {
  RunConfig config;
  std::vector<JobResult> jobs;
  double seconds = 0.0;
};

std::map<std::string, PresetRun>& preset_runs() {
  static std::map<std::string, PresetRun> runs;
  return runs;
}

const PresetRun& run_preset(const std::string& name) {
  auto& runs = preset_runs();
  auto it = runs.find(name);
  if (it != runs.end()) return it->second;
  const auto start = std::chrono::steady_clock::now();
  PresetRun r;
  r.config = preset(name);
  const auto jobs = expand_jobs(r.config);
  r.jobs.resize(jobs.size());
  parallel_for(jobs.size(), worker_count(), [&](size_t i) { r.jobs[i] = run_job(r.config, jobs[i]); });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return runs.emplace(name, std::move(r)).first->second;
}

const JobResult& find_job(const PresetRun& r, int n_qubits, int n_trotter) {
  for (const auto& j : r.jobs) {
    if (j.job.n_qubits == n_qubits && j.job.n_trotter == n_trotter) return j;
  }
  throw std::runtime_error("job not found");
}

Verdict protocol_identity() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int m : {2, 4}) {
      const HilbertSpace s = build_space(n, m);
      const ModelParams p = frame_map(fig5_params(n));
      const FrameParams& f = *p.frame;
      const Operator sum = tavis_cummings(s, f.qubit_detuning, f.mode_detuning, f.coupling) +
                           anti_tavis_cummings(s, f.alt_detuning, f.mode_detuning, f.coupling);
      worst = std::max(worst, max_abs(Matrix(sum.matrix() - dicke::dicke(s, p).matrix())));
      const Operator r = collective_rotation(s, Axis::x, std::numbers::pi);
      const Operator conj = r * tavis_cummings(s, f.alt_detuning, f.mode_detuning, f.coupling) * r.adjoint();
      const Operator anti = anti_tavis_cummings(s, f.alt_detuning, f.mode_detuning, f.coupling);
      worst = std::max(worst, max_abs(Matrix(conj.matrix() - anti.matrix())));
    }
  }
  return {worst <= 1e-10, "max deviation " + sci(worst) + " (<= 1e-10)"};
}

Verdict trotter_scaling() {
  const HilbertSpace s = build_space(2, 25);
  const double t = 1.0 / 1.5;
  std::vector<double> ns, errs;
  std::string series;
  for (int n : {4, 8, 16, 32}) {
    ns.push_back(n);
    errs.push_back(measured_error(dicke_schedule(s, fig5_params(2), t, n), ground_state(s)).trace_distance);
    series += (series.empty() ? "" : ", ") + sci(errs.back());
  }
  const double p = detail::fitted_exponent(ns, errs);
  return {p >= 0.8 && p <= 1.2, "p = " + fix(p, 3) + " in [0.8, 1.2]; errors " + series};
}

Verdict bound_dominance() {
  double worst = 0.0;
  int cases = 0;
  for (const char* name : {"dicke-dsc-fidelity", "dicke-usc-photons"}) {
    const RunConfig c = preset(name);
    for (const Job& job : expand_jobs(c)) {
      const HilbertSpace space = build_space(job.n_qubits, *c.fock_cutoff);
      const TrotterSchedule s = build_schedule(c, space, job.n_qubits, job.n_trotter);
      const ErrorReport r = error_report(s, model_params(c, job.n_qubits), ground_state(space));
      worst = std::max(worst, r.leading_term_norm / r.cauchy_schwarz_bound);
      ++cases;
    }
  }
  return {worst <= 1.0, "max ||P eps P|| / bound = " + fix(worst) + " over " + std::to_string(cases) + " runs (<= 1)"};
}

Verdict closed_form() {
  double worst = 0.0;
  for (int n : {2, 3}) {
    const HilbertSpace s = build_space(n, 8);
    const DigitalSplit split = digital_split(fig5_params(n));
    const Operator brute = leading_error_operator(split_h1(s, split), split_h2(s, split), 0.5, 7);
    const Operator closed = closed_form_error(s, split, 0.5, 7);
    worst = std::max(worst, max_abs(mask_fock_boundary(s, (brute - closed).matrix())));
  }
  return {worst <= 1e-10, "max masked deviation " + sci(worst) + " (<= 1e-10)"};
}

Verdict lindblad_physics() {
  // Damped cavity from one photon.
  const HilbertSpace sc = build_space(1, 3);
  Vector one = Vector::Zero(sc.dim());
  one(sc.compose({1, 1})) = 1.0;
  const double kappa = 1.0, t = 1.0;
  const DensityMatrix cav =
      integrate_segment(Operator::zero(sc), DensityMatrix::pure({sc, one}), t, {kappa, 0.0, 0.0}, {});
  const double cavity_err = std::abs(photon_number(cav) - std::exp(-kappa * t));

  // Dephasing of |+>: coherence e^{-2 Gamma_d t} under Gamma_d (sz rho sz - rho).
  const HilbertSpace sq = build_space(1, 0);
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const double gd = 0.5, td = 1.3;
  const DensityMatrix dep =
      integrate_segment(Operator::zero(sq), DensityMatrix::pure({sq, plus}), td, {0.0, 0.0, gd}, {});
  const double dephasing_err = std::abs(std::abs(dep.matrix()(0, 1)) - 0.5 * std::exp(-2.0 * gd * td));

  double drift = 0.0;
  for (const auto& [name, run] : preset_runs()) {
    for (const auto& j : run.jobs) drift = std::max(drift, j.result.max_trace_drift);
  }

  // Step halving on the deep-strong fidelity preset (N = 2, n = 7).
  const PresetRun& fig5 = run_preset("dicke-dsc-fidelity");
  RunConfig halved = fig5.config;
  halved.integrator.dt *= 0.5;
  halved.integrator.stability_limit *= 0.5;
  const JobResult fine = run_job(halved, {2, 7});
  const double halving = std::abs(fine.result.fidelity.back() - find_job(fig5, 2, 7).result.fidelity.back());

  const bool pass = cavity_err <= 1e-6 && dephasing_err <= 1e-6 && drift <= 1e-8 && halving < 1e-6;
  return {pass, "cavity " + sci(cavity_err) + ", dephasing " + sci(dephasing_err) + " (<= 1e-6); trace drift " +
                    sci(drift) + " (<= 1e-8); dt halving " + sci(halving) + " (< 1e-6)"};
}

bool non_increasing(const std::vector<double>& v, double tol) {
  for (size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1] + tol) return false;
  }
  return true;
}

// F(0) = 1, F non-increasing in g t, F(N=3) <= F(N=2) on the common grid.
bool fidelity_shape(const PresetRun& r, std::string& note) {
  constexpr double tol = 1e-9;
  bool ok = true;
  for (int n : r.config.n_trotter) {
    const auto& f2 = find_job(r, 2, n).result.fidelity;
    const auto& f3 = find_job(r, 3, n).result.fidelity;
    ok = ok && std::abs(f2.front() - 1.0) <= 1e-12 && std::abs(f3.front() - 1.0) <= 1e-12;
    ok = ok && non_increasing(f2, tol) && non_increasing(f3, tol) && f2.size() == f3.size();
    for (size_t k = 0; ok && k < f2.size(); ++k) ok = f3[k] <= f2[k] + tol;
    note += " n=" + std::to_string(n) + ": F_end(N=2)=" + fix(f2.back()) + ", F_end(N=3)=" + fix(f3.back()) + ";";
  }
  return ok;
}

Verdict figure_presets() {
  const auto start = std::chrono::steady_clock::now();
  std::string note;
  const PresetRun& fig5 = run_preset("dicke-dsc-fidelity");
  bool a = fidelity_shape(fig5, note);
  for (int nq : fig5.config.n_qubits) {
    double prev = -1.0;
    for (int n : fig5.config.n_trotter) {
      const double f = find_job(fig5, nq, n).result.fidelity.back();
      a = a && f >= prev;
      prev = f;
    }
  }

  const PresetRun& fig6 = run_preset("dicke-usc-photons");
  const int n6 = fig6.config.n_trotter.front();
  const auto& p2 = find_job(fig6, 2, n6).result.photon_number_trotter;
  const auto& p3 = find_job(fig6, 3, n6).result.photon_number_trotter;
  int above = 0;
  for (size_t k = 1; k < p2.size(); ++k) above += p3[k] > p2[k] ? 1 : 0;
  const double bulk = static_cast<double>(above) / static_cast<double>(p2.size() - 1);
  const bool b = bulk >= 0.9;
  note += " photons N=3 > N=2 on " + fix(100.0 * bulk, 0) + "% of t > 0 (>= 90%), <n>_end " + fix(p2.back(), 3) +
          " vs " + fix(p3.back(), 3) + ";";

  const PresetRun& fig7 = run_preset("pulsed-dsc-fidelity");
  std::string pulsed_note;
  const bool c = fidelity_shape(fig7, pulsed_note);
  note += " pulsed" + pulsed_note;

  double seconds = 0.0;
  for (const auto& [name, run] : preset_runs()) seconds += run.seconds;
  seconds = std::max(seconds, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  const bool fast = seconds < 300.0;
  return {a && b && c && fast, std::string("(a) ") + (a ? "ok" : "violated") + " (b) " + (b ? "ok" : "violated") +
                                   " (c) " + (c ? "ok" : "violated") + "; preset runs " + fix(seconds, 1) +
                                   " s (< 300 s);" + note};
}

Verdict pulsed_factor() {
  // Matched couplings (g1 = g0) and n: the pulsed step holds four analog
  // blocks of t/n each, the Dicke step two.
  const HilbertSpace s = build_space(2, 20);
  const double t = 0.25 / 1.5;
  ModelParams pulsed = fig5_params(2);
  pulsed.pulse = PulseParams{pulsed.coupling, 0.0, 1.0, 10.0, 0.1};
  bool ok = true;
  std::string note;
  for (int n : {8, 16}) {
    const double ed = measured_error(dicke_schedule(s, fig5_params(2), t, n), ground_state(s)).trace_distance;
    const double ep = measured_error(pulsed_schedule(s, pulsed, 2.0 * t, n), ground_state(s)).trace_distance;
    const double ratio = ep / ed;
    ok = ok && ratio >= 1.5 && ratio <= 2.5;
    note += (note.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " + fix(ratio, 3);
  }
  return {ok, "pulsed / dicke error " + note + " (in [1.5, 2.5])"};
}

Verdict fermi_bose() {
  double spectrum = 0.0, decoupling = 0.0;
  for (const std::vector<double>& eps : {std::vector<double>{0.5}, std::vector<double>{0.3, -0.45}}) {
    const FermiBoseOracle o = fermi_bose_oracle(eps, 1.0, 0.2, 4);
    spectrum = std::max(spectrum, o.spectrum_error);
    decoupling = std::max(decoupling, o.decoupling_error);
  }
  return {spectrum <= 1e-10 && decoupling == 0.0,
          "spectrum deviation " + sci(spectrum) + " (<= 1e-10), single-occupation coupling " + sci(decoupling)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "dicke_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  int files = 0, identical = 0;
  for (const auto& name : preset_names()) {
    const PresetRun& run = run_preset(name);
    const std::string out = (dir / (name + ".csv")).string();
    const std::string cmd = std::string("DICKE_SIM_WORKERS=2 ") + DICKE_SIM_PATH + " run --preset " + name +
                            " --reproducible --output " + out + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) continue;
    for (const auto& j : run.jobs) {
      std::ostringstream mine;
      write_csv(mine, run.config, j, true);
      ++files;
      identical += slurp(job_output_path(out, j.job, run.jobs.size() > 1)) == mine.str() ? 1 : 0;
    }
  }
  fs::remove_all(dir);
  return {files > 0 && identical == files,
          std::to_string(identical) + "/" + std::to_string(files) +
              " CSV files byte-identical between the in-process run and a 2-worker CLI run"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Verdict()> check;
  };
  // Criterion 6 runs first so criteria 5 and 9 reuse the preset runs.
  const std::vector<Criterion> order{
      {6, "figure-preset behavior", 300.0, figure_presets},
      {1, "protocol identity", 1.0, protocol_identity},
      {2, "Trotter scaling", 30.0, trotter_scaling},
      {3, "error-bound dominance", 10.0, bound_dominance},
      {4, "closed-form commutator", 5.0, closed_form},
      {5, "Lindblad physics", 10.0, lindblad_physics},
      {7, "pulsed error factor", 60.0, pulsed_factor},
      {8, "Fermi-Bose oracle", 5.0, fermi_bose},
      {9, "determinism", 0.0, determinism},
  };
  std::map<int, std::string> lines;
  int passed = 0;
  for (const auto& c : order) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0.0 || c.id == 6 || s < c.limit_s;
    const bool ok = v.pass && in_time;
    passed += ok ? 1 : 0;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << v.detail << " [" << fix(s, 2)
         << " s" << (c.limit_s > 0.0 && c.id != 6 ? ", limit " + fix(c.limit_s, 0) + " s" : "") << "]";
    lines[c.id] = line.str();
  }
  for (const auto& [id, line] : lines) std::cout << line << "\n";
  std::cout << passed << "/" << order.size() << " acceptance criteria passed\n";
  return passed == static_cast<int>(order.size()) ? 0 : 1;
}
