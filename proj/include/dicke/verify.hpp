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

#ifndef DICKE_VERIFY_HPP
#define DICKE_VERIFY_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/error_bounds.hpp"
#include "dicke/fermi_bose.hpp"
#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/observables.hpp"
#include "dicke/runner.hpp"
#include "dicke/trotter.hpp"

namespace dicke {

/// A check passes when measured <= threshold.
struct CheckResult {
  std::string module;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct Check {
  std::string module;
  std::string name;
  double threshold;
  std::function<double()> measure;
};

inline const std::vector<std::string>& verify_modules() {
  static const std::vector<std::string> m{"hilbert", "hamiltonians", "trotter", "lindblad",
                                          "error_bounds", "observables", "cli"};
  return m;
}

namespace detail {

inline ModelParams dsc_params(int n) { return ModelParams::homogeneous(n, 0.05, 1.0, 1.5 * std::sqrt(double(n))); }

inline double fitted_exponent(const std::vector<double>& ns, const std::vector<double>& errs) {
  double mx = 0, my = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    mx += std::log(ns[i]);
    my += std::log(errs[i]);
  }
  mx /= ns.size();
  my /= ns.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    sxy += (std::log(ns[i]) - mx) * (std::log(errs[i]) - my);
    sxx += (std::log(ns[i]) - mx) * (std::log(ns[i]) - mx);
  }
  return -sxy / sxx;
}

/// ||P eps P|| / bound for every (N, n) of a preset; <= 1 means the bound dominates.
inline double dominance_ratio(const std::string& name) {
  const RunConfig c = preset(name);
  double worst = 0.0;
  for (const Job& job : expand_jobs(c)) {
    const HilbertSpace space = build_space(job.n_qubits, *c.fock_cutoff);
    const TrotterSchedule s = build_schedule(c, space, job.n_qubits, job.n_trotter);
    const ErrorReport r = error_report(s, model_params(c, job.n_qubits), ground_state(space));
    worst = std::max(worst, r.leading_term_norm / r.cauchy_schwarz_bound);
  }
  return worst;
}

}  // namespace detail

inline std::vector<Check> invariant_checks() {
  using detail::dsc_params;
  std::vector<Check> c;

  c.push_back({"hilbert", "basis index round trip (N=3, n_max=4)", 0.0, [] {
                 const HilbertSpace s = build_space(3, 4);
                 double worst = 0.0;
                 for (Index k = 0; k < s.dim(); ++k) worst = std::max(worst, double(std::abs(s.compose(s.decompose(k)) - k)));
                 return worst;
               }});
  c.push_back({"hilbert", "[a, a+] = 1 below the cutoff", 1e-12, [] {
                 const HilbertSpace s = build_space(1, 6);
                 const Operator a = boson_op(s, BosonKind::a);
                 const Matrix p = fock_projector(s, 5).matrix();
                 return max_abs(Matrix(p * (commutator(a, a.adjoint()).matrix() - Matrix::Identity(s.dim(), s.dim())) * p));
               }});
  c.push_back({"hilbert", "[s+, s-] = sz on every qubit", 1e-12, [] {
                 const HilbertSpace s = build_space(3, 1);
                 double worst = 0.0;
                 for (int i = 0; i < 3; ++i) {
                   const Operator comm = commutator(qubit_op(s, i, PauliKind::plus), qubit_op(s, i, PauliKind::minus));
                   worst = std::max(worst, max_abs(Matrix(comm.matrix() - qubit_op(s, i, PauliKind::z).matrix())));
                 }
                 return worst;
               }});
  c.push_back({"hilbert", "propagator unitarity", 1e-10, [] {
                 const HilbertSpace s = build_space(2, 8);
                 return unitarity_error(evolve_unitary(dicke(s, dsc_params(2)), 0.7).matrix());
               }});

  c.push_back({"hamiltonians", "Hermiticity of every builder", 1e-12, [] {
                 const HilbertSpace s = build_space(2, 6);
                 const std::vector<double> d{0.3, -0.2};
                 ModelParams b = dsc_params(2);
                 b.bias = 0.4;
                 double worst = 0.0;
                 for (const Operator& h : {tavis_cummings(s, d, 0.5, 0.7), anti_tavis_cummings(s, d, 0.5, 0.7),
                                           dicke(s, dsc_params(2)), biased_dicke(s, b),
                                           inhomogeneous_dicke(s, d, 1.0, 0.5, false)}) {
                   worst = std::max(worst, hermiticity_error(h.matrix()));
                 }
                 return worst;
               }});
  c.push_back({"hamiltonians", "TC(A) + anti-TC(B) = Dicke (N=1..3, n_max=2,4)", 1e-10, [] {
                 double worst = 0.0;
                 for (int n = 1; n <= 3; ++n) {
                   for (int m : {2, 4}) {
                     const HilbertSpace s = build_space(n, m);
                     const ModelParams p = frame_map(dsc_params(n));
                     const Operator sum = tavis_cummings(s, p.frame->qubit_detuning, p.frame->mode_detuning, p.frame->coupling) +
                                          anti_tavis_cummings(s, p.frame->alt_detuning, p.frame->mode_detuning, p.frame->coupling);
                     worst = std::max(worst, max_abs(Matrix(sum.matrix() - dicke(s, dsc_params(n)).matrix())));
                   }
                 }
                 return worst;
               }});
  c.push_back({"hamiltonians", "Rx(pi) TC Rx(pi)^+ = anti-TC (N=1..3, n_max=2,4)", 1e-10, [] {
                 double worst = 0.0;
                 for (int n = 1; n <= 3; ++n) {
                   for (int m : {2, 4}) {
                     const HilbertSpace s = build_space(n, m);
                     std::vector<double> d(n);
                     for (int i = 0; i < n; ++i) d[i] = 0.1 + 0.2 * i;
                     const Operator r = collective_rotation(s, Axis::x, std::numbers::pi);
                     const Operator conj = r * tavis_cummings(s, d, 0.5, 0.8) * r.adjoint();
                     worst = std::max(worst, max_abs(Matrix(conj.matrix() - anti_tavis_cummings(s, d, 0.5, 0.8).matrix())));
                   }
                 }
                 return worst;
               }});
  c.push_back({"hamiltonians", "Tavis-Cummings conserves excitation number", 1e-12, [] {
                 const HilbertSpace s = build_space(3, 5);
                 const std::vector<double> d{0.1, 0.2, 0.3};
                 return max_abs(commutator(tavis_cummings(s, d, 0.4, 0.9), excitation_number(s)).matrix());
               }});
  c.push_back({"hamiltonians", "Ry(pi/2) sz Ry(pi/2)^+ = sx", 1e-12, [] {
                 const HilbertSpace s = build_space(2, 1);
                 const Operator u = collective_rotation(s, Axis::y, std::numbers::pi / 2);
                 const Operator lhs = u * collective_op(s, PauliKind::z) * u.adjoint();
                 return max_abs(Matrix(lhs.matrix() - collective_op(s, PauliKind::x).matrix()));
               }});
  c.push_back({"hamiltonians", "Fermi-Bose pair mapping (1 and 2 levels)", 1e-10, [] {
                 double worst = 0.0;
                 for (const std::vector<double>& e : {std::vector<double>{0.3}, std::vector<double>{0.2, -0.35}}) {
                   const FermiBoseOracle o = fermi_bose_oracle(e, 1.0, 0.6, 4);
                   worst = std::max({worst, o.mapping_error, o.decoupling_error, o.spectrum_error, o.car_error});
                 }
                 return worst;
               }});

  c.push_back({"trotter", "step unitarity (dicke, biased, pulsed)", 1e-10, [] {
                 const HilbertSpace s = build_space(2, 8);
                 ModelParams b = dsc_params(2);
                 b.bias = 0.3;
                 ModelParams p = dsc_params(2);
                 p.pulse = PulseParams{p.coupling, p.coupling, 1.0, 10.0, 0.1};
                 double worst = 0.0;
                 for (const TrotterSchedule& t : {dicke_schedule(s, dsc_params(2), 0.5, 4), biased_schedule(s, b, 0.5, 4),
                                                  pulsed_schedule(s, p, 0.5, 4)}) {
                   worst = std::max(worst, unitarity_error(step_unitary(t).matrix()));
                 }
                 return worst;
               }});
  c.push_back({"trotter", "|p - 1| for error ~ n^-p (N=2, n=4..32)", 0.2, [] {
                 const HilbertSpace s = build_space(2, 25);
                 std::vector<double> ns, errs;
                 for (int n : {4, 8, 16, 32}) {
                   const TrotterSchedule t = dicke_schedule(s, dsc_params(2), 1.0 / 1.5, n);
                   ns.push_back(n);
                   errs.push_back(measured_error(t, ground_state(s)).trace_distance);
                 }
                 return std::abs(detail::fitted_exponent(ns, errs) - 1.0);
               }});

  c.push_back({"lindblad", "damped cavity <n>(1/kappa) = e^-1", 1e-6, [] {
                 const HilbertSpace s = build_space(1, 3);
                 Vector psi = Vector::Zero(s.dim());
                 psi(s.compose({1, 1})) = 1.0;  // qubit down, one photon
                 const DensityMatrix rho = integrate_segment(Operator::zero(s), DensityMatrix::pure({s, psi}), 1.0,
                                                             NoiseParams{1.0, 0.0, 0.0}, IntegratorConfig{});
                 return std::abs(photon_number(rho) - std::exp(-1.0));
               }});
  c.push_back({"lindblad", "dephasing coherence rho_eg(t) = rho_eg(0) e^{-2 Gamma_d t}", 1e-6, [] {
                 const HilbertSpace s = build_space(1, 0);
                 Vector psi(2);
                 psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
                 const double gd = 0.5, t = 1.3;
                 const DensityMatrix rho = integrate_segment(Operator::zero(s), DensityMatrix::pure({s, psi}), t,
                                                             NoiseParams{0.0, 0.0, gd}, IntegratorConfig{});
                 return std::abs(rho.matrix()(0, 1) - 0.5 * std::exp(-2.0 * gd * t));
               }});
  c.push_back({"lindblad", "noiseless run matches unitary execution", 1e-7, [] {
                 const HilbertSpace s = build_space(2, 10);
                 const TrotterSchedule t = dicke_schedule(s, dsc_params(2), 0.4, 3);
                 const StateVector psi0 = ground_state(s);
                 RunOptions o;
                 o.keep_states = true;
                 const SimulationResult r = run_schedule(t, DensityMatrix::pure(psi0), {}, IntegratorConfig{}, o);
                 const Vector v = execute_unitary(t, psi0).states.back();
                 return max_abs(Matrix(r.trotter_states.back() - v * v.adjoint()));
               }});
  c.push_back({"lindblad", "trace drift over a noisy run", 1e-8, [] {
                 const HilbertSpace s = build_space(2, 10);
                 const TrotterSchedule t = dicke_schedule(s, dsc_params(2), 0.4, 3);
                 const SimulationResult r =
                     run_schedule(t, DensityMatrix::pure(ground_state(s)), {0.01, 0.005, 0.005}, IntegratorConfig{});
                 return std::max(r.max_trace_drift, *std::max_element(r.trace_error.begin(), r.trace_error.end()));
               }});

  c.push_back({"error_bounds", "closed-form leading error vs brute force (N=2,3)", 1e-10, [] {
                 double worst = 0.0;
                 for (int n : {2, 3}) {
                   const HilbertSpace s = build_space(n, 8);
                   const DigitalSplit split = digital_split(dsc_params(n));
                   const Operator brute = leading_error_operator(split_h1(s, split), split_h2(s, split), 0.5, 7);
                   const Operator closed = closed_form_error(s, split, 0.5, 7);
                   worst = std::max(worst, restricted_norm(brute - closed, 6));
                 }
                 return worst;
               }});
  c.push_back({"error_bounds", "biased leading error vs brute force", 1e-10, [] {
                 const HilbertSpace s = build_space(2, 8);
                 ModelParams p = dsc_params(2);
                 p.qubit_freqs = {0.4};
                 p.bias = 0.3;
                 const DigitalSplit split = digital_split(p);
                 const std::vector<Operator> parts{p.bias * collective_op(s, PauliKind::x), split_h1(s, split),
                                                   split_h2(s, split)};
                 const Operator brute = leading_error_operator(parts, 0.5, 5);
                 return restricted_norm(brute - biased_error_operator(s, split, p.bias, 0.5, 5), 6);
               }});
  c.push_back({"error_bounds", "bound dominance, dicke-dsc-fidelity (ratio)", 1.0,
               [] { return detail::dominance_ratio("dicke-dsc-fidelity"); }});
  c.push_back({"error_bounds", "bound dominance, dicke-usc-photons (ratio)", 1.0,
               [] { return detail::dominance_ratio("dicke-usc-photons"); }});

  c.push_back({"observables", "fidelity symmetry", 1e-12, [] {
                 const HilbertSpace s = build_space(1, 3);
                 const Matrix a = evolve_unitary(dicke(s, dsc_params(1)), 0.3).matrix();
                 const DensityMatrix r1 = DensityMatrix::pure(ground_state(s));
                 const Vector v = a * ground_state(s).amplitudes;
                 const DensityMatrix r2(s, Matrix(0.6 * v * v.adjoint() + 0.4 * r1.matrix()));
                 return std::abs(fidelity(r1, r2) - fidelity(r2, r1));
               }});
  c.push_back({"observables", "survival(rho0, rho0) = purity", 1e-12, [] {
                 const HilbertSpace s = build_space(1, 2);
                 Matrix m = Matrix::Zero(s.dim(), s.dim());
                 m(0, 0) = 0.7;
                 m(3, 3) = 0.3;
                 const DensityMatrix r(s, m);
                 return std::abs(survival_probability(r, r) - (m * m).trace().real());
               }});
  c.push_back({"observables", "photon number outside [0, n_max] (excess)", 1e-10, [] {
                 const HilbertSpace s = build_space(1, 4);
                 Matrix m = Matrix::Zero(s.dim(), s.dim());
                 m(s.compose({0, 4}), s.compose({0, 4})) = 1.0;
                 const double n = photon_number(DensityMatrix(s, m));
                 return std::max({0.0, -n, n - 4.0});
               }});

  c.push_back({"cli", "echoed config re-parses to the same config", 0.0, [] {
                 const RunConfig c0 = preset("pulsed-dsc-fidelity");
                 return to_key_values(load_config(to_key_values(c0))) == to_key_values(c0) ? 0.0 : 1.0;
               }});
  c.push_back({"cli", "identical config gives identical CSV", 0.0, [] {
                 RunConfig c0 = preset("dicke-dsc-fidelity");
                 c0.n_qubits = {2};
                 c0.n_trotter = {3};
                 c0.fock_cutoff = 8;
                 c0.t_max = 0.3;
                 std::ostringstream a, b;
                 write_csv(a, c0, run_job(c0, {2, 3}), true);
                 write_csv(b, c0, run_job(c0, {2, 3}), true);
                 return a.str() == b.str() ? 0.0 : 1.0;
               }});
  return c;
}

/// Runs every check of `module` (all modules when empty). An exception inside a
/// check counts as a failure with measured = NaN.
inline std::vector<CheckResult> run_checks(const std::string& module = "") {
  if (!module.empty()) {
    const auto& m = verify_modules();
    if (std::find(m.begin(), m.end(), module) == m.end()) throw ConfigError("unknown module '" + module + "'");
  }
  std::vector<CheckResult> out;
  for (const Check& c : invariant_checks()) {
    if (!module.empty() && c.module != module) continue;
    CheckResult r{c.module, c.name, std::numeric_limits<double>::quiet_NaN(), c.threshold, false};
    try {
      r.measured = c.measure();
      r.passed = r.measured <= c.threshold;
    } catch (const std::exception&) {
      r.passed = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dicke

#endif  // DICKE_VERIFY_HPP
