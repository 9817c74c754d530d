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

#ifndef DICKE_ERROR_BOUNDS_HPP
#define DICKE_ERROR_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/lindblad.hpp"
#include "dicke/observables.hpp"
#include "dicke/trotter.hpp"

namespace dicke {

/// The two halves of one Dicke Trotter step written in their own frames:
///   H1 = sum_i (w1_i/2) sz_i + w~ a^+ a + g sum_i (s+_i a + s-_i a^+)
///   H2 = sum_i (w2_i/2) sz_i + w~ a^+ a + g sum_i (s-_i a + s+_i a^+)
struct DigitalSplit {
  std::vector<double> w1;  // effective qubit frequencies of the Tavis-Cummings half
  std::vector<double> w2;  // effective qubit frequencies of the anti-Tavis-Cummings half
  double mode = 0.0;       // w~
  double g = 0.0;

  /// max{g, |w_k^i|, |w~|}, the rate that sets the "sizable dynamics" time 1/max.
  double max_rate() const {
    double m = std::max(std::abs(g), std::abs(mode));
    for (double w : w1) m = std::max(m, std::abs(w));
    for (double w : w2) m = std::max(m, std::abs(w));
    return m;
  }
};

/// Split realized by the schedule's frame. The anti-TC half is the rotated
/// second TC block, so its qubit frequency is -(tilde omega_0 - delta).
inline DigitalSplit digital_split(const ModelParams& params) {
  const ModelParams p = params.frame ? params : frame_map(params);
  DigitalSplit s;
  s.w1 = p.frame->qubit_detuning;
  for (double d : p.frame->alt_detuning) s.w2.push_back(-d);
  s.mode = p.frame->mode_detuning;
  s.g = p.frame->coupling;
  return s;
}

inline Operator split_h1(const HilbertSpace& space, const DigitalSplit& s) {
  return free_hamiltonian(space, s.w1, s.mode) + s.g * rotating_coupling(space);
}

inline Operator split_h2(const HilbertSpace& space, const DigitalSplit& s) {
  return free_hamiltonian(space, s.w2, s.mode) + s.g * counter_rotating_coupling(space);
}

/// sum_{i<j} [H_i, H_j] t^2 / (2n)
inline Operator leading_error_operator(std::span<const Operator> parts, double t, int n) {
  if (parts.empty()) throw std::invalid_argument("leading_error_operator: no terms");
  if (n < 1) throw std::invalid_argument("leading_error_operator: n must be >= 1");
  Operator eps = Operator::zero(parts.front().space());
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i + 1; j < parts.size(); ++j) eps += commutator(parts[i], parts[j]);
  }
  return (t * t / (2.0 * n)) * eps;
}

inline Operator leading_error_operator(const Operator& h1, const Operator& h2, double t, int n) {
  const std::vector<Operator> parts{h1, h2};
  return leading_error_operator(parts, t, n);
}

/// The five-term closed form of [H1, H2] t^2 / (2n), assembled from the
/// elementary commutators rather than by multiplying H1 and H2.
inline Operator closed_form_error(const HilbertSpace& space, const DigitalSplit& s, double t, int n) {
  if (s.w1.size() != static_cast<size_t>(space.n_qubits()) || s.w2.size() != s.w1.size()) {
    throw std::invalid_argument("closed_form_error: need one frequency per qubit");
  }
  const Operator a = boson_op(space, BosonKind::a);
  const Operator ad = boson_op(space, BosonKind::adag);
  const Operator a2diff = a * a - ad * ad;
  Operator sum = Operator::zero(space);
  for (int i = 0; i < space.n_qubits(); ++i) {
    const Operator sp = qubit_op(space, i, PauliKind::plus);
    const Operator sm = qubit_op(space, i, PauliKind::minus);
    const Operator up_dn = sp * ad - sm * a;  // s+ a^+ - s- a
    sum += (s.g * s.w1[i]) * up_dn;
    sum += (s.g * s.mode) * up_dn;
    sum += (s.g * s.w2[i]) * (sm * ad - sp * a);
    sum += (s.g * s.mode) * (sp * a - sm * ad);
    sum += (s.g * s.g) * (qubit_op(space, i, PauliKind::z) * a2diff);
  }
  const Operator splus = collective_op(space, PauliKind::plus);
  const Operator sminus = collective_op(space, PauliKind::minus);
  sum += (s.g * s.g) * (splus * splus - sminus * sminus);
  return (t * t / (2.0 * n)) * sum;
}

inline Operator closed_form_error(const ModelParams& params, double t, int n, const HilbertSpace& space) {
  return closed_form_error(space, digital_split(params), t, n);
}

/// [4N(||a|| + ||a^+||) + N ||a^2 - (a^+)^2|| + N^2] / 2n, with ||a|| = ||a^+||
/// evaluated on the populated (domain-restricted) Fock space. Dimensionless:
/// it assumes max{g, w, w~} t = 1.
inline double cauchy_schwarz_bound(int n_qubits, int n, double norm_a, double norm_a2diff) {
  if (norm_a < 0.0 || norm_a2diff < 0.0) throw std::invalid_argument("cauchy_schwarz_bound: negative norm");
  if (n < 1 || n_qubits < 1) throw std::invalid_argument("cauchy_schwarz_bound: N and n must be >= 1");
  const double nq = n_qubits;
  return (4.0 * nq * (2.0 * norm_a) + nq * norm_a2diff + nq * nq) / (2.0 * n);
}

/// epsilon(H1, H2) - i sum_i Delta t^2 (w1_i + w2_i)/(2n) sigma_y^i for the split
/// (Delta sum sigma_x, H1, H2).
inline Operator biased_error_operator(const HilbertSpace& space, const DigitalSplit& s, double bias, double t,
                                      int n) {
  Operator eps = leading_error_operator(split_h1(space, s), split_h2(space, s), t, n);
  for (int i = 0; i < space.n_qubits(); ++i) {
    eps += (-kI * bias * t * t * (s.w1[i] + s.w2[i]) / (2.0 * n)) * qubit_op(space, i, PauliKind::y);
  }
  return eps;
}

inline Operator biased_error_operator(const ModelParams& params, double t, int n, const HilbertSpace& space) {
  return biased_error_operator(space, digital_split(params), params.bias, t, n);
}

/// Companion bound: the Dicke bound plus N/n.
inline double biased_bound(int n_qubits, int n, double norm_a, double norm_a2diff) {
  return cauchy_schwarz_bound(n_qubits, n, norm_a, norm_a2diff) + static_cast<double>(n_qubits) / n;
}

/// Fock levels [0, max_level] that carry at least `threshold` population at some
/// time of the reference run, capped below the two masked boundary levels.
struct FockDomain {
  int max_level = 0;
  double threshold = 1e-6;
  bool saturated = false;  // populated levels reach the masked boundary
};

inline FockDomain populated_domain(const std::vector<std::vector<double>>& populations_over_time,
                                   int fock_cutoff, double threshold = 1e-6) {
  FockDomain d;
  d.threshold = threshold;
  int highest = 0;
  for (const auto& pops : populations_over_time) {
    for (int k = 0; k < static_cast<int>(pops.size()); ++k) {
      if (pops[k] >= threshold) highest = std::max(highest, k);
    }
  }
  const int cap = std::max(0, fock_cutoff - 2);
  d.saturated = highest > cap;
  d.max_level = std::min(highest, cap);
  return d;
}

/// Reference run: noiseless exact target evolution sampled `samples` times.
inline FockDomain reference_domain(const TrotterSchedule& s, const StateVector& psi0, int samples = 64,
                                   double threshold = 1e-6) {
  const DensityMatrix rho0 = DensityMatrix::pure(psi0);
  const detail::IdealPropagator ideal(s);
  std::vector<std::vector<double>> pops;
  for (int k = 0; k <= samples; ++k) {
    const double t = s.simulated_time * k / samples;
    const Vector psi = ideal.unitary_at(t) * psi0.amplitudes;
    pops.push_back(fock_populations(DensityMatrix(s.space, psi * psi.adjoint())));
  }
  (void)rho0;
  return populated_domain(pops, s.space.fock_cutoff(), threshold);
}

struct RestrictedNorms {
  double a = 0.0;       // ||P a P||
  double a2diff = 0.0;  // ||P (a^2 - a^+^2) P||
};

inline RestrictedNorms restricted_norms(const HilbertSpace& space, int max_level) {
  const Matrix p = fock_projector(space, max_level).matrix();
  const Matrix a = boson_op(space, BosonKind::a).matrix();
  const Matrix ad = a.adjoint();
  return {spectral_norm(Matrix(p * a * p)), spectral_norm(Matrix(p * (a * a - ad * ad) * p))};
}

inline double restricted_norm(const Operator& op, int max_level) {
  const Matrix p = fock_projector(op.space(), max_level).matrix();
  return spectral_norm(Matrix(p * op.matrix() * p));
}

struct MeasuredError {
  double infidelity = 0.0;      // 1 - |<psi_exact|psi_trotter>|^2
  double trace_distance = 0.0;  // sqrt(1 - F) for pure states; linear in the Trotter error
  double operator_error = -1.0; // min_phi ||U_sched - e^{i phi} U_exact||, -1 when not computed
};

/// Digital error of a noiseless schedule against the exact target propagator.
inline MeasuredError measured_error(const TrotterSchedule& s, const StateVector& psi0, const NoiseParams& noise = {},
                                    bool with_operator_metric = false) {
  if (!noise.is_zero()) throw std::invalid_argument("measured_error isolates the digital error; noise must be zero");
  const Trajectory traj = execute_unitary(s, psi0);
  const Operator exact = exact_target_unitary(s, s.n_steps);
  const Vector psi_exact = exact.matrix() * psi0.amplitudes;
  const double overlap = std::norm(psi_exact.dot(traj.states.back()));
  MeasuredError e;
  e.infidelity = std::max(0.0, 1.0 - overlap);
  e.trace_distance = std::sqrt(e.infidelity);
  if (with_operator_metric) {
    const Matrix us = schedule_unitary(s).matrix();
    const cplx tr = (exact.matrix().adjoint() * us).trace();
    const cplx phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : cplx(1.0);
    e.operator_error = spectral_norm(Matrix(us - phase * exact.matrix()));
  }
  return e;
}

/// One CSV row summarizing the analytic and measured digital error of a run.
struct ErrorReport {
  std::string variant;
  int n_qubits = 0;
  int fock_cutoff = 0;
  int n_steps = 0;
  double t = 0.0;
  double leading_term_norm = 0.0;     // ||P eps P|| at time t
  double cauchy_schwarz_bound = 0.0;  // rescaled by (max_rate t)^2
  double measured_error = 0.0;
  std::string metric = "trace_distance";
  FockDomain domain;

  static std::string csv_header() {
    return "variant,N,n_max,n_steps,t,leading_term_norm,cauchy_schwarz_bound,measured_error,metric,"
           "domain_max_level,population_threshold";
  }

  std::string csv_row() const {
    std::ostringstream os;
    os << std::setprecision(12) << variant << ',' << n_qubits << ',' << fock_cutoff << ',' << n_steps << ',' << t
       << ',' << leading_term_norm << ',' << cauchy_schwarz_bound << ',' << measured_error << ',' << metric << ','
       << domain.max_level << ',' << domain.threshold;
    return os.str();
  }
};

/// Analytic leading term, its bound and the measured error for a schedule
/// built from `params` (Dicke, biased or pulsed).
inline ErrorReport error_report(const TrotterSchedule& s, const ModelParams& params, const StateVector& psi0) {
  const HilbertSpace& space = s.space;
  const double t = s.simulated_time;
  const int n = s.n_steps;
  ErrorReport r;
  r.variant = to_string(s.variant);
  r.n_qubits = space.n_qubits();
  r.fock_cutoff = space.fock_cutoff();
  r.n_steps = n;
  r.t = t;
  r.domain = reference_domain(s, psi0);
  const RestrictedNorms norms = restricted_norms(space, r.domain.max_level);

  Operator eps = Operator::zero(space);
  double rate = 0.0;
  double bound = 0.0;
  switch (s.variant) {
    case Variant::dicke:
    case Variant::broadband: {
      const DigitalSplit split = digital_split(params);
      eps = leading_error_operator(split_h1(space, split), split_h2(space, split), t, n);
      rate = split.max_rate();
      bound = cauchy_schwarz_bound(r.n_qubits, n, norms.a, norms.a2diff);
      break;
    }
    case Variant::biased: {
      const DigitalSplit split = digital_split(params);
      eps = biased_error_operator(space, split, params.bias, t, n);
      rate = std::max(split.max_rate(), std::abs(params.bias));
      bound = biased_bound(r.n_qubits, n, norms.a, norms.a2diff);
      break;
    }
    case Variant::pulsed: {
      const auto [g0, g1] = pulsed_couplings(params);
      std::vector<Operator> parts;
      for (double g : {g0, g1}) {
        DigitalSplit split = digital_split(params);
        split.g = g;
        parts.push_back(split_h1(space, split));
        parts.push_back(split_h2(space, split));
        rate = std::max(rate, split.max_rate());
      }
      // Each of the four blocks runs for half a step.
      eps = leading_error_operator(parts, 0.5 * t, n);
      bound = 2.0 * cauchy_schwarz_bound(r.n_qubits, n, norms.a, norms.a2diff);
      break;
    }
    case Variant::fermi_bose_analog:
      rate = 1.0;  // purely analog: no digital error
      break;
  }
  r.leading_term_norm = restricted_norm(eps, r.domain.max_level);
  r.cauchy_schwarz_bound = bound * (rate * t) * (rate * t);
  r.measured_error = measured_error(s, psi0).trace_distance;
  return r;
}

}  // namespace dicke

#endif  // DICKE_ERROR_BOUNDS_HPP
