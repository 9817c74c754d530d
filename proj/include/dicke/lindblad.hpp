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

#ifndef DICKE_LINDBLAD_HPP
#define DICKE_LINDBLAD_HPP

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/hilbert.hpp"
#include "dicke/observables.hpp"
#include "dicke/trotter.hpp"

namespace dicke {

/// Decoherence rates in angular-frequency units.
struct NoiseParams {
  double kappa = 0.0;    // cavity decay
  double gamma_s = 0.0;  // spontaneous emission
  double gamma_d = 0.0;  // dephasing

  bool is_zero() const { return kappa == 0.0 && gamma_s == 0.0 && gamma_d == 0.0; }

  void validate() const {
    for (double r : {kappa, gamma_s, gamma_d}) {
      if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("noise rates must be finite and >= 0");
    }
  }
};

/// Fixed-step classical RK4. Each segment is split into equal substeps no
/// longer than min(dt, stability_limit / ||H||), so segment ends are hit exactly.
struct IntegratorConfig {
  double dt = 1e-3;
  double stability_limit = 0.05;  // upper bound on dt * ||H||
  double gate_duration = 0.0;     // > 0 integrates gates as noisy rotations of this length

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator dt must be > 0");
    if (!(stability_limit > 0.0)) throw std::invalid_argument("stability limit must be > 0");
    if (!(gate_duration >= 0.0)) throw std::invalid_argument("gate duration must be >= 0");
  }
};

struct RunOptions {
  bool ideal_with_noise = false;  // compare against noisy exact dynamics instead of noiseless
  bool record_segments = false;   // also record after every segment, not only every step
  bool keep_states = false;
  int positivity_samples = 5;
};

/// Dense reference form of the master equation right-hand side:
///   -i[H, rho] + kappa/2 (2 a rho a^+ - {a^+ a, rho})
///   + Gamma_s/2 sum_i (2 s-_i rho s+_i - {s+_i s-_i, rho})
///   + Gamma_d sum_i (sz_i rho sz_i - rho)
inline Matrix rhs(const Operator& h, const DensityMatrix& rho, const NoiseParams& noise) {
  h.assert_hermitian("Hamiltonian");
  require_same_space(h.space(), rho.space());
  const HilbertSpace& s = h.space();
  const Matrix& r = rho.matrix();
  Matrix out = -kI * (h.matrix() * r - r * h.matrix());
  auto dissipate = [&](const Matrix& l, double rate) {
    const Matrix ldl = l.adjoint() * l;
    out += 0.5 * rate * (2.0 * l * r * l.adjoint() - ldl * r - r * ldl);
  };
  if (noise.kappa > 0.0) dissipate(boson_op(s, BosonKind::a).matrix(), noise.kappa);
  for (int i = 0; i < s.n_qubits(); ++i) {
    if (noise.gamma_s > 0.0) dissipate(qubit_op(s, i, PauliKind::minus).matrix(), noise.gamma_s);
    if (noise.gamma_d > 0.0) {
      const Matrix z = qubit_op(s, i, PauliKind::z).matrix();
      out += noise.gamma_d * (z * r * z - r);
    }
  }
  return out;
}

/// Sparse form of rhs() used by the integrator:
///   d rho/dt = -i (H_eff rho - rho H_eff^+) + sum_k r_k L_k rho L_k^+,
///   H_eff = H - (i/2) sum_k r_k L_k^+ L_k.
class LindbladGenerator {
 public:
  using Sparse = Eigen::SparseMatrix<cplx>;

  LindbladGenerator(const Operator& h, const NoiseParams& noise) {
    h.assert_hermitian("Hamiltonian");
    noise.validate();
    const HilbertSpace& s = h.space();
    Matrix heff = h.matrix();
    auto add_jump = [&](const Matrix& l, double rate) {
      heff -= 0.5 * kI * rate * (l.adjoint() * l);
      jumps_.push_back(l.sparseView());
      rates_.push_back(rate);
    };
    if (noise.kappa > 0.0) add_jump(boson_op(s, BosonKind::a).matrix(), noise.kappa);
    for (int i = 0; i < s.n_qubits(); ++i) {
      if (noise.gamma_s > 0.0) add_jump(qubit_op(s, i, PauliKind::minus).matrix(), noise.gamma_s);
      if (noise.gamma_d > 0.0) add_jump(qubit_op(s, i, PauliKind::z).matrix(), noise.gamma_d);
    }
    heff_ = heff.sparseView();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h.matrix() + h.matrix().adjoint()), Eigen::EigenvaluesOnly);
    h_norm_ = es.eigenvalues().cwiseAbs().maxCoeff();
  }

  double hamiltonian_norm() const noexcept { return h_norm_; }

  /// Assumes rho is Hermitian; the result is Hermitian by construction.
  Matrix apply(const Matrix& rho) const {
    Matrix out, work;
    apply(rho, out, work);
    return out;
  }

  /// Allocation-free form: writes the derivative into `out`, using `work` as scratch.
  void apply(const Matrix& rho, Matrix& out, Matrix& work) const {
    work.noalias() = heff_ * rho;
    out.noalias() = -kI * work;
    out.noalias() += kI * work.adjoint();
    for (size_t k = 0; k < jumps_.size(); ++k) {
      work.noalias() = jumps_[k] * rho;                          // L rho
      out.noalias() += rates_[k] * (jumps_[k] * work.adjoint());  // L rho L^+ for Hermitian rho
    }
  }

 private:
  Sparse heff_;
  std::vector<Sparse> jumps_;
  std::vector<double> rates_;
  double h_norm_ = 0.0;
};

namespace detail {

inline int substep_count(double duration, double h_norm, const IntegratorConfig& cfg) {
  double h_max = cfg.dt;
  if (h_norm > 0.0) h_max = std::min(h_max, cfg.stability_limit / h_norm);
  return std::max(1, static_cast<int>(std::ceil(duration / h_max - 1e-9)));
}

/// Re-Hermitize and renormalize, refusing drifts above the contract. Returns the drift.
inline double settle(Matrix& rho, double trace_before) {
  if (!rho.allFinite()) throw NumericalError("integration produced NaN or Inf");
  const cplx tr = rho.trace();
  if (std::abs(tr - trace_before) > 1e-8) {
    std::ostringstream os;
    os << "trace drift " << std::abs(tr - trace_before) << " exceeds 1e-8; reduce the step size";
    throw NumericalError(os.str());
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho *= trace_before / rho.trace().real();
  return std::abs(tr - trace_before);
}

/// Integrates one segment in place and returns the trace drift before renormalization.
inline double rk4(const LindbladGenerator& gen, Matrix& rho, double duration, const IntegratorConfig& cfg) {
  if (duration <= 0.0) return 0.0;
  const int steps = substep_count(duration, gen.hamiltonian_norm(), cfg);
  const double h = duration / steps;
  const double trace_before = rho.trace().real();
  const Index d = rho.rows();
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d), work(d, d);
  for (int k = 0; k < steps; ++k) {
    gen.apply(rho, k1, work);
    stage = rho + (0.5 * h) * k1;
    gen.apply(stage, k2, work);
    stage = rho + (0.5 * h) * k2;
    gen.apply(stage, k3, work);
    stage = rho + h * k3;
    gen.apply(stage, k4, work);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return settle(rho, trace_before);
}

}  // namespace detail

inline DensityMatrix integrate_segment(const Operator& h, const DensityMatrix& rho0, double duration,
                                       const NoiseParams& noise, const IntegratorConfig& config) {
  require_same_space(h.space(), rho0.space());
  config.validate();
  if (!(duration >= 0.0)) throw std::invalid_argument("segment duration must be >= 0");
  rho0.check_valid();
  if (duration == 0.0) return rho0;
  const LindbladGenerator gen(h, noise);
  Matrix rho = rho0.matrix();
  detail::rk4(gen, rho, duration, config);
  return {rho0.space(), std::move(rho)};
}

namespace detail {

/// Exact noiseless target propagation at arbitrary simulated time.
class IdealPropagator {
 public:
  explicit IdealPropagator(const TrotterSchedule& s) : schedule_(s) {
    for (const auto& piece : s.target_pieces) pieces_.emplace_back(piece.hamiltonian);
    if (pieces_.size() > 1) step_ = target_step_unitary(s).matrix();
  }

  Matrix unitary_at(double t) const {
    if (pieces_.size() == 1) return pieces_.front().at(t).matrix();
    const double tau = schedule_.step_time();
    const int full = tau > 0.0 ? static_cast<int>(std::floor(t / tau + 1e-9)) : 0;
    Matrix u = matrix_power(Operator(schedule_.space, step_), full).matrix();
    double rest = t - full * tau;
    for (size_t p = 0; p < pieces_.size() && rest > 1e-15; ++p) {
      const double dt = std::min(rest, schedule_.target_pieces[p].fraction * tau);
      u = pieces_[p].at(dt).matrix() * u;
      rest -= dt;
    }
    return u;
  }

 private:
  const TrotterSchedule& schedule_;
  std::vector<SpectralPropagator> pieces_;
  Matrix step_;
};

}  // namespace detail

/// Runs the Trotterized schedule under the master equation, applying gates as
/// instantaneous conjugations (or noisy rotations when gate_duration > 0), and
/// compares with the ideal evolution of the target after every Trotter step.
inline SimulationResult run_schedule(const TrotterSchedule& schedule, const DensityMatrix& rho0,
                                     const NoiseParams& noise, const IntegratorConfig& config,
                                     const RunOptions& options = {}) {
  require_same_space(schedule.space, rho0.space());
  noise.validate();
  config.validate();
  rho0.check_valid();
  if (options.record_segments && options.ideal_with_noise) {
    throw std::invalid_argument("per-segment recording needs the noiseless ideal reference");
  }
  const HilbertSpace& space = schedule.space;
  const double tau = schedule.step_time();

  // One generator (or unitary) per segment of the periodic step.
  struct Prepared {
    std::optional<LindbladGenerator> gen;
    double duration = 0.0;
    const Matrix* unitary = nullptr;
  };
  std::vector<Prepared> prepared;
  double step_analog = 0.0;
  for (const auto& seg : schedule.step) {
    Prepared p;
    if (seg.kind == SegmentKind::analog) {
      p.gen.emplace(seg.op, noise);
      p.duration = seg.duration;
    } else if (config.gate_duration > 0.0 && seg.generator) {
      const Operator hg = (seg.angle / (2.0 * config.gate_duration)) * *seg.generator;
      p.gen.emplace(hg, noise);
      p.duration = config.gate_duration;
    } else {
      p.unitary = &seg.op.matrix();
    }
    step_analog += p.duration;
    prepared.push_back(std::move(p));
  }

  std::vector<LindbladGenerator> ideal_gens;
  if (options.ideal_with_noise) {
    for (const auto& piece : schedule.target_pieces) ideal_gens.emplace_back(piece.hamiltonian, noise);
  }
  const detail::IdealPropagator ideal(schedule);

  SimulationResult out;
  const DensityMatrix rho_initial = rho0;
  Matrix rho_t = rho0.matrix();
  Matrix rho_i = rho0.matrix();

  auto record = [&](double t_sim, const Matrix& ideal_state) {
    const DensityMatrix dt_rho(space, rho_t);
    const DensityMatrix di_rho(space, ideal_state);
    out.time_grid.push_back({t_sim, schedule.display_coupling * t_sim});
    out.fidelity.push_back(fidelity(dt_rho, di_rho));
    out.photon_number_trotter.push_back(photon_number(dt_rho));
    out.photon_number_ideal.push_back(photon_number(di_rho));
    out.survival.push_back(survival_probability(di_rho, rho_initial));
    out.leakage.push_back(leakage(dt_rho));
    out.trace_error.push_back(dt_rho.trace_error());
    if (options.keep_states) {
      out.trotter_states.push_back(rho_t);
      out.ideal_states.push_back(ideal_state);
    }
  };
  auto noiseless_ideal_at = [&](double t_sim) {
    const Matrix u = ideal.unitary_at(t_sim);
    return Matrix(u * rho0.matrix() * u.adjoint());
  };

  // Positivity is checked on evenly spaced step boundaries only (eigensolves are costly).
  std::vector<char> check_positivity(schedule.n_steps + 1, 0);
  if (options.positivity_samples > 0) {
    const int samples = options.positivity_samples;
    for (int j = 0; j < samples; ++j) {
      const double frac = samples == 1 ? 1.0 : static_cast<double>(j) / (samples - 1);
      check_positivity[static_cast<size_t>(std::lround(frac * schedule.n_steps))] = 1;
    }
  }
  auto require_positive = [&](int k) {
    if (!check_positivity[k]) return;
    const double lo = DensityMatrix(space, rho_t).min_eigenvalue();
    if (lo < -1e-8) {
      throw NumericalError("density matrix lost positivity (min eigenvalue " + std::to_string(lo) +
                           ") after step " + std::to_string(k));
    }
  };

  record(0.0, rho_i);
  require_positive(0);
  long global = 0;
  for (int k = 0; k < schedule.n_steps; ++k) {
    double analog_done = 0.0;
    for (size_t j = 0; j < prepared.size(); ++j, ++global) {
      const Prepared& p = prepared[j];
      try {
        if (p.gen) {
          out.max_trace_drift = std::max(out.max_trace_drift, detail::rk4(*p.gen, rho_t, p.duration, config));
        } else {
          rho_t = (*p.unitary * rho_t * p.unitary->adjoint()).eval();
        }
        DensityMatrix(space, rho_t).check_valid();
      } catch (const NumericalError& e) {
        throw NumericalError(e.what(), global);
      }
      analog_done += p.duration;
      if (options.record_segments && j + 1 < prepared.size()) {
        const double frac = step_analog > 0.0 ? analog_done / step_analog : 0.0;
        const double t_sim = (k + frac) * tau;
        record(t_sim, noiseless_ideal_at(t_sim));
      }
    }
    if (options.ideal_with_noise) {
      for (size_t p = 0; p < ideal_gens.size(); ++p) {
        detail::rk4(ideal_gens[p], rho_i, schedule.target_pieces[p].fraction * tau, config);
      }
    } else {
      rho_i = noiseless_ideal_at((k + 1) * tau);
    }
    record((k + 1) * tau, rho_i);
    require_positive(k + 1);
  }

  if (!out.consistent()) throw NumericalError("inconsistent result series");

  out.metadata = {{"variant", to_string(schedule.variant)},
                  {"N", std::to_string(space.n_qubits())},
                  {"n_max", std::to_string(space.fock_cutoff())},
                  {"n_steps", std::to_string(schedule.n_steps)}};
  return out;
}

}  // namespace dicke

#endif  // DICKE_LINDBLAD_HPP
