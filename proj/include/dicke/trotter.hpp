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

#ifndef DICKE_TROTTER_HPP
#define DICKE_TROTTER_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"

namespace dicke {

enum class Variant { dicke, biased, pulsed, fermi_bose_analog, broadband };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::dicke: return "dicke";
    case Variant::biased: return "biased";
    case Variant::pulsed: return "pulsed";
    case Variant::fermi_bose_analog: return "fermi_bose_analog";
    case Variant::broadband: return "broadband";
  }
  return "?";
}

enum class SegmentKind { analog, gate };

/// One element of a Trotter step. Analog segments carry a Hamiltonian and an
/// analog-clock duration; gates carry their ideal unitary and duration 0.
struct Segment {
  SegmentKind kind = SegmentKind::analog;
  std::string label;
  Operator op;
  double duration = 0.0;

  // Gates only: op == exp(-i angle/2 * generator). Used when gates are given
  // a finite duration under noise.
  std::optional<Operator> generator;
  double angle = 0.0;

  // Listing metadata.
  double coupling = 0.0;
  std::vector<double> qubit_detunings;
  double mode_detuning = 0.0;
};

struct TargetPiece {
  Operator hamiltonian;
  double fraction;  // share of one Trotter step of simulated time
};

/// A periodic gate/segment sequence. `step` holds one period in time order;
/// the full schedule is `step` repeated `n_steps` times.
///
/// Two clocks are kept: `simulated_time` is the evolution time of the target
/// model, while analog_time() is the total device time spent in analog
/// segments. For the Dicke protocol every step applies TC and anti-TC for
/// t/n each, so analog_time() = 2 * simulated_time.
struct TrotterSchedule {
  Variant variant;
  HilbertSpace space;
  std::vector<Segment> step;
  int n_steps;
  double simulated_time;
  double display_coupling;  // g (g0 for the pulsed model); sets the g*t axis
  Operator target;          // time-averaged simulated Hamiltonian
  std::vector<TargetPiece> target_pieces;

  double step_time() const { return simulated_time / n_steps; }

  double analog_time() const {
    double per_step = 0.0;
    for (const auto& s : step) per_step += s.duration;
    return per_step * n_steps;
  }

  size_t segment_count() const { return step.size() * static_cast<size_t>(n_steps); }
  size_t analog_count() const { return count(SegmentKind::analog) * n_steps; }
  size_t gate_count() const { return count(SegmentKind::gate) * n_steps; }
  size_t gates_per_step() const { return count(SegmentKind::gate); }

  const Segment& segment(size_t global_index) const { return step.at(global_index % step.size()); }

  /// One line per segment: index, step, kind, label, duration, coupling, detunings.
  std::string dump() const {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "# variant=" << to_string(variant) << " N=" << space.n_qubits() << " n_max=" << space.fock_cutoff()
       << " n_steps=" << n_steps << " simulated_time=" << simulated_time << " analog_time=" << analog_time()
       << "\n";
    for (size_t k = 0; k < segment_count(); ++k) {
      const Segment& s = segment(k);
      os << k << " step=" << k / step.size() << ' ' << (s.kind == SegmentKind::analog ? "analog" : "gate") << ' '
         << s.label << " duration=" << s.duration;
      if (s.kind == SegmentKind::analog) {
        os << " coupling=" << s.coupling << " mode_detuning=" << s.mode_detuning << " qubit_detunings=";
        for (size_t i = 0; i < s.qubit_detunings.size(); ++i) os << (i ? "," : "") << s.qubit_detunings[i];
      } else {
        os << " angle=" << s.angle;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  size_t count(SegmentKind kind) const {
    size_t c = 0;
    for (const auto& s : step) c += s.kind == kind ? 1 : 0;
    return c;
  }
};

namespace detail {

inline std::string fmt_num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline Segment analog_segment(const std::string& label, Operator h, double duration, double g,
                              std::vector<double> detunings, double mode_detuning) {
  Segment s{SegmentKind::analog, label, std::move(h), duration};
  s.coupling = g;
  s.qubit_detunings = std::move(detunings);
  s.mode_detuning = mode_detuning;
  return s;
}

inline Segment rotation_gate(const HilbertSpace& space, Axis axis, double theta) {
  const char* name = axis == Axis::x ? "Rx" : "Ry";
  Segment s{SegmentKind::gate, std::string(name) + "(" + fmt_num(theta / std::numbers::pi) + "pi)",
            collective_rotation(space, axis, theta), 0.0};
  s.generator = collective_op(space, axis == Axis::x ? PauliKind::x : PauliKind::y);
  s.angle = theta;
  return s;
}

/// TC(A) -> Rx(pi) -> TC(B) -> Rx(pi). The rotation sandwich turns the second
/// Tavis-Cummings block into anti-Tavis-Cummings (up to a global phase).
inline void append_dicke_pair(std::vector<Segment>& out, const HilbertSpace& space, const FrameParams& f,
                              double g, double duration, const std::string& tag) {
  out.push_back(analog_segment("TC(g=" + fmt_num(g) + ",det-A" + tag + ")",
                               tavis_cummings(space, f.qubit_detuning, f.mode_detuning, g), duration, g,
                               f.qubit_detuning, f.mode_detuning));
  out.push_back(rotation_gate(space, Axis::x, std::numbers::pi));
  out.push_back(analog_segment("TC(g=" + fmt_num(g) + ",det-B" + tag + ")",
                               tavis_cummings(space, f.alt_detuning, f.mode_detuning, g), duration, g,
                               f.alt_detuning, f.mode_detuning));
  out.push_back(rotation_gate(space, Axis::x, std::numbers::pi));
}

inline void check_schedule_args(const HilbertSpace& space, const ModelParams& p, double t, int n) {
  if (n < 1) throw std::invalid_argument("Trotter step count must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("simulated time must be finite and >= 0");
  p.validate();
  require_qubit_count(space, p.n_qubits, "schedule");
}

inline ModelParams with_frame(const ModelParams& p) { return p.frame ? p : frame_map(p); }

}  // namespace detail

/// Digital-analog Dicke protocol: each step is TC(A) t/n, Rx(pi), TC(B) t/n, Rx(pi).
/// Inhomogeneous qubit frequencies give the broadband variant.
inline TrotterSchedule dicke_schedule(const HilbertSpace& space, const ModelParams& params, double t, int n) {
  detail::check_schedule_args(space, params, t, n);
  const ModelParams p = detail::with_frame(params);
  std::vector<Segment> step;
  detail::append_dicke_pair(step, space, *p.frame, p.frame->coupling, t / n, "");
  Operator target = dicke(space, dicke_from_frame(*p.frame));
  const bool uniform = std::all_of(p.qubit_freqs.begin(), p.qubit_freqs.end(),
                                   [&](double w) { return w == p.qubit_freqs.front(); });
  return {uniform ? Variant::dicke : Variant::broadband,
          space,
          std::move(step),
          n,
          t,
          p.frame->coupling,
          target,
          {TargetPiece{target, 1.0}}};
}

/// Dicke step followed by a coupling-off block realizing Delta sum_i sigma_x^i:
/// Ry(-pi/2), free evolution under (w~/2) sum_i sigma_z^i with w~ = 2 Delta, Ry(+pi/2).
/// The block's mode detuning is zero so it only rotates the qubits.
inline TrotterSchedule biased_schedule(const HilbertSpace& space, const ModelParams& params, double t, int n) {
  detail::check_schedule_args(space, params, t, n);
  if (params.pulse) throw std::invalid_argument("biased schedule does not support pulsed couplings");
  const ModelParams p = detail::with_frame(params);
  const double tau = t / n;
  std::vector<Segment> step;
  detail::append_dicke_pair(step, space, *p.frame, p.frame->coupling, tau, "");
  const std::vector<double> bias_det(p.n_qubits, 2.0 * p.bias);
  step.push_back(detail::rotation_gate(space, Axis::y, -std::numbers::pi / 2));
  step.push_back(detail::analog_segment("FREE(w~=2Delta=" + detail::fmt_num(2.0 * p.bias) + ")",
                                        free_hamiltonian(space, bias_det, 0.0), tau, 0.0, bias_det, 0.0));
  step.push_back(detail::rotation_gate(space, Axis::y, std::numbers::pi / 2));
  ModelParams simulated = dicke_from_frame(*p.frame);
  simulated.bias = p.bias;
  Operator target = biased_dicke(space, simulated);
  return {Variant::biased, space, std::move(step), n, t, p.frame->coupling, target, {TargetPiece{target, 1.0}}};
}

/// Two Dicke pairs per step, at g0 = lambda0/sqrt(N) then g1 = (lambda0 + lambda1 alpha)/sqrt(N),
/// each simulating half a step. The target is the square-pulse Hamiltonian that is piecewise
/// constant on the same halves; `target` holds its step average.
inline TrotterSchedule pulsed_schedule(const HilbertSpace& space, const ModelParams& params, double t, int n) {
  detail::check_schedule_args(space, params, t, n);
  if (!params.pulse) throw std::invalid_argument("pulsed schedule needs pulse parameters");
  if (params.bias != 0.0) throw std::invalid_argument("pulsed schedule does not support a bias");
  const auto [g0, g1] = pulsed_couplings(params);
  const double root_n = std::sqrt(static_cast<double>(params.n_qubits));
  ModelParams p0 = params;
  p0.coupling = g0 * root_n;
  p0.frame.reset();
  p0 = frame_map(p0);
  ModelParams p1 = p0;
  p1.coupling = g1 * root_n;
  p1 = frame_map(p1);

  const double half = 0.5 * t / n;
  std::vector<Segment> step;
  detail::append_dicke_pair(step, space, *p0.frame, g0, half, ",g0");
  detail::append_dicke_pair(step, space, *p1.frame, g1, half, ",g1");
  Operator h0 = dicke(space, p0);
  Operator h1 = dicke(space, p1);
  Operator avg = 0.5 * (h0 + h1);
  return {Variant::pulsed, space, std::move(step), n, t, g0, avg, {TargetPiece{h0, 0.5}, TargetPiece{h1, 0.5}}};
}

/// Purely analog Fermi-Bose simulation: one inhomogeneous Tavis-Cummings
/// segment per step, no gates, analog time equal to simulated time.
inline TrotterSchedule fermi_bose_analog_schedule(const HilbertSpace& space, const ModelParams& params, double t,
                                                  int n) {
  detail::check_schedule_args(space, params, t, n);
  const std::vector<double> w0 = params.expanded_qubit_freqs();
  const double g = params.normalized_coupling();
  Operator h = tavis_cummings(space, w0, params.mode_freq, g);
  std::vector<Segment> step;
  step.push_back(detail::analog_segment("TC(g=" + detail::fmt_num(g) + ",inhomogeneous)", h, t / n, g, w0,
                                        params.mode_freq));
  Operator target = inhomogeneous_dicke(space, w0, params.mode_freq, params.coupling, /*rotating=*/true);
  return {Variant::fermi_bose_analog, space, std::move(step), n, t, g, target, {TargetPiece{target, 1.0}}};
}

/// Exact exponential of every segment of one step, in time order.
inline std::vector<Operator> segment_unitaries(const TrotterSchedule& s) {
  std::vector<Operator> out;
  out.reserve(s.step.size());
  for (const auto& seg : s.step) {
    out.push_back(seg.kind == SegmentKind::analog ? evolve_unitary(seg.op, seg.duration) : seg.op);
  }
  return out;
}

inline Operator product_in_time_order(const HilbertSpace& space, const std::vector<Operator>& us) {
  Matrix m = Matrix::Identity(space.dim(), space.dim());
  for (const auto& u : us) m = u.matrix() * m;
  return {space, std::move(m)};
}

inline Operator step_unitary(const TrotterSchedule& s) {
  return product_in_time_order(s.space, segment_unitaries(s));
}

inline Operator matrix_power(const Operator& u, int k) {
  Matrix result = Matrix::Identity(u.dim(), u.dim());
  Matrix base = u.matrix();
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return {u.space(), std::move(result)};
}

inline Operator schedule_unitary(const TrotterSchedule& s) { return matrix_power(step_unitary(s), s.n_steps); }

/// Exact propagator of the target over one Trotter step of simulated time.
inline Operator target_step_unitary(const TrotterSchedule& s) {
  std::vector<Operator> us;
  for (const auto& piece : s.target_pieces) us.push_back(evolve_unitary(piece.hamiltonian, piece.fraction * s.step_time()));
  return product_in_time_order(s.space, us);
}

inline Operator exact_target_unitary(const TrotterSchedule& s, int steps) {
  if (s.target_pieces.size() == 1) return evolve_unitary(s.target_pieces.front().hamiltonian, steps * s.step_time());
  return matrix_power(target_step_unitary(s), steps);
}

struct Trajectory {
  std::vector<double> times;  // simulated time after each step, starting at 0
  std::vector<Vector> states;
};

/// Noiseless execution: applies every segment's exact exponential in order and
/// records the state after each Trotter step.
inline Trajectory execute_unitary(const TrotterSchedule& s, const StateVector& psi0) {
  require_same_space(s.space, psi0.space);
  if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-10) throw std::invalid_argument("initial state is not normalized");
  const std::vector<Operator> us = segment_unitaries(s);
  Trajectory out;
  out.times.push_back(0.0);
  out.states.push_back(psi0.amplitudes);
  Vector psi = psi0.amplitudes;
  for (int k = 1; k <= s.n_steps; ++k) {
    for (const auto& u : us) psi = u.matrix() * psi;
    out.times.push_back(k * s.step_time());
    out.states.push_back(psi);
  }
  return out;
}

}  // namespace dicke

#endif  // DICKE_TROTTER_HPP
