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

#ifndef DICKE_HAMILTONIANS_HPP
#define DICKE_HAMILTONIANS_HPP

#include <atomic>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/hilbert.hpp"

namespace dicke {

/// Square-pulse approximation of the kicked coupling
/// lambda(t) = lambda0 + lambda1 * sum_k delta(t/T - 2 pi k).
struct PulseParams {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double period = 1.0;  // T; kicks sit at t_k = 2 pi k T
  double alpha = 1.0;   // pulse height
  double width = 1.0;   // pulse width tau, alpha * tau == 1

  double kick_interval() const { return 2.0 * std::numbers::pi * period; }
};

/// Interaction-picture parameters of the simulating circuit-QED device.
struct FrameParams {
  std::vector<double> qubit_detuning;  // omega_0 - delta, one per qubit
  std::vector<double> alt_detuning;    // tilde omega_0 - delta, one per qubit
  double mode_detuning = 0.0;          // omega - delta
  double coupling = 0.0;               // g
};

/// Every model parameter in one record. Frequencies are angular.
struct ModelParams {
  int n_qubits = 1;
  std::vector<double> qubit_freqs;  // omega_0^i; a single entry is broadcast to all qubits
  double mode_freq = 1.0;           // omega^D
  double coupling = 0.0;            // lambda^D (collective, unnormalized)
  double bias = 0.0;                // Delta
  std::optional<PulseParams> pulse;
  std::optional<FrameParams> frame;
  std::optional<std::vector<double>> level_energies;  // epsilon_i for Fermi-Bose mode

  static ModelParams homogeneous(int n, double qubit_freq, double mode_freq, double coupling) {
    ModelParams p;
    p.n_qubits = n;
    p.qubit_freqs = {qubit_freq};
    p.mode_freq = mode_freq;
    p.coupling = coupling;
    return p;
  }

  double qubit_freq(int i) const { return qubit_freqs.size() == 1 ? qubit_freqs[0] : qubit_freqs.at(i); }

  std::vector<double> expanded_qubit_freqs() const {
    std::vector<double> out(n_qubits);
    for (int i = 0; i < n_qubits; ++i) out[i] = qubit_freq(i);
    return out;
  }

  /// Normalized per-qubit coupling g = lambda / sqrt(N).
  double normalized_coupling() const { return coupling / std::sqrt(static_cast<double>(n_qubits)); }

  void validate() const {
    auto finite = [](double v, const char* name) {
      if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
    };
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (qubit_freqs.empty()) throw std::invalid_argument("qubit_freqs must not be empty");
    if (qubit_freqs.size() != 1 && qubit_freqs.size() != static_cast<size_t>(n_qubits)) {
      throw std::invalid_argument("qubit_freqs must have 1 or N entries");
    }
    for (double w : qubit_freqs) finite(w, "qubit frequency");
    finite(mode_freq, "mode frequency");
    finite(coupling, "coupling");
    finite(bias, "bias");
    if (coupling < 0.0) throw std::invalid_argument("coupling must be >= 0");
    if (pulse) {
      finite(pulse->lambda0, "pulse lambda0");
      finite(pulse->lambda1, "pulse lambda1");
      finite(pulse->alpha, "pulse alpha");
      finite(pulse->width, "pulse width");
      finite(pulse->period, "pulse period");
      if (pulse->width <= 0.0 || pulse->period <= 0.0) {
        throw std::invalid_argument("pulse width and period must be positive");
      }
      if (std::abs(pulse->alpha * pulse->width - 1.0) > 1e-12) {
        throw std::invalid_argument("pulse must satisfy alpha * tau = 1");
      }
      if (pulse->width > pulse->kick_interval()) {
        throw std::invalid_argument("pulse width exceeds the kick interval 2 pi T");
      }
    }
    if (frame) {
      const size_t n = static_cast<size_t>(n_qubits);
      if (frame->qubit_detuning.size() != n || frame->alt_detuning.size() != n) {
        throw std::invalid_argument("frame detuning lists must have N entries");
      }
    }
  }
};

/// Fill the frame fields from Dicke targets using the symmetric convention
/// omega_0 - delta = +omega_0^D / 2, tilde omega_0 - delta = -omega_0^D / 2,
/// omega - delta = omega^D / 2, g = lambda^D / sqrt(N).
inline ModelParams frame_map(ModelParams p) {
  if (p.n_qubits < 1) throw std::invalid_argument("frame_map: N must be >= 1");
  if (p.coupling < 0.0) throw std::invalid_argument("frame_map: negative coupling");
  p.validate();
  FrameParams f;
  for (int i = 0; i < p.n_qubits; ++i) {
    f.qubit_detuning.push_back(0.5 * p.qubit_freq(i));
    f.alt_detuning.push_back(-0.5 * p.qubit_freq(i));
  }
  f.mode_detuning = 0.5 * p.mode_freq;
  f.coupling = p.normalized_coupling();
  p.frame = std::move(f);
  return p;
}

/// Dicke parameters implied by a frame: omega_0^D = omega_0 - tilde omega_0,
/// omega^D = 2 (omega - delta), lambda^D = sqrt(N) g.
inline ModelParams dicke_from_frame(const FrameParams& f) {
  if (f.qubit_detuning.empty() || f.qubit_detuning.size() != f.alt_detuning.size()) {
    throw std::invalid_argument("dicke_from_frame: inconsistent detuning lists");
  }
  ModelParams p;
  p.n_qubits = static_cast<int>(f.qubit_detuning.size());
  for (size_t i = 0; i < f.qubit_detuning.size(); ++i) {
    p.qubit_freqs.push_back(f.qubit_detuning[i] - f.alt_detuning[i]);
  }
  p.mode_freq = 2.0 * f.mode_detuning;
  p.coupling = std::sqrt(static_cast<double>(p.n_qubits)) * f.coupling;
  p.frame = f;
  return p;
}

inline void require_qubit_count(const HilbertSpace& space, int n, const char* who) {
  if (space.n_qubits() != n) {
    throw std::invalid_argument(std::string(who) + ": space has N=" + std::to_string(space.n_qubits()) +
                                " but parameters have N=" + std::to_string(n));
  }
}

/// Sum_i sigma_+^i sigma_-^i + a^dagger a
inline Operator excitation_number(const HilbertSpace& space) {
  Operator n = boson_op(space, BosonKind::n);
  for (int i = 0; i < space.n_qubits(); ++i) {
    n += qubit_op(space, i, PauliKind::plus) * qubit_op(space, i, PauliKind::minus);
  }
  return n;
}

/// sum_i (w_i / 2) sigma_z^i + w_mode a^dagger a
inline Operator free_hamiltonian(const HilbertSpace& space, std::span<const double> qubit_freqs,
                                 double mode_freq) {
  if (qubit_freqs.size() != static_cast<size_t>(space.n_qubits())) {
    throw std::invalid_argument("free_hamiltonian: need one frequency per qubit");
  }
  Operator h = mode_freq * boson_op(space, BosonKind::n);
  for (int i = 0; i < space.n_qubits(); ++i) h += (0.5 * qubit_freqs[i]) * qubit_op(space, i, PauliKind::z);
  return h;
}

/// Sum_i (sigma_+^i a + sigma_-^i a^dagger)
inline Operator rotating_coupling(const HilbertSpace& space) {
  const Operator a = boson_op(space, BosonKind::a);
  const Operator ad = boson_op(space, BosonKind::adag);
  Operator c = Operator::zero(space);
  for (int i = 0; i < space.n_qubits(); ++i) {
    c += qubit_op(space, i, PauliKind::plus) * a + qubit_op(space, i, PauliKind::minus) * ad;
  }
  return c;
}

/// Sum_i (sigma_-^i a + sigma_+^i a^dagger)
inline Operator counter_rotating_coupling(const HilbertSpace& space) {
  const Operator a = boson_op(space, BosonKind::a);
  const Operator ad = boson_op(space, BosonKind::adag);
  Operator c = Operator::zero(space);
  for (int i = 0; i < space.n_qubits(); ++i) {
    c += qubit_op(space, i, PauliKind::minus) * a + qubit_op(space, i, PauliKind::plus) * ad;
  }
  return c;
}

/// Sum_i sigma_x^i (a + a^dagger)
inline Operator dicke_coupling(const HilbertSpace& space) {
  return collective_op(space, PauliKind::x) *
         (boson_op(space, BosonKind::a) + boson_op(space, BosonKind::adag));
}

/// Frame-picture Tavis-Cummings:
/// sum_i (d_i/2) sigma_z^i + d_m a^dagger a + g sum_i (sigma_+^i a + sigma_-^i a^dagger).
/// Commutes with excitation_number().
inline Operator tavis_cummings(const HilbertSpace& space, std::span<const double> qubit_detunings,
                               double mode_detuning, double g) {
  if (qubit_detunings.size() != static_cast<size_t>(space.n_qubits())) {
    throw std::invalid_argument("tavis_cummings: need one detuning per qubit");
  }
  return free_hamiltonian(space, qubit_detunings, mode_detuning) + g * rotating_coupling(space);
}

namespace fault {
/// Mutation hook for the verification suite: flips the sign of the
/// anti-Tavis-Cummings coupling so the conjugation identity must fail.
inline std::atomic<bool> flip_anti_tc_sign{false};
}  // namespace fault

/// -sum_i (d_i/2) sigma_z^i + d_m a^dagger a + g sum_i (sigma_-^i a + sigma_+^i a^dagger),
/// i.e. the Tavis-Cummings Hamiltonian conjugated by exp(i pi/2 sum_i sigma_x^i).
inline Operator anti_tavis_cummings(const HilbertSpace& space, std::span<const double> qubit_detunings,
                                    double mode_detuning, double g) {
  if (qubit_detunings.size() != static_cast<size_t>(space.n_qubits())) {
    throw std::invalid_argument("anti_tavis_cummings: need one detuning per qubit");
  }
  std::vector<double> flipped(qubit_detunings.begin(), qubit_detunings.end());
  for (double& d : flipped) d = -d;
  const double sign = fault::flip_anti_tc_sign.load() ? -1.0 : 1.0;
  return free_hamiltonian(space, flipped, mode_detuning) + (sign * g) * counter_rotating_coupling(space);
}

enum class Axis { x, y };

/// exp(-i theta/2 sum_i sigma_axis^i), built as a product of exact single-qubit rotations.
inline Operator collective_rotation(const HilbertSpace& space, Axis axis, double theta) {
  const Eigen::Matrix2cd sigma = detail::pauli(axis == Axis::x ? PauliKind::x : PauliKind::y);
  const Eigen::Matrix2cd r =
      std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity() - kI * std::sin(0.5 * theta) * sigma;
  Matrix u = Matrix::Identity(space.dim(), space.dim());
  for (int i = 0; i < space.n_qubits(); ++i) u = detail::embed_qubit(space, i, r) * u;
  return {space, std::move(u)};
}

/// sum_i (w0_i/2) sigma_z^i + w a^dagger a + (lambda/sqrt(N)) sum_i sigma_x^i (a + a^dagger)
inline Operator dicke(const HilbertSpace& space, const ModelParams& p) {
  p.validate();
  require_qubit_count(space, p.n_qubits, "dicke");
  const std::vector<double> w0 = p.expanded_qubit_freqs();
  return free_hamiltonian(space, w0, p.mode_freq) + p.normalized_coupling() * dicke_coupling(space);
}

inline Operator biased_dicke(const HilbertSpace& space, const ModelParams& p) {
  return dicke(space, p) + p.bias * collective_op(space, PauliKind::x);
}

/// Per-qubit frequencies; rotating=true keeps only the Tavis-Cummings coupling,
/// rotating=false couples through sigma_x^i (a + a^dagger). Both use lambda/sqrt(N).
inline Operator inhomogeneous_dicke(const HilbertSpace& space, std::span<const double> qubit_freqs,
                                    double mode_freq, double coupling, bool rotating) {
  const double g = coupling / std::sqrt(static_cast<double>(space.n_qubits()));
  return free_hamiltonian(space, qubit_freqs, mode_freq) +
         g * (rotating ? rotating_coupling(space) : dicke_coupling(space));
}

/// Square-pulse coupling: lambda0 + lambda1 * alpha inside a window of width
/// tau centred on each kick instant 2 pi k T (k >= 1), lambda0 elsewhere.
inline double pulsed_coupling(double t, const ModelParams& p) {
  if (!p.pulse) throw std::invalid_argument("pulsed_coupling: pulse parameters missing");
  const PulseParams& pp = *p.pulse;
  const double interval = pp.kick_interval();
  if (pp.width > interval) throw std::invalid_argument("pulsed_coupling: pulse width exceeds period");
  const double k = std::round(t / interval);
  if (k >= 1.0) {
    const double offset = t - k * interval;
    if (offset >= -0.5 * pp.width && offset < 0.5 * pp.width) return pp.lambda0 + pp.lambda1 * pp.alpha;
  }
  return pp.lambda0;
}

/// The two normalized couplings g0 = lambda0/sqrt(N), g1 = (lambda0 + lambda1 alpha)/sqrt(N).
inline std::pair<double, double> pulsed_couplings(const ModelParams& p) {
  if (!p.pulse) throw std::invalid_argument("pulse parameters missing");
  const double s = std::sqrt(static_cast<double>(p.n_qubits));
  return {p.pulse->lambda0 / s, (p.pulse->lambda0 + p.pulse->lambda1 * p.pulse->alpha) / s};
}

}  // namespace dicke

#endif  // DICKE_HAMILTONIANS_HPP
