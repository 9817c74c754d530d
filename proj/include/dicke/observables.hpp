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

#ifndef DICKE_OBSERVABLES_HPP
#define DICKE_OBSERVABLES_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dicke/hilbert.hpp"

namespace dicke {

/// Overlap fidelity F = Re Tr(rho_T rho_I).
///
/// This is the plain overlap used to compare Trotterized and ideal states, NOT
/// the Uhlmann fidelity; for mixed states it can be well below 1 even when
/// rho_T == rho_I (it then equals the purity).
inline double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_i) {
  require_same_space(rho_t.space(), rho_i.space());
  // Tr(AB) = sum_jk A_jk B_kj without forming the product.
  return (rho_t.matrix().transpose().cwiseProduct(rho_i.matrix())).sum().real();
}

/// <a^dagger a> = Tr(a^dagger a rho); the number operator is diagonal so only
/// the diagonal of rho contributes.
inline double photon_number(const DensityMatrix& rho) {
  const HilbertSpace& s = rho.space();
  double n = 0.0;
  for (Index k = 0; k < s.dim(); ++k) n += s.decompose(k).fock * rho.matrix()(k, k).real();
  return n;
}

/// Tr(rho_t rho_0); equals <psi0|rho_t|psi0> for a pure initial state.
inline double survival_probability(const DensityMatrix& rho_t, const DensityMatrix& rho_0) {
  return fidelity(rho_t, rho_0);
}

/// Population in the top two Fock levels (truncation guard).
inline double leakage(const DensityMatrix& rho) {
  const HilbertSpace& s = rho.space();
  const int first = std::max(0, s.fock_cutoff() - 1);
  double p = 0.0;
  for (Index k = 0; k < s.dim(); ++k) {
    if (s.decompose(k).fock >= first) p += rho.matrix()(k, k).real();
  }
  return p;
}

/// Population of each Fock level, summed over qubit states.
inline std::vector<double> fock_populations(const DensityMatrix& rho) {
  const HilbertSpace& s = rho.space();
  std::vector<double> pop(s.fock_dim(), 0.0);
  for (Index k = 0; k < s.dim(); ++k) pop[s.decompose(k).fock] += rho.matrix()(k, k).real();
  return pop;
}

struct SamplePoint {
  double t_sim = 0.0;
  double g_t = 0.0;
};

/// Time series on the stroboscopic grid (one point per Trotter step, plus t=0).
struct SimulationResult {
  std::vector<SamplePoint> time_grid;
  std::vector<double> fidelity;
  std::vector<double> photon_number_trotter;
  std::vector<double> photon_number_ideal;
  std::vector<double> survival;  // of the initial state under the ideal evolution
  std::vector<double> leakage;   // of the Trotterized state
  std::vector<double> trace_error;
  std::vector<std::pair<std::string, std::string>> metadata;
  double max_trace_drift = 0.0;  // largest per-segment drift before renormalization

  // Filled only when RunOptions::keep_states is set.
  std::vector<Matrix> trotter_states;
  std::vector<Matrix> ideal_states;

  size_t size() const { return time_grid.size(); }

  bool consistent() const {
    const size_t n = time_grid.size();
    return fidelity.size() == n && photon_number_trotter.size() == n && photon_number_ideal.size() == n &&
           survival.size() == n && leakage.size() == n && trace_error.size() == n;
  }
};

}  // namespace dicke

#endif  // DICKE_OBSERVABLES_HPP
