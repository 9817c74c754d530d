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


// Noisy deep-strong-coupling run for N = 1..3 printing fidelity and photon
// number at a few instants.

#include <cmath>
#include <iomanip>
#include <iostream>

#include "dicke/dicke.hpp"

int main() {
  const dicke::NoiseParams noise{0.01, 0.005, 0.005};
  const double g = 1.5, t = 0.7 / g;
  for (int n_qubits = 1; n_qubits <= 3; ++n_qubits) {
    const dicke::ModelParams p =
        dicke::ModelParams::homogeneous(n_qubits, 0.05, 1.0, g * std::sqrt(static_cast<double>(n_qubits)));
    const dicke::HilbertSpace space = dicke::build_space(n_qubits, 15);
    const dicke::TrotterSchedule s = dicke::dicke_schedule(space, p, t, 9);
    const dicke::SimulationResult r =
        dicke::run_schedule(s, dicke::DensityMatrix::pure(dicke::ground_state(space)), noise, {});
    std::cout << "N=" << n_qubits << "\n";
    for (size_t k = 0; k < r.size(); k += 3) {
      std::cout << std::fixed << std::setprecision(4) << "  g*t=" << r.time_grid[k].g_t << "  F=" << r.fidelity[k]
                << "  <n>=" << r.photon_number_trotter[k] << "  ideal <n>=" << r.photon_number_ideal[k] << "\n";
    }
  }
  return 0;
}
