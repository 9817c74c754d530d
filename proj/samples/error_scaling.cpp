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


// Trotter error of the digital-analog Dicke protocol against the number of
// steps, next to the analytic leading term and its Cauchy-Schwarz bound.
//
//   error_scaling [N] [g*t]

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "dicke/dicke.hpp"

int main(int argc, char** argv) {
  const int n_qubits = argc > 1 ? std::atoi(argv[1]) : 2;
  const double gt = argc > 2 ? std::atof(argv[2]) : 1.0;
  const double g = 1.5;

  const dicke::ModelParams params =
      dicke::ModelParams::homogeneous(n_qubits, 0.05, 1.0, g * std::sqrt(static_cast<double>(n_qubits)));
  const dicke::HilbertSpace space = dicke::build_space(n_qubits, 25);
  const dicke::StateVector psi0 = dicke::ground_state(space);

  std::cout << "# N=" << n_qubits << " g=" << g << " g*t=" << gt << " n_max=" << space.fock_cutoff() << "\n";
  std::cout << dicke::ErrorReport::csv_header() << "\n";
  for (int n : {2, 4, 8, 16, 32, 64}) {
    const dicke::TrotterSchedule s = dicke::dicke_schedule(space, params, gt / g, n);
    std::cout << dicke::error_report(s, params, psi0).csv_row() << "\n";
  }
  return 0;
}
