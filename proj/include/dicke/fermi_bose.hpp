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

#ifndef DICKE_FERMI_BOSE_HPP
#define DICKE_FERMI_BOSE_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "dicke/hamiltonians.hpp"
#include "dicke/hilbert.hpp"

namespace dicke {

enum class Spin { up = 0, down = 1 };

/// Tiny fermion-boson space for checking the pair-to-qubit mapping.
///
/// Modes are ordered (0 up, 0 down, 1 up, 1 down) and stored like qubits of a
/// HilbertSpace carrier: local index 0 = occupied, 1 = empty, so the local
/// creation operator is sigma_+. Jordan-Wigner strings use (-1)^n = -sigma_z.
class FermionicSpace {
 public:
  FermionicSpace(int n_levels, int fock_cutoff) : n_levels_(n_levels), carrier_(check(n_levels), fock_cutoff) {}

  int n_levels() const noexcept { return n_levels_; }
  int n_modes() const noexcept { return 2 * n_levels_; }
  const HilbertSpace& carrier() const noexcept { return carrier_; }
  Index dim() const noexcept { return carrier_.dim(); }

  int mode(int level, Spin s) const { return 2 * level + static_cast<int>(s); }

  Operator annihilate(int level, Spin s) const { return create(level, s).adjoint(); }

  Operator create(int level, Spin s) const {
    const int j = mode(level, s);
    Operator c = qubit_op(carrier_, j, PauliKind::plus);
    for (int k = 0; k < j; ++k) c = (-1.0 * qubit_op(carrier_, k, PauliKind::z)) * c;
    return c;
  }

  Operator number(int level, Spin s) const { return create(level, s) * annihilate(level, s); }

  /// max over all mode pairs of |{c_i, c_j^dagger} - delta_ij| and |{c_i, c_j}|.
  double anticommutation_error() const {
    double err = 0.0;
    const Matrix id = Matrix::Identity(dim(), dim());
    for (int li = 0; li < n_levels_; ++li) {
      for (Spin si : {Spin::up, Spin::down}) {
        for (int lj = 0; lj < n_levels_; ++lj) {
          for (Spin sj : {Spin::up, Spin::down}) {
            const Matrix ac = anticommutator(annihilate(li, si), create(lj, sj)).matrix();
            const bool same = li == lj && si == sj;
            err = std::max(err, max_abs(same ? Matrix(ac - id) : ac));
            err = std::max(err, max_abs(anticommutator(annihilate(li, si), annihilate(lj, sj)).matrix()));
          }
        }
      }
    }
    return err;
  }

 private:
  static int check(int n_levels) {
    if (n_levels < 1 || n_levels > 2) {
      throw std::invalid_argument("fermionic oracle supports 1 or 2 levels only, got " +
                                  std::to_string(n_levels));
    }
    return 2 * n_levels;
  }

  int n_levels_;
  HilbertSpace carrier_;
};

struct FermiBoseOracle {
  FermionicSpace fermions;
  HilbertSpace qubits;
  Operator h_fermionic;  // full pairing Hamiltonian on the fermionic space
  Operator projector;    // onto "every level empty or doubly occupied"
  Operator h_mapped;     // Tavis-Cummings model with omega_0^i = 2 eps_i, lambda = sqrt(N) g, plus sum eps_i
  Matrix isometry;       // qubit basis -> fermionic basis, V^dagger V = I
  double mapping_error = 0.0;     // max|V^dagger H_F V - H_mapped|
  double decoupling_error = 0.0;  // max|P H_F (I - P)|
  double spectrum_error = 0.0;    // max eigenvalue difference, restricted vs mapped
  double car_error = 0.0;

  bool holds(double tol = 1e-10) const {
    return mapping_error <= tol && decoupling_error <= tol && spectrum_error <= tol && car_error <= tol;
  }
};

/// Build the Fermi-Bose condensate Hamiltonian
///   sum eps_i n_{i sigma} + omega a^dagger a + g sum_i (a^dagger c_{i down} c_{i up} + h.c.)
/// and compare it with its qubit image on the empty/doubly-occupied subspace.
inline FermiBoseOracle fermi_bose_oracle(std::span<const double> level_energies, double mode_freq, double g,
                                         int fock_cutoff) {
  const int levels = static_cast<int>(level_energies.size());
  FermionicSpace fs(levels, fock_cutoff);
  const HilbertSpace& fc = fs.carrier();

  const Operator a = boson_op(fc, BosonKind::a);
  const Operator ad = boson_op(fc, BosonKind::adag);
  Operator h = mode_freq * boson_op(fc, BosonKind::n);
  for (int i = 0; i < levels; ++i) {
    h += level_energies[i] * (fs.number(i, Spin::up) + fs.number(i, Spin::down));
    const Operator pair_down = fs.annihilate(i, Spin::down) * fs.annihilate(i, Spin::up);
    const Operator pair_up = fs.create(i, Spin::up) * fs.create(i, Spin::down);
    h += g * (ad * pair_down + a * pair_up);
  }

  // Qubit excited (bit 0) <-> both modes occupied (bits 00); ground <-> both empty (bits 11).
  const HilbertSpace qs = build_space(levels, fock_cutoff);
  Matrix v = Matrix::Zero(fs.dim(), qs.dim());
  for (Index k = 0; k < qs.dim(); ++k) {
    const auto label = qs.decompose(k);
    std::uint32_t modes = 0;
    for (int i = 0; i < levels; ++i) {
      const std::uint32_t pair_bits = qs.qubit_excited(label.qubits, i) ? 0b00U : 0b11U;
      modes = (modes << 2) | pair_bits;
    }
    v(fc.compose({modes, label.fock}), k) = 1.0;
  }

  std::vector<double> w0(levels);
  double shift = 0.0;
  for (int i = 0; i < levels; ++i) {
    w0[i] = 2.0 * level_energies[i];
    shift += level_energies[i];
  }
  const double lambda = g * std::sqrt(static_cast<double>(levels));
  Operator mapped = inhomogeneous_dicke(qs, w0, mode_freq, lambda, /*rotating=*/true) + shift * Operator::identity(qs);

  const Matrix p = v * v.adjoint();
  const Matrix restricted = v.adjoint() * h.matrix() * v;
  const Matrix leak = p * h.matrix() * (Matrix::Identity(fs.dim(), fs.dim()) - p);

  Eigen::SelfAdjointEigenSolver<Matrix> er(restricted, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> em(mapped.matrix(), Eigen::EigenvaluesOnly);

  FermiBoseOracle out{fs, qs, h, Operator(fc, p), mapped, v};
  out.mapping_error = max_abs(restricted - mapped.matrix());
  out.decoupling_error = max_abs(leak);
  out.spectrum_error = (er.eigenvalues() - em.eigenvalues()).cwiseAbs().maxCoeff();
  out.car_error = fs.anticommutation_error();
  return out;
}

}  // namespace dicke

#endif  // DICKE_FERMI_BOSE_HPP
