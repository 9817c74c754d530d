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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dicke/config.hpp"
#include "dicke/error_bounds.hpp"

namespace dicke {
namespace {

ModelParams dsc(int n) { return ModelParams::homogeneous(n, 0.05, 1.0, 1.5 * std::sqrt(double(n))); }

TEST(DigitalSplit, FromFrame) {
  const DigitalSplit s = digital_split(dsc(2));
  ASSERT_EQ(s.w1.size(), 2u);
  EXPECT_DOUBLE_EQ(s.w1[0], 0.025);
  EXPECT_DOUBLE_EQ(s.w2[0], 0.025);
  EXPECT_DOUBLE_EQ(s.mode, 0.5);
  EXPECT_DOUBLE_EQ(s.g, 1.5);
  EXPECT_DOUBLE_EQ(s.max_rate(), 1.5);
}

TEST(DigitalSplit, HalvesSumToDicke) {
  const HilbertSpace space = build_space(3, 5);
  const DigitalSplit s = digital_split(dsc(3));
  EXPECT_LE(max_abs((split_h1(space, s) + split_h2(space, s)).matrix() - dicke(space, dsc(3)).matrix()), 1e-13);
}

TEST(LeadingError, ClosedFormMatchesCommutator) {
  for (int n : {1, 2, 3}) {
    const HilbertSpace space = build_space(n, 8);
    ModelParams p = dsc(n);
    p.qubit_freqs = {0.3};
    const DigitalSplit s = digital_split(p);
    const Operator brute = leading_error_operator(split_h1(space, s), split_h2(space, s), 0.7, 3);
    const Operator closed = closed_form_error(space, s, 0.7, 3);
    // The truncated [a, a^+] differs at the cutoff, so compare away from it.
    EXPECT_LE(max_abs(mask_fock_boundary(space, (brute - closed).matrix())), 1e-12) << "N=" << n;
    EXPECT_GT(max_abs(brute.matrix()), 0.1);
  }
}

TEST(LeadingError, MatchesSecondOrderProductExpansion) {
  // e^{-i H2 tau} e^{-i H1 tau} = e^{-i (H1 + H2) tau} + (tau^2 / 2) [H1, H2] + O(tau^3).
  const HilbertSpace space = build_space(2, 12);
  const DigitalSplit s = digital_split(dsc(2));
  const Operator h1 = split_h1(space, s), h2 = split_h2(space, s);
  const double tau = 1e-3;
  const Matrix prod = evolve_unitary(h2, tau).matrix() * evolve_unitary(h1, tau).matrix();
  const Matrix diff = prod - evolve_unitary(h1 + h2, tau).matrix();
  const Operator eps = leading_error_operator(h1, h2, tau, 1);
  const double ref = restricted_norm(eps, 4);
  EXPECT_LE(restricted_norm(Operator(space, diff) - eps, 4), 0.02 * ref);
}

TEST(LeadingError, ScalesAsTimeSquaredOverSteps) {
  const HilbertSpace space = build_space(2, 6);
  const DigitalSplit s = digital_split(dsc(2));
  const Operator h1 = split_h1(space, s), h2 = split_h2(space, s);
  const double base = max_abs(leading_error_operator(h1, h2, 1.0, 1).matrix());
  EXPECT_NEAR(max_abs(leading_error_operator(h1, h2, 2.0, 1).matrix()), 4.0 * base, 1e-12 * base);
  EXPECT_NEAR(max_abs(leading_error_operator(h1, h2, 1.0, 4).matrix()), 0.25 * base, 1e-12 * base);
  EXPECT_THROW(leading_error_operator(h1, h2, 1.0, 0), std::invalid_argument);
}

TEST(LeadingError, VanishesForCommutingParts) {
  const HilbertSpace space = build_space(2, 4);
  const std::vector<double> w{0.3, 0.5};
  const Operator a = free_hamiltonian(space, w, 1.0);
  const Operator b = excitation_number(space);
  EXPECT_EQ(max_abs(leading_error_operator(a, b, 1.0, 1).matrix()), 0.0);
}

TEST(LeadingError, TrivialCases) {
  const HilbertSpace space = build_space(2, 4);
  const DigitalSplit s = digital_split(dsc(2));
  EXPECT_EQ(max_abs(leading_error_operator(split_h1(space, s), split_h2(space, s), 0.0, 3).matrix()), 0.0);
  DigitalSplit off = s;
  off.g = 0.0;
  EXPECT_EQ(max_abs(closed_form_error(space, off, 1.0, 3).matrix()), 0.0);
}

TEST(LeadingError, CouplingCommutatorIdentity) {
  // [sum(s+ a + s- a^+), sum(s- a + s+ a^+)] = sum sz (a^2 - a^+^2) + sum_ij (s+i s+j - s-j s-i)
  const HilbertSpace space = build_space(3, 6);
  const Operator a = boson_op(space, BosonKind::a);
  const Operator ad = boson_op(space, BosonKind::adag);
  Operator rhs = Operator::zero(space);
  for (int i = 0; i < 3; ++i) {
    rhs += qubit_op(space, i, PauliKind::z) * (a * a - ad * ad);
    for (int j = 0; j < 3; ++j) {
      rhs += qubit_op(space, i, PauliKind::plus) * qubit_op(space, j, PauliKind::plus) -
             qubit_op(space, j, PauliKind::minus) * qubit_op(space, i, PauliKind::minus);
    }
  }
  const Operator lhs = commutator(rotating_coupling(space), counter_rotating_coupling(space));
  EXPECT_LE(max_abs(mask_fock_boundary(space, (lhs - rhs).matrix())), 1e-12);
}

TEST(BiasedError, MatchesThreeTermCommutatorSum) {
  const HilbertSpace space = build_space(2, 8);
  ModelParams p = dsc(2);
  p.qubit_freqs = {0.4};
  p.bias = 0.3;
  const DigitalSplit s = digital_split(p);
  const std::vector<Operator> parts{p.bias * collective_op(space, PauliKind::x), split_h1(space, s),
                                    split_h2(space, s)};
  const Operator brute = leading_error_operator(parts, 0.5, 5);
  EXPECT_LE(restricted_norm(brute - biased_error_operator(p, 0.5, 5, space), 6), 1e-12);
}

TEST(BiasedError, GenericDetunings) {
  const HilbertSpace space = build_space(2, 8);
  DigitalSplit s;
  s.w1 = {0.3, 0.3};
  s.w2 = {0.1, 0.1};
  s.mode = 0.5;
  s.g = 1.0;
  const double bias = 0.2;
  const std::vector<Operator> parts{bias * collective_op(space, PauliKind::x), split_h1(space, s), split_h2(space, s)};
  const Operator brute = leading_error_operator(parts, 0.8, 4);
  const Operator eps = biased_error_operator(space, s, bias, 0.8, 4);
  EXPECT_LE(restricted_norm(brute - eps, 6), 1e-12);
  // The sigma_y term is present for these detunings.
  const Operator plain = leading_error_operator(split_h1(space, s), split_h2(space, s), 0.8, 4);
  EXPECT_NEAR(max_abs((eps - plain).matrix()), 0.2 * 0.64 * 0.4 / 8.0, 1e-15);
}

TEST(BiasedError, SigmaYTermVanishesWithoutQubitFrequency) {
  const HilbertSpace space = build_space(2, 6);
  ModelParams p = dsc(2);
  p.qubit_freqs = {0.0};
  p.bias = 0.5;
  const DigitalSplit s = digital_split(p);
  const Operator plain = leading_error_operator(split_h1(space, s), split_h2(space, s), 1.0, 2);
  EXPECT_EQ(max_abs((biased_error_operator(p, 1.0, 2, space) - plain).matrix()), 0.0);
}

TEST(Bounds, CauchySchwarzValues) {
  EXPECT_DOUBLE_EQ(cauchy_schwarz_bound(1, 1, 1.0, 1.5), (8.0 + 1.5 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(cauchy_schwarz_bound(2, 10, 2.0, 3.0), (4.0 * 2 * 4.0 + 2 * 3.0 + 4.0) / 20.0);
  EXPECT_DOUBLE_EQ(biased_bound(2, 10, 2.0, 3.0), cauchy_schwarz_bound(2, 10, 2.0, 3.0) + 0.2);
  EXPECT_DOUBLE_EQ(cauchy_schwarz_bound(3, 20, 1.0, 1.0), 0.5 * cauchy_schwarz_bound(3, 10, 1.0, 1.0));
  EXPECT_THROW(cauchy_schwarz_bound(2, 0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(cauchy_schwarz_bound(2, 1, -1.0, 1.0), std::invalid_argument);
}

TEST(Bounds, RestrictedLadderNorms) {
  const HilbertSpace space = build_space(1, 10);
  for (int m : {1, 3, 6}) EXPECT_NEAR(restricted_norms(space, m).a, std::sqrt(double(m)), 1e-12);
  // a^2 - a^+^2 has no matrix element inside {|0>, |1>}.
  EXPECT_EQ(restricted_norms(space, 1).a2diff, 0.0);
  EXPECT_GT(restricted_norms(space, 3).a2diff, 0.0);
}

TEST(Bounds, PopulatedDomain) {
  const std::vector<std::vector<double>> pops{{0.9, 0.1, 0.0, 0.0, 0.0, 0.0}, {0.5, 0.3, 0.2, 1e-7, 0.0, 0.0}};
  const FockDomain d = populated_domain(pops, 5);
  EXPECT_EQ(d.max_level, 2);
  EXPECT_FALSE(d.saturated);
  const FockDomain full = populated_domain({{0.2, 0.2, 0.2, 0.2, 0.1, 0.1}}, 5);
  EXPECT_EQ(full.max_level, 3);
  EXPECT_TRUE(full.saturated);
}

TEST(Bounds, DominateLeadingTermOnPresets) {
  for (const char* name : {"dicke-dsc-fidelity", "dicke-usc-photons"}) {
    const RunConfig c = preset(name);
    for (int n_q : c.n_qubits) {
      const HilbertSpace space = build_space(n_q, *c.fock_cutoff);
      const TrotterSchedule s = build_schedule(c, space, n_q, c.n_trotter.front());
      const ErrorReport r = error_report(s, model_params(c, n_q), ground_state(space));
      EXPECT_LE(r.leading_term_norm, r.cauchy_schwarz_bound) << name << " N=" << n_q;
      EXPECT_GE(r.domain.max_level, 1);
    }
  }
}

TEST(MeasuredError, MetricsAgree) {
  const HilbertSpace space = build_space(2, 12);
  const TrotterSchedule s = dicke_schedule(space, dsc(2), 0.2, 6);
  const MeasuredError e = measured_error(s, ground_state(space), {}, true);
  EXPECT_NEAR(e.trace_distance * e.trace_distance, e.infidelity, 1e-15);
  EXPECT_GT(e.trace_distance, 0.0);
  // The state error never exceeds the phase-aligned operator error.
  EXPECT_LE(e.trace_distance, e.operator_error + 1e-12);
  EXPECT_THROW(measured_error(s, ground_state(space), NoiseParams{0.1, 0.0, 0.0}), std::invalid_argument);
}

TEST(MeasuredError, ReportRow) {
  const HilbertSpace space = build_space(1, 10);
  const TrotterSchedule s = dicke_schedule(space, dsc(1), 0.3, 4);
  const ErrorReport r = error_report(s, dsc(1), ground_state(space));
  EXPECT_EQ(r.variant, "dicke");
  EXPECT_EQ(r.n_steps, 4);
  const std::string header = ErrorReport::csv_header();
  const std::string row = r.csv_row();
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
  EXPECT_GT(r.leading_term_norm, 0.0);
}

}  // namespace
}  // namespace dicke
