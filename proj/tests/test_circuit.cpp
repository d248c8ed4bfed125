// Copyright 2026 The semicl Authors
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

#include "semicl/circuit.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "semicl/propagator.hpp"

using namespace semicl;

namespace {

QubitState random_qubits(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    ComplexVector v(std::size_t{1} << m);
    double s = 0.0;
    for (auto &z : v) {
        z = {n(rng), n(rng)};
        s += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(s);
    }
    return QubitState(v);
}

double max_abs_diff(const ComplexVector &a, const ComplexVector &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST(cost_model, closed_forms) {
    EXPECT_EQ(CostModel{CostModelKind::full}.gates(4), 29u);
    EXPECT_EQ(CostModel{CostModelKind::linear}.gates(7), 7u);
    EXPECT_EQ((CostModel{CostModelKind::poly, 2.0}.gates(5)), 25u);
    EXPECT_EQ(CostModel{CostModelKind::oracle}.gates(20), 1u);
    EXPECT_EQ(CostModel::parse("poly:3").gates(2), 8u);
    EXPECT_EQ(CostModel::parse("poly(2)").kind, CostModelKind::poly);
    EXPECT_EQ(CostModel::parse("full").name(), "full");
    EXPECT_THROW(CostModel::parse("quadratic"), std::invalid_argument);
    EXPECT_THROW(CostModel::parse("poly:-1"), std::invalid_argument);
}

TEST(qft, single_qubit_is_hadamard) {
    CircuitEmulator c(QubitState(1));
    c.qft();
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(c.state().amplitudes()[0] - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c.state().amplitudes()[1] - r), 0.0, 1e-15);
    EXPECT_EQ(c.ledger().total_gates(), 1u);
}

TEST(qft, basis_state_three_qubits) {
    ComplexVector basis(8, Complex{0.0, 0.0});
    basis[1] = 1.0;
    CircuitEmulator c{QubitState(basis)};
    c.qft();
    for (std::size_t k = 0; k < 8; ++k) {
        const Complex expected = std::polar(1.0 / std::sqrt(8.0), 2 * std::numbers::pi * static_cast<double>(k) / 8);
        EXPECT_LT(std::abs(c.state().amplitudes()[k] - expected), 1e-15) << k;
    }
}

TEST(qft, matches_dense_dft_in_both_directions) {
    for (int m = 1; m <= 8; ++m) {
        const QubitState s = random_qubits(m, static_cast<std::uint64_t>(m));
        CircuitEmulator fwd(s), inv(s);
        fwd.qft();
        inv.inverse_qft();
        EXPECT_LT(max_abs_diff(fwd.state().amplitudes(), oracle::dense_dft(s.amplitudes(), +1)), 1e-13) << m;
        EXPECT_LT(max_abs_diff(inv.state().amplitudes(), oracle::dense_dft(s.amplitudes(), -1)), 1e-13) << m;
        EXPECT_EQ(fwd.ledger().total_gates(), qft_gate_count(m));
        EXPECT_EQ(inv.ledger().total_gates(), qft_gate_count(m));
        EXPECT_EQ(fwd.ledger().qft_invocations, 1u);
    }
}

TEST(qft, round_trip) {
    const QubitState s = random_qubits(9, 5);
    CircuitEmulator c(s);
    c.qft();
    c.inverse_qft();
    EXPECT_LT(max_abs_diff(c.state().amplitudes(), s.amplitudes()), 1e-12);
    EXPECT_EQ(c.ledger().qft_invocations, 2u);
}

TEST(qft, gate_count_formula) {
    EXPECT_EQ(qft_gate_count(1), 1u);
    EXPECT_EQ(qft_gate_count(2), 4u);
    EXPECT_EQ(qft_gate_count(10), 60u);
}

TEST(diagonal, phases_and_charging) {
    const QubitState s = random_qubits(4, 2);
    CircuitEmulator c(s, CostModel{CostModelKind::full});
    c.diagonal_unitary(RealVector(16, 0.0));
    EXPECT_LT(max_abs_diff(c.state().amplitudes(), s.amplitudes()), 1e-16);
    EXPECT_EQ(c.ledger().diagonal_gates, 29u);
    EXPECT_EQ(c.ledger().diagonal_invocations, 1u);
    c.diagonal_unitary(RealVector(16, 0.7));
    for (std::size_t j = 0; j < 16; ++j) {
        EXPECT_NEAR(std::norm(c.state().amplitudes()[j]), std::norm(s.amplitudes()[j]), 1e-15);
    }
    EXPECT_THROW(c.diagonal_unitary(RealVector(15, 0.0)), std::invalid_argument);

    CircuitEmulator o(s, CostModel{CostModelKind::oracle});
    o.diagonal_unitary(RealVector(16, 0.1));
    o.diagonal_unitary(RealVector(16, 0.2));
    EXPECT_EQ(o.ledger().oracle_queries, 2u);
    EXPECT_EQ(o.ledger().diagonal_gates, 2u);
}

TEST(trotter, equals_propagator_for_every_scheme) {
    for (int m : {6, 10, 12}) {
        const Grid1D g(4.0, m, -2.0);
        const double hbar = 0.02;
        const QubitState q = random_qubits(m, 100 + static_cast<std::uint64_t>(m));
        const WaveFunction psi = q.to_wavefunction(g, hbar);
        for (const auto &id : builtin_scheme_ids()) {
            const SplittingScheme s = builtin_scheme(id);
            CircuitEmulator c(q);
            c.trotter_step(s, 0.05, harmonic_potential(), g, hbar);
            const WaveFunction ref = step(psi, EvolutionSpec{s, 0.05, 1, harmonic_potential()});
            EXPECT_LT(l2_distance(c.state().to_wavefunction(g, hbar).values(), ref.values(), g.dx()), 1e-12)
                << id << " m=" << m;
        }
    }
}

TEST(trotter, free_strang_step_ledger) {
    const Grid1D g(4.0, 5, -2.0);
    CircuitEmulator c(random_qubits(5, 1));
    c.trotter_run(builtin_scheme("strang_kvk"), 0.1, 1, zero_potential(), g, 0.1);
    EXPECT_EQ(c.ledger().qft_invocations, 2u);
    EXPECT_EQ(c.ledger().diagonal_invocations, 1u);
}

TEST(trotter, merged_and_unmerged_ledgers) {
    const Grid1D g(4.0, 6, -2.0);
    const std::uint64_t n = 9;
    CircuitEmulator merged(random_qubits(6, 1)), plain(random_qubits(6, 1));
    merged.trotter_run(builtin_scheme("strang_kvk"), 0.05, n, harmonic_potential(), g, 0.05, true);
    plain.trotter_run(builtin_scheme("strang_kvk"), 0.05, n, harmonic_potential(), g, 0.05, false);
    EXPECT_EQ(merged.ledger().diagonal_invocations, 2 * n + 1);
    EXPECT_EQ(merged.ledger().qft_invocations, 2 * (n + 1));
    EXPECT_EQ(plain.ledger().diagonal_invocations, 3 * n);
    EXPECT_EQ(plain.ledger().qft_invocations, 4 * n);
    EXPECT_EQ(merged.ledger().diagonal_gates, (2 * n + 1) * ((1u << 7) - 3));
    EXPECT_LT(max_abs_diff(merged.state().amplitudes(), plain.state().amplitudes()), 1e-12);
}

TEST(trotter, unitarity_over_many_steps) {
    const Grid1D g(4.0, 8, -2.0);
    CircuitEmulator c(QubitState::from_wavefunction(test_problem(0.05, g).state));
    for (int i = 0; i < 1000; ++i) {
        c.trotter_step(builtin_scheme("strang_kvk"), 0.01, harmonic_potential(), g, 0.05);
    }
    EXPECT_NEAR(c.state().norm(), 1.0, 1e-11);
}

TEST(qubit_state, guards) {
    EXPECT_THROW(QubitState(0), std::invalid_argument);
    EXPECT_THROW(QubitState(kMaxQubits + 1), std::invalid_argument);
    EXPECT_THROW(QubitState(ComplexVector(3, 0.5)), std::invalid_argument);
    EXPECT_THROW(QubitState(ComplexVector(4, 1.0)), std::invalid_argument);
}

TEST(shots, basis_state) {
    ComplexVector v(16, Complex{0.0, 0.0});
    v[5] = 1.0;
    const ShotHistogram h = measure_shots(QubitState(v), 1000, 3);
    EXPECT_EQ(h.counts[5], 1000u);
    EXPECT_THROW(measure_shots(QubitState(v), 0, 3), std::invalid_argument);
}

TEST(shots, uniform_within_five_sigma) {
    const ComplexVector v(16, Complex{0.25, 0.0});
    const ShotHistogram h = measure_shots(QubitState(v), 40000, 12345);
    const double sigma = std::sqrt(2500.0 * 15.0 / 16.0);
    std::uint64_t total = 0;
    for (auto c : h.counts) {
        EXPECT_LT(std::abs(static_cast<double>(c) - 2500.0), 5 * sigma);
        total += c;
    }
    EXPECT_EQ(total, 40000u);
}

TEST(shots, deterministic_for_seed) {
    const QubitState s = random_qubits(6, 8);
    EXPECT_EQ(measure_shots(s, 5000, 42).counts, measure_shots(s, 5000, 42).counts);
    EXPECT_NE(measure_shots(s, 5000, 42).counts, measure_shots(s, 5000, 43).counts);
}

TEST(shots, pinned_draws) {
    // Pins the generator and the inverse-CDF mapping so histograms stay
    // comparable across platforms and releases.
    const ComplexVector v(4, Complex{0.5, 0.0});
    const ShotHistogram h = measure_shots(QubitState(v), 8, 2024);
    std::vector<std::uint64_t> expected(4, 0);
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 8; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        ++expected[static_cast<std::size_t>(u * 4.0)];
    }
    EXPECT_EQ(h.counts, expected);
}
