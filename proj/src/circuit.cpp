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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace semicl {

std::uint64_t CostModel::gates(int m) const {
    switch (kind) {
    case CostModelKind::full:
        return (std::uint64_t{1} << (m + 1)) - 3;
    case CostModelKind::linear:
        return static_cast<std::uint64_t>(m);
    case CostModelKind::poly:
        return static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(m), exponent)));
    case CostModelKind::oracle:
        return 1;
    }
    return 0;
}

double CostModel::cost(int m) const {
    switch (kind) {
    case CostModelKind::full:
        return std::ldexp(1.0, m + 1) - 3.0;
    case CostModelKind::linear:
        return static_cast<double>(m);
    case CostModelKind::poly:
        return std::pow(static_cast<double>(m), exponent);
    case CostModelKind::oracle:
        return 1.0;
    }
    return 0.0;
}

std::string CostModel::name() const {
    switch (kind) {
    case CostModelKind::full:
        return "full";
    case CostModelKind::linear:
        return "linear";
    case CostModelKind::poly: {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, exponent);
        return "poly:" + std::string(buf, end);
    }
    case CostModelKind::oracle:
        return "oracle";
    }
    return "?";
}

CostModel CostModel::parse(std::string_view text) {
    if (text == "full") {
        return {CostModelKind::full, 1.0};
    }
    if (text == "linear") {
        return {CostModelKind::linear, 1.0};
    }
    if (text == "oracle") {
        return {CostModelKind::oracle, 1.0};
    }
    std::string_view arg;
    if (text.starts_with("poly:")) {
        arg = text.substr(5);
    } else if (text.starts_with("poly(") && text.ends_with(")")) {
        arg = text.substr(5, text.size() - 6);
    } else {
        throw std::invalid_argument("unknown cost model '" + std::string(text) +
                                    "' (expected full, linear, oracle or poly:a)");
    }
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), a);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || !(a > 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("poly cost model needs a positive exponent, got '" + std::string(arg) + "'");
    }
    return {CostModelKind::poly, a};
}

std::uint64_t qft_gate_count(int m) {
    const auto mm = static_cast<std::uint64_t>(m);
    return mm * (mm + 1) / 2 + mm / 2;
}

QubitState::QubitState(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

QubitState::QubitState(ComplexVector amplitudes) : qubits_(0), amplitudes_(std::move(amplitudes)) {
    if (!is_power_of_two(amplitudes_.size()) || amplitudes_.size() < 2) {
        throw std::invalid_argument("statevector length must be 2^m with m >= 1");
    }
    while ((std::size_t{1} << qubits_) < amplitudes_.size()) {
        ++qubits_;
    }
    if (qubits_ > kMaxQubits) {
        throw std::invalid_argument("statevector exceeds the " + std::to_string(kMaxQubits) + "-qubit memory guard");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("statevector is not normalized");
    }
}

QubitState QubitState::from_wavefunction(const WaveFunction &psi) {
    const double s = std::sqrt(psi.grid().dx());
    ComplexVector a(psi.values().begin(), psi.values().end());
    for (Complex &v : a) {
        v *= s;
    }
    return QubitState(std::move(a));
}

WaveFunction QubitState::to_wavefunction(const Grid1D &grid, double hbar) const {
    if (grid.points() != amplitudes_.size()) {
        throw std::invalid_argument("grid does not match the statevector dimension");
    }
    const double s = 1.0 / std::sqrt(grid.dx());
    ComplexVector v = amplitudes_;
    for (Complex &z : v) {
        z *= s;
    }
    return WaveFunction(grid, hbar, std::move(v));
}

double QubitState::norm() const {
    double s = 0.0;
    for (const Complex &a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

CircuitEmulator::CircuitEmulator(QubitState state, CostModel cost_model)
    : state_(std::move(state)), cost_(cost_model) {}

void CircuitEmulator::hadamard(int q) {
    ComplexVector &a = state_.amplitudes();
    const std::size_t bit = std::size_t{1} << q;
    const double r = std::numbers::sqrt2 / 2.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if ((j & bit) == 0) {
            const Complex u = a[j], v = a[j | bit];
            a[j] = r * (u + v);
            a[j | bit] = r * (u - v);
        }
    }
    ++ledger_.single_qubit;
}

void CircuitEmulator::controlled_phase(int control, int target, double theta) {
    ComplexVector &a = state_.amplitudes();
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Complex phase{std::cos(theta), std::sin(theta)};
    for (std::size_t j = 0; j < a.size(); ++j) {
        if ((j & mask) == mask) {
            a[j] *= phase;
        }
    }
    ++ledger_.two_qubit;
}

void CircuitEmulator::swap(int p, int q) {
    ComplexVector &a = state_.amplitudes();
    const std::size_t bp = std::size_t{1} << p, bq = std::size_t{1} << q;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if ((j & bp) != 0 && (j & bq) == 0) {
            std::swap(a[j], a[(j & ~bp) | bq]);
        }
    }
    ++ledger_.two_qubit;
}

void CircuitEmulator::qft() {
    const int m = state_.qubits();
    for (int target = m - 1; target >= 0; --target) {
        hadamard(target);
        for (int control = target - 1; control >= 0; --control) {
            controlled_phase(control, target, std::numbers::pi / std::ldexp(1.0, target - control));
        }
    }
    for (int q = 0; q < m / 2; ++q) {
        swap(q, m - 1 - q);
    }
    ++ledger_.qft_invocations;
}

void CircuitEmulator::inverse_qft() {
    const int m = state_.qubits();
    for (int q = m / 2 - 1; q >= 0; --q) {
        swap(q, m - 1 - q);
    }
    for (int target = 0; target < m; ++target) {
        for (int control = 0; control < target; ++control) {
            controlled_phase(control, target, -std::numbers::pi / std::ldexp(1.0, target - control));
        }
        hadamard(target);
    }
    ++ledger_.qft_invocations;
}

void CircuitEmulator::diagonal_unitary(const RealVector &phases) {
    ComplexVector &a = state_.amplitudes();
    if (phases.size() != a.size()) {
        throw std::invalid_argument("diagonal unitary needs " + std::to_string(a.size()) + " phases, got " +
                                    std::to_string(phases.size()));
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        a[j] *= Complex(std::cos(phases[j]), std::sin(phases[j]));
    }
    ledger_.diagonal_gates += cost_.gates(state_.qubits());
    ++ledger_.diagonal_invocations;
    if (cost_.kind == CostModelKind::oracle) {
        ++ledger_.oracle_queries;
    }
}

std::vector<Stage> circuit_stages(const std::vector<Stage> &stages, const PotentialSpec &potential) {
    if (!potential.identically_zero) {
        return stages;
    }
    std::vector<Stage> out;
    for (const Stage &s : stages) {
        if (s.kind == StageKind::potential) {
            continue;
        }
        if (!out.empty()) {
            out.back().fraction += s.fraction;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

void CircuitEmulator::apply_stage(const Stage &stage, double dt, const PotentialSpec &potential, const Grid1D &grid,
                                  double hbar) {
    if (grid.points() != state_.dimension()) {
        throw std::invalid_argument("grid does not match the statevector dimension");
    }
    const double tau = stage.fraction * dt;
    RealVector theta(grid.points());
    if (stage.kind == StageKind::potential) {
        if (potential.identically_zero) {
            return;
        }
        for (std::size_t j = 0; j < theta.size(); ++j) {
            theta[j] = -(tau * potential(grid.node(j))) / hbar;
        }
        diagonal_unitary(theta);
        return;
    }
    const FrequencyTable table = frequency_table(grid);
    for (std::size_t k = 0; k < theta.size(); ++k) {
        theta[k] = -0.5 * tau * hbar * table[k] * table[k];
    }
    inverse_qft();
    diagonal_unitary(theta);
    qft();
}

void CircuitEmulator::trotter_step(const SplittingScheme &scheme, double dt, const PotentialSpec &potential,
                                   const Grid1D &grid, double hbar) {
    for (const Stage &stage : circuit_stages(stage_sequence(scheme), potential)) {
        apply_stage(stage, dt, potential, grid, hbar);
    }
}

void CircuitEmulator::trotter_run(const SplittingScheme &scheme, double dt, std::size_t steps,
                                  const PotentialSpec &potential, const Grid1D &grid, double hbar,
                                  bool merge_boundaries) {
    if (merge_boundaries) {
        for (const Stage &stage : circuit_stages(flatten_steps(scheme, steps, true), potential)) {
            apply_stage(stage, dt, potential, grid, hbar);
        }
        return;
    }
    for (std::size_t n = 0; n < steps; ++n) {
        trotter_step(scheme, dt, potential, grid, hbar);
    }
}

ShotHistogram measure_shots(const QubitState &state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("at least one shot is required");
    }
    const ComplexVector &a = state.amplitudes();
    std::vector<double> cdf(a.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        acc += std::norm(a[j]);
        cdf[j] = acc;
    }
    ShotHistogram h{shots, seed, std::vector<std::uint64_t>(a.size(), 0)};
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // Zero-probability entries share a CDF value with their predecessor and are never chosen.
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), a.size() - 1);
        ++h.counts[idx];
    }
    return h;
}

double histogram_sup_error(const ShotHistogram &histogram, const QubitState &state) {
    const ComplexVector &a = state.amplitudes();
    if (histogram.counts.size() != a.size()) {
        throw std::invalid_argument("histogram does not match the statevector dimension");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double f = static_cast<double>(histogram.counts[j]) / static_cast<double>(histogram.shots);
        worst = std::max(worst, std::abs(f - std::norm(a[j])));
    }
    return worst;
}

} // namespace semicl
