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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "semicl/spectral.hpp"
#include "semicl/splitting.hpp"
#include "semicl/states.hpp"

namespace semicl {

enum class CostModelKind { full, linear, poly, oracle };

/// Gate cost J(m) of one diagonal unitary on m qubits.
struct CostModel {
    CostModelKind kind = CostModelKind::full;
    double exponent = 1.0; ///< a in m^a for the poly model

    /// full: 2^{m+1} - 3, linear: m, poly: ceil(m^a), oracle: 1 (plus one query).
    std::uint64_t gates(int m) const;
    /// Real-valued J(m) used by the estimator (poly is not rounded).
    double cost(int m) const;
    std::string name() const;

    /// Accepts "full", "linear", "oracle", "poly:a" and "poly(a)".
    static CostModel parse(std::string_view text);
};

struct GateLedger {
    std::uint64_t single_qubit = 0;
    std::uint64_t two_qubit = 0;
    std::uint64_t diagonal_gates = 0; ///< gates charged through the cost model
    std::uint64_t diagonal_invocations = 0;
    std::uint64_t oracle_queries = 0;
    std::uint64_t qft_invocations = 0; ///< qft and inverse_qft each count once

    std::uint64_t total_gates() const { return single_qubit + two_qubit + diagonal_gates; }
    bool operator==(const GateLedger &) const = default;
};

/// Stages as the emulator executes them: with an identically zero potential the
/// potential stages are dropped and the kinetic stages they separated are fused.
std::vector<Stage> circuit_stages(const std::vector<Stage> &stages, const PotentialSpec &potential);

/// Number of gates in one QFT on m qubits: m(m+1)/2 + floor(m/2).
std::uint64_t qft_gate_count(int m);

/// 2^m amplitudes; basis index j is grid node x_j, qubit q holds bit q of j.
class QubitState {
  public:
    /// |0...0>
    explicit QubitState(int qubits);
    /// Throws unless the amplitudes have length 2^m and unit norm within 1e-10.
    explicit QubitState(ComplexVector amplitudes);

    /// a_j = psi_j sqrt(dx)
    static QubitState from_wavefunction(const WaveFunction &psi);
    WaveFunction to_wavefunction(const Grid1D &grid, double hbar) const;

    int qubits() const { return qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    ComplexVector &amplitudes() { return amplitudes_; }
    double norm() const;

  private:
    int qubits_;
    ComplexVector amplitudes_;
};

struct ShotHistogram {
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> counts;
};

class CircuitEmulator {
  public:
    CircuitEmulator(QubitState state, CostModel cost_model = {});

    const QubitState &state() const { return state_; }
    const GateLedger &ledger() const { return ledger_; }
    const CostModel &cost_model() const { return cost_; }

    void hadamard(int q);
    void controlled_phase(int control, int target, double theta);
    void swap(int a, int b);

    /// Realizes inverse_dft (positive exponent) with Hadamards, controlled phases
    /// and explicit bit-reversal swaps.
    void qft();
    /// Realizes forward_dft; the gate sequence of `qft` reversed and conjugated.
    void inverse_qft();

    /// amplitude_j *= exp(i phases_j), charged per the cost model.
    void diagonal_unitary(const RealVector &phases);

    /// One step of `scheme` built only from qft / inverse_qft / diagonal_unitary.
    void trotter_step(const SplittingScheme &scheme, double dt, const PotentialSpec &potential, const Grid1D &grid,
                      double hbar);
    /// `steps` steps with optional boundary merging (2n+1 blocks for symmetric schemes).
    void trotter_run(const SplittingScheme &scheme, double dt, std::size_t steps, const PotentialSpec &potential,
                     const Grid1D &grid, double hbar, bool merge_boundaries = true);

  private:
    void apply_stage(const Stage &stage, double dt, const PotentialSpec &potential, const Grid1D &grid, double hbar);

    QubitState state_;
    CostModel cost_;
    GateLedger ledger_;
};

/// Multinomial sampling from |a_j|^2: mt19937_64 draws mapped to 53-bit uniforms
/// and inverted through the cumulative distribution. Throws for shots == 0.
ShotHistogram measure_shots(const QubitState &state, std::uint64_t shots, std::uint64_t seed);

/// max_j |counts_j / shots - |a_j|^2| (probabilities, not densities)
double histogram_sup_error(const ShotHistogram &histogram, const QubitState &state);

} // namespace semicl
