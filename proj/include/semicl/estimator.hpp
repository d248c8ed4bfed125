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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semicl/circuit.hpp"

namespace semicl {

enum class Target { wavefunction, observable };

/// All big-O constants are taken as 1; results are order-of-magnitude figures.
struct EstimateRequest {
    double eps = 1e-2;
    double hbar = 1e-2;
    double L = 1.0;
    double t = 1.0;
    int d = 1;
    int p = 2;
    double ell = 1.0;
    Target target = Target::wavefunction;
    CostModel cost_model{CostModelKind::linear, 1.0};
    std::optional<double> m_obs;
    std::optional<double> delta;
    /// Optional smoothness prefactor: eps is replaced by eps / v_max.
    std::optional<double> v_max;
};

/// Throws std::invalid_argument for nonpositive parameters, eps >= 1, d < 1, p < 1 or ell < 1.
void validate(const EstimateRequest &req);

struct Meshing {
    double dt = 0.0;
    double dx = 0.0;
    std::uint64_t n_steps = 0;
    bool single_step = false; ///< dt >= t
};

/// wavefunction: dt = (hbar eps / (L^{d/2} t))^{1/p}
/// observable:   dt = (eps / (L^{d/2} t))^{1/2}
/// both:         dx = hbar L (eps dt / (L^{d/2} t))^{1/ell},  n = ceil(t / dt)
Meshing meshing(const EstimateRequest &req);

struct QubitCount {
    int m = 1;
    double log2_argument = 0.0; ///< log2(L / dx)
    bool clamped = false;       ///< argument <= 1, m forced to 1
};

/// m = d ceil(log2(L / dx)) with dx from `meshing`.
QubitCount qubit_count(const EstimateRequest &req);

struct EstimateReport {
    double dt = 0.0;
    double dx = 0.0;
    std::uint64_t n_steps = 0;
    int m_qubits = 0;
    double J_of_m = 0.0;
    double n_gates = 0.0;
    double n_queries = 0.0;
    std::vector<std::string> notes;
};

/// N = 2 kappa J(m) t / dt with kappa = 1 (p <= 2 or observable) and p otherwise;
/// queries = N / (2 J(m)).
EstimateReport estimate(const EstimateRequest &req);

/// N = 2 J(m) sqrt(M_obs) L^{d/4} t^{3/2} eps^{-3/2} ln(1/delta), observable meshing.
/// Throws std::invalid_argument if m_obs or delta is missing or out of range.
double measurement_overhead(const EstimateRequest &req);

struct ErrorBudget {
    double time_term = 0.0;   ///< splitting contribution
    double space_term = 0.0;  ///< interpolation contribution
    double hbar_term = 0.0;   ///< L^{d/2} t hbar^2 (observable target only)
    double total() const { return time_term + space_term + hbar_term; }
};

/// Evaluates the a-priori bound with constant 1 at the given mesh, using the
/// continuous step count n = t / dt.
ErrorBudget error_budget(const EstimateRequest &req, double dt, double dx);

enum class SweepAxis { eps, hbar, t, d, p, ell };
SweepAxis parse_sweep_axis(std::string_view name);
std::string to_string(SweepAxis axis);

struct SweepRow {
    double value = 0.0;
    EstimateReport report;
};

/// Throws std::invalid_argument for an empty value list.
std::vector<SweepRow> sweep(const EstimateRequest &base, SweepAxis axis, const std::vector<double> &values);

/// L = 10, d = 3, t = 1000, p = ell = 2.
EstimateRequest scattering_preset();

} // namespace semicl
