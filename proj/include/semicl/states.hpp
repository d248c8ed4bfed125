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
#include <functional>
#include <string>
#include <vector>

#include "semicl/spectral.hpp"

namespace semicl {

using RealFunction = std::function<double(double)>;

/// External potential V with analytic derivatives up to fourth order.
struct PotentialSpec {
    std::string name;
    RealFunction value;
    RealFunction d1, d2, d3, d4;
    /// Set for V == 0; propagators skip the potential stages entirely.
    bool identically_zero = false;

    double operator()(double x) const { return value(x); }
    /// k-th derivative, k in [0, 4].
    double derivative(int k, double x) const;
};

/// V(x) = x^2 / 2
PotentialSpec harmonic_potential();
/// V(x) = 0
PotentialSpec zero_potential();
/// V(x) = sum_k coefficients[k] x^k
PotentialSpec polynomial_potential(std::vector<double> coefficients);
/// "harmonic", "zero" or "custom-polynomial" (which uses `coefficients`).
PotentialSpec potential_by_name(const std::string &name, const std::vector<double> &coefficients = {});

struct DerivativeProbe {
    bool passed = true;
    double worst_relative_error = 0.0;
    double worst_x = 0.0;
    int worst_order = 0;
};

/// Compares each analytic derivative with a 5-point central difference of the
/// next lower one at `samples` random points of [lo, hi].
DerivativeProbe probe_potential_derivatives(const PotentialSpec &potential, double lo, double hi, int samples = 32,
                                            std::uint64_t seed = 12345, double tolerance = 1e-6);

/// WKB data A0(x) exp(i S0(x) / hbar).
struct WKBData {
    RealFunction amplitude;
    RealFunction phase;
    double hbar = 1.0;
};

/// psi_j = A0(x_j) exp(i S0(x_j) / hbar), normalized. Throws if A0 vanishes on the grid.
WaveFunction wkb_state(const WKBData &data, const Grid1D &grid);

/// sup of |A0| on the outer `fraction` of the domain divided by its overall sup.
double amplitude_edge_ratio(const WKBData &data, const Grid1D &grid, double fraction = 0.05);

/// A0(x) = exp(-25 (x - 1/2)^2), S0(x) = -ln(e^{5(x-1/2)} + e^{-5(x-1/2)}) / 5.
WKBData test_wkb(double hbar);

struct TestProblem {
    WaveFunction state;
    PotentialSpec potential;
};

/// WKB test state with the harmonic potential on [-2, 2). Throws std::invalid_argument
/// for any other domain.
TestProblem test_problem(double hbar, const Grid1D &grid);

/// Grid on [-2, 2) with 2^m points, the domain of the test problem.
Grid1D test_problem_grid(int qubits);

/// psi ~ exp(-(x - center)^2 / gamma - i k0 x / hbar), normalized. Throws for gamma <= 0.
WaveFunction gaussian_packet(double center, double gamma, double k0, double hbar, const Grid1D &grid);

/// Probability mass sum |psi_j|^2 dx on the outer `fraction` of the domain (both ends).
double boundary_mass(const WaveFunction &psi, double fraction = 0.05);

} // namespace semicl
