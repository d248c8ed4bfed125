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

#include "semicl/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace semicl {

double PotentialSpec::derivative(int k, double x) const {
    switch (k) {
    case 0:
        return value(x);
    case 1:
        return d1(x);
    case 2:
        return d2(x);
    case 3:
        return d3(x);
    case 4:
        return d4(x);
    default:
        throw std::invalid_argument("potential derivative order must lie in [0, 4]");
    }
}

PotentialSpec harmonic_potential() {
    return PotentialSpec{
        "harmonic",
        [](double x) { return 0.5 * x * x; },
        [](double x) { return x; },
        [](double) { return 1.0; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        false,
    };
}

PotentialSpec zero_potential() {
    auto zero = [](double) { return 0.0; };
    return PotentialSpec{"zero", zero, zero, zero, zero, zero, true};
}

namespace {

// k-th derivative of sum_n a_n x^n by Horner on the differentiated coefficients.
RealFunction polynomial_derivative(std::vector<double> coefficients, int k) {
    std::vector<double> a;
    for (std::size_t n = static_cast<std::size_t>(k); n < coefficients.size(); ++n) {
        double falling = 1.0;
        for (int i = 0; i < k; ++i) {
            falling *= static_cast<double>(n - static_cast<std::size_t>(i));
        }
        a.push_back(coefficients[n] * falling);
    }
    return [a = std::move(a)](double x) {
        double acc = 0.0;
        for (std::size_t i = a.size(); i-- > 0;) {
            acc = acc * x + a[i];
        }
        return acc;
    };
}

} // namespace

PotentialSpec polynomial_potential(std::vector<double> coefficients) {
    for (double a : coefficients) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("polynomial potential coefficients must be finite");
        }
    }
    const bool all_zero = std::all_of(coefficients.begin(), coefficients.end(), [](double a) { return a == 0.0; });
    return PotentialSpec{
        "custom-polynomial",
        polynomial_derivative(coefficients, 0),
        polynomial_derivative(coefficients, 1),
        polynomial_derivative(coefficients, 2),
        polynomial_derivative(coefficients, 3),
        polynomial_derivative(coefficients, 4),
        all_zero,
    };
}

PotentialSpec potential_by_name(const std::string &name, const std::vector<double> &coefficients) {
    if (name == "harmonic") {
        return harmonic_potential();
    }
    if (name == "zero") {
        return zero_potential();
    }
    if (name == "custom-polynomial") {
        if (coefficients.empty()) {
            throw std::invalid_argument("custom-polynomial potential needs a coefficient list");
        }
        return polynomial_potential(coefficients);
    }
    throw std::invalid_argument("unknown potential '" + name + "'");
}

DerivativeProbe probe_potential_derivatives(const PotentialSpec &potential, double lo, double hi, int samples,
                                            std::uint64_t seed, double tolerance) {
    DerivativeProbe probe;
    std::mt19937_64 rng(seed);
    const double h = 1e-3 * std::max(1.0, hi - lo);
    for (int s = 0; s < samples; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double x = lo + (hi - lo) * u;
        for (int k = 1; k <= 4; ++k) {
            auto f = [&](double y) { return potential.derivative(k - 1, y); };
            const double fd = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
            const double exact = potential.derivative(k, x);
            const double rel = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
            if (rel > probe.worst_relative_error) {
                probe.worst_relative_error = rel;
                probe.worst_x = x;
                probe.worst_order = k;
            }
        }
    }
    probe.passed = probe.worst_relative_error <= tolerance;
    return probe;
}

WaveFunction wkb_state(const WKBData &data, const Grid1D &grid) {
    ComplexVector values(grid.points());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double x = grid.node(j);
        // The phase argument is reduced before the trigonometric evaluation.
        const double theta = data.phase(x) / data.hbar;
        values[j] = data.amplitude(x) * Complex(std::cos(theta), std::sin(theta));
    }
    return WaveFunction::normalized(grid, data.hbar, std::move(values));
}

double amplitude_edge_ratio(const WKBData &data, const Grid1D &grid, double fraction) {
    const double edge = fraction * grid.length();
    double sup_all = 0.0, sup_edge = 0.0;
    for (std::size_t j = 0; j < grid.points(); ++j) {
        const double x = grid.node(j);
        const double a = std::abs(data.amplitude(x));
        sup_all = std::max(sup_all, a);
        if (x - grid.x0() < edge || grid.x0() + grid.length() - x < edge) {
            sup_edge = std::max(sup_edge, a);
        }
    }
    return sup_all > 0.0 ? sup_edge / sup_all : 0.0;
}

WKBData test_wkb(double hbar) {
    return WKBData{
        [](double x) { return std::exp(-25.0 * (x - 0.5) * (x - 0.5)); },
        [](double x) {
            // ln(e^{y} + e^{-y}) = |y| + log1p(e^{-2|y|})
            const double y = std::abs(5.0 * (x - 0.5));
            return -0.2 * (y + std::log1p(std::exp(-2.0 * y)));
        },
        hbar,
    };
}

Grid1D test_problem_grid(int qubits) { return Grid1D(4.0, qubits, -2.0); }

TestProblem test_problem(double hbar, const Grid1D &grid) {
    if (std::abs(grid.x0() + 2.0) > 1e-12 || std::abs(grid.length() - 4.0) > 1e-12) {
        throw std::invalid_argument("the test problem lives on [-2, 2); got a grid starting at " +
                                    std::to_string(grid.x0()) + " of length " + std::to_string(grid.length()));
    }
    const WKBData data = test_wkb(hbar);
    if (amplitude_edge_ratio(data, grid) >= 1e-8) {
        throw std::logic_error("test problem amplitude does not decay toward the boundary");
    }
    return TestProblem{wkb_state(data, grid), harmonic_potential()};
}

WaveFunction gaussian_packet(double center, double gamma, double k0, double hbar, const Grid1D &grid) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("Gaussian packet width gamma must be positive");
    }
    if (!(hbar > 0.0)) {
        throw std::invalid_argument("hbar must be positive");
    }
    ComplexVector values(grid.points());
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double x = grid.node(j);
        values[j] = std::polar(std::exp(-(x - center) * (x - center) / gamma), -k0 * x / hbar);
    }
    return WaveFunction::normalized(grid, hbar, std::move(values));
}

double boundary_mass(const WaveFunction &psi, double fraction) {
    const Grid1D &grid = psi.grid();
    const double edge = fraction * grid.length();
    double mass = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double x = grid.node(j);
        if (x - grid.x0() < edge || grid.x0() + grid.length() - x < edge) {
            mass += std::norm(psi.values()[j]);
        }
    }
    return mass * grid.dx();
}

} // namespace semicl
