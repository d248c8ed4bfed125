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

#include "semicl/observables.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "semicl/states.hpp"

using namespace semicl;

namespace {

WaveFunction random_state(const Grid1D &g, double hbar, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    ComplexVector v(g.points());
    for (auto &z : v) {
        z = {n(rng), n(rng)};
    }
    return WaveFunction::normalized(g, hbar, v);
}

} // namespace

TEST(observables, density_integrates_to_one) {
    const TestProblem p = test_problem(0.01, test_problem_grid(11));
    EXPECT_NEAR(density(p.state).integral(), 1.0, 1e-12);
}

TEST(observables, plane_wave_current) {
    const Grid1D g(4.0, 8, -2.0);
    const double hbar = 0.1;
    const double mu = 2 * std::numbers::pi * 3 / g.length();
    ComplexVector v(g.points());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = std::polar(1.0, mu * g.node(j));
    }
    const WaveFunction psi = WaveFunction::normalized(g, hbar, v);
    const ObservableField J = current(psi);
    const double n0 = 1.0 / g.length();
    for (double value : J.values) {
        EXPECT_NEAR(value, hbar * mu * n0, 1e-12);
    }
}

TEST(observables, fourier_operators_reproduce_fields) {
    const Grid1D g(4.0, 4, -2.0);
    const WaveFunction psi = random_state(g, 0.2, 9);
    const ComplexVector hat = forward_dft(psi.values());
    const ObservableField n = density(psi), J = current(psi);
    for (std::size_t site : {0u, 7u, 15u}) {
        const ComplexVector Nm = dense_fourier_operator(ObservableKind::density, site, g, psi.hbar());
        const ComplexVector Jm = dense_fourier_operator(ObservableKind::current, site, g, psi.hbar());
        const Complex qn = quadratic_form(Nm, hat);
        const Complex qj = quadratic_form(Jm, hat);
        EXPECT_NEAR(qn.real(), n.values[site], 1e-11);
        EXPECT_NEAR(qn.imag(), 0.0, 1e-11);
        EXPECT_NEAR(qj.real(), J.values[site], 1e-10);
        EXPECT_NEAR(qj.imag(), 0.0, 1e-10);
    }
}

TEST(observables, fourier_operators_are_hermitian) {
    const Grid1D g(3.0, 4);
    for (auto kind : {ObservableKind::density, ObservableKind::current}) {
        const ComplexVector A = dense_fourier_operator(kind, 5, g, 0.3);
        const std::size_t M = g.points();
        for (std::size_t r = 0; r < M; ++r) {
            for (std::size_t c = 0; c < M; ++c) {
                EXPECT_LT(std::abs(A[r * M + c] - std::conj(A[c * M + r])), 1e-15);
            }
        }
    }
    EXPECT_THROW(fourier_operator_element(ObservableKind::density, 16, 0, 0, g, 0.3), std::out_of_range);
    EXPECT_THROW(dense_fourier_operator(ObservableKind::density, 0, Grid1D(1.0, 7), 0.3), std::invalid_argument);
}

TEST(observables, sobolev_norm) {
    const Grid1D g(2 * std::numbers::pi, 6);
    const double hbar = 0.5;
    ComplexVector v(g.points());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = std::polar(1.0, 2.0 * g.node(j));
    }
    const WaveFunction psi = WaveFunction::normalized(g, hbar, v);
    // ||d^a psi||^2 = 4^a for a unit-norm plane wave with mu = 2.
    double expected = 0.0;
    for (int a = 0; a <= 3; ++a) {
        expected += std::pow(hbar, a) * std::pow(4.0, a);
    }
    EXPECT_NEAR(hbar_sobolev_norm(psi, 3).value, std::sqrt(expected), 1e-12);
    EXPECT_NEAR(hbar_sobolev_norm(psi, 0).value, 1.0, 1e-13);
    EXPECT_THROW(hbar_sobolev_norm(psi, 5), std::invalid_argument);
}

TEST(observables, sobolev_norm_dominates_l2_and_grows_with_q) {
    const WaveFunction psi = test_problem(0.01, test_problem_grid(12)).state;
    double previous = 0.0;
    for (int q = 0; q <= 4; ++q) {
        const double v = hbar_sobolev_norm(psi, q).value;
        EXPECT_GE(v, psi.norm() - 1e-14);
        EXPECT_GE(v, previous);
        previous = v;
    }
}

TEST(observables, real_state_has_no_current) {
    const Grid1D g(4.0, 9, -2.0);
    const WaveFunction psi = gaussian_packet(0.1, 0.1, 0.0, 0.01, g);
    for (double v : current(psi).values) {
        EXPECT_NEAR(v, 0.0, 1e-13);
    }
}

TEST(observables, wkb_current_is_semiclassical) {
    // J -> A0^2 S0' / ||A0||^2 + O(hbar) for psi = A0 exp(i S0 / hbar).
    const double hbar = 1e-3;
    const Grid1D g = test_problem_grid(14);
    const WKBData data = test_wkb(hbar);
    const WaveFunction psi = wkb_state(data, g);
    double mass = 0.0;
    for (std::size_t j = 0; j < g.points(); ++j) {
        mass += std::pow(data.amplitude(g.node(j)), 2) * g.dx();
    }
    const ObservableField J = current(psi);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.points(); ++j) {
        const double x = g.node(j);
        const double ds = -std::tanh(5.0 * (x - 0.5));
        worst = std::max(worst, std::abs(J.values[j] - std::pow(data.amplitude(x), 2) * ds / mass));
    }
    EXPECT_LT(worst, 1e-4);
}

TEST(observables, density_of_constant_state) {
    const Grid1D g(4.0, 5, -2.0);
    const WaveFunction psi = WaveFunction::normalized(g, 0.1, ComplexVector(g.points(), Complex(1.0, 0.0)));
    for (double v : density(psi).values) {
        EXPECT_NEAR(v, 0.25, 1e-15);
    }
}

TEST(observables, expectation) {
    const Grid1D g(4.0, 8, -2.0);
    const WaveFunction psi = gaussian_packet(0.3, 0.1, 0.0, 0.05, g);
    const double x_mean = expectation(psi, MultiplicationOperator{[](double x) { return Complex(x, 0.0); }});
    EXPECT_NEAR(x_mean, 0.3, 1e-10);
    const double kinetic = expectation(psi, FourierSymbolOperator{[](double mu) { return Complex(mu * mu, 0.0); }});
    EXPECT_GT(kinetic, 0.0);
    EXPECT_NEAR(expectation(psi, MultiplicationOperator{[](double) { return Complex(1.0, 0.0); }}), 1.0, 1e-13);
    EXPECT_THROW(expectation(psi, MultiplicationOperator{[](double) { return Complex(0.0, 1.0); }}),
                 std::domain_error);
}

TEST(observables, plane_wave_kinetic_expectation) {
    const Grid1D g(4.0, 7, -2.0);
    const double hbar = 0.02;
    const double mu = 2 * std::numbers::pi * 6 / g.length();
    ComplexVector v(g.points());
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = std::polar(1.0, mu * g.node(j));
    }
    const WaveFunction psi = WaveFunction::normalized(g, hbar, v);
    const double e = expectation(psi, FourierSymbolOperator{[hbar](double k) { return Complex(0.5 * hbar * k * k, 0.0); }});
    EXPECT_NEAR(e, 0.5 * hbar * mu * mu, 1e-10);
}

TEST(observables, sup_distance) {
    const Grid1D g(4.0, 3);
    ObservableField a{g, RealVector(8, 0.0), ObservableKind::density};
    ObservableField b{g, RealVector(8, 0.0), ObservableKind::density};
    b.values[3] = -0.25;
    EXPECT_DOUBLE_EQ(sup_distance(a, b), 0.25);
}
