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

#include <cstddef>
#include <functional>
#include <variant>

#include "semicl/spectral.hpp"

namespace semicl {

enum class ObservableKind { density, current };

struct ObservableField {
    Grid1D grid;
    RealVector values;
    ObservableKind kind;

    /// sum values_j dx
    double integral() const;
};

/// n(x_j) = |psi_j|^2
ObservableField density(const WaveFunction &psi);

/// J(x_j) = hbar Im(conj(psi_j) (d/dx psi)_j) with the spectral derivative.
ObservableField current(const WaveFunction &psi);

/// max_j |a_j - b_j|
double sup_distance(const ObservableField &a, const ObservableField &b);

struct HbarSobolevNorm {
    int q = 0;
    double value = 0.0;
};

/// value^2 = sum_{alpha=0}^{q} hbar^alpha ||d^alpha psi / dx^alpha||^2, q in [0, 4].
HbarSobolevNorm hbar_sobolev_norm(const WaveFunction &psi, int q);

/// Matrix element <row|O_j|col> of the site-j density or current operator in the
/// Fourier basis (|k> = DFT index k, psi_hat = forward_dft(psi)), so that
/// <psi_hat|O_j|psi_hat> reproduces density(psi) or current(psi) at x_j.
///
///   density: (1/M) e^{i 2 pi j (col - row) / M}
///   current: (hbar / 2M) (mu_col + mu_row) e^{i 2 pi j (col - row) / M}
///
/// Throws std::out_of_range for indices outside [0, M).
Complex fourier_operator_element(ObservableKind kind, std::size_t site, std::size_t row, std::size_t col,
                                 const Grid1D &grid, double hbar);

/// Dense row-major M x M matrix of `fourier_operator_element`. Test-scale only:
/// throws std::invalid_argument for M > 64.
ComplexVector dense_fourier_operator(ObservableKind kind, std::size_t site, const Grid1D &grid, double hbar);

/// <v|A|v> for a dense row-major matrix.
Complex quadratic_form(std::span<const Complex> matrix, std::span<const Complex> v);

/// Hermitian operators accepted by `expectation`.
struct MultiplicationOperator {
    std::function<Complex(double)> f; ///< acts as psi(x) -> f(x) psi(x)
};
struct FourierSymbolOperator {
    std::function<Complex(double)> symbol; ///< acts as psi_hat(mu) -> symbol(mu) psi_hat(mu)
};
using Operator = std::variant<MultiplicationOperator, FourierSymbolOperator>;

/// <psi|A|psi> = sum_j conj(psi_j) (A psi)_j dx. Throws std::domain_error when the
/// imaginary residue exceeds `hermitian_tolerance` (operator not Hermitian).
double expectation(const WaveFunction &psi, const Operator &op, double hermitian_tolerance = 1e-11);

} // namespace semicl
