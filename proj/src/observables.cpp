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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace semicl {

double ObservableField::integral() const {
    double s = 0.0;
    for (double v : values) {
        s += v;
    }
    return s * grid.dx();
}

ObservableField density(const WaveFunction &psi) {
    RealVector n(psi.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        n[j] = std::norm(psi.values()[j]);
    }
    return {psi.grid(), std::move(n), ObservableKind::density};
}

ObservableField current(const WaveFunction &psi) {
    const ComplexVector dpsi = spatial_derivative(psi, 1);
    RealVector J(psi.size());
    for (std::size_t j = 0; j < J.size(); ++j) {
        J[j] = psi.hbar() * std::imag(std::conj(psi.values()[j]) * dpsi[j]);
    }
    return {psi.grid(), std::move(J), ObservableKind::current};
}

double sup_distance(const ObservableField &a, const ObservableField &b) {
    if (a.values.size() != b.values.size()) {
        throw std::invalid_argument("sup_distance: fields live on different grids");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
    }
    return worst;
}

HbarSobolevNorm hbar_sobolev_norm(const WaveFunction &psi, int q) {
    if (q < 0 || q > 4) {
        throw std::invalid_argument("hbar-Sobolev order must lie in [0, 4], got " + std::to_string(q));
    }
    const double dx = psi.grid().dx();
    double sum = std::pow(l2_norm(psi.values(), dx), 2);
    // ||d^a psi||^2 = sum_k mu_k^{2a} |psi_hat_k|^2 dx by Parseval.
    const FrequencyTable table = frequency_table(psi.grid());
    const ComplexVector hat = forward_dft(psi.values());
    for (int alpha = 1; alpha <= q; ++alpha) {
        double s = 0.0;
        for (std::size_t k = 0; k < hat.size(); ++k) {
            s += std::pow(table[k], 2 * alpha) * std::norm(hat[k]);
        }
        sum += std::pow(psi.hbar(), alpha) * s * dx;
    }
    return {q, std::sqrt(sum)};
}

Complex fourier_operator_element(ObservableKind kind, std::size_t site, std::size_t row, std::size_t col,
                                 const Grid1D &grid, double hbar) {
    const std::size_t M = grid.points();
    if (site >= M || row >= M || col >= M) {
        throw std::out_of_range("Fourier operator index out of range");
    }
    // Reduce j (col - row) mod M before forming the angle.
    const std::size_t diff = (col + M - row) % M;
    const std::size_t turns = (site * diff) % M;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(turns) / static_cast<double>(M);
    const Complex phase{std::cos(angle), std::sin(angle)};
    const double inv_m = 1.0 / static_cast<double>(M);
    if (kind == ObservableKind::density) {
        return inv_m * phase;
    }
    const FrequencyTable table = frequency_table(grid);
    return 0.5 * hbar * inv_m * (table[col] + table[row]) * phase;
}

ComplexVector dense_fourier_operator(ObservableKind kind, std::size_t site, const Grid1D &grid, double hbar) {
    const std::size_t M = grid.points();
    if (M > 64) {
        throw std::invalid_argument("dense Fourier operators are limited to M <= 64");
    }
    ComplexVector matrix(M * M);
    for (std::size_t r = 0; r < M; ++r) {
        for (std::size_t c = 0; c < M; ++c) {
            matrix[r * M + c] = fourier_operator_element(kind, site, r, c, grid, hbar);
        }
    }
    return matrix;
}

Complex quadratic_form(std::span<const Complex> matrix, std::span<const Complex> v) {
    const std::size_t M = v.size();
    if (matrix.size() != M * M) {
        throw std::invalid_argument("quadratic_form: matrix shape does not match vector");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < M; ++r) {
        Complex row{0.0, 0.0};
        for (std::size_t c = 0; c < M; ++c) {
            row += matrix[r * M + c] * v[c];
        }
        acc += std::conj(v[r]) * row;
    }
    return acc;
}

double expectation(const WaveFunction &psi, const Operator &op, double hermitian_tolerance) {
    const ComplexVector applied = std::visit(
        [&psi](const auto &o) -> ComplexVector {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, MultiplicationOperator>) {
                ComplexVector out(psi.size());
                for (std::size_t j = 0; j < out.size(); ++j) {
                    out[j] = o.f(psi.grid().node(j)) * psi.values()[j];
                }
                return out;
            } else {
                return apply_multiplier(psi.values(), frequency_table(psi.grid()), o.symbol);
            }
        },
        op);
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < applied.size(); ++j) {
        acc += std::conj(psi.values()[j]) * applied[j];
    }
    acc *= psi.grid().dx();
    if (std::abs(acc.imag()) > hermitian_tolerance * std::max(1.0, std::abs(acc.real()))) {
        throw std::domain_error("operator is not Hermitian on this state: imaginary residue " +
                                std::to_string(acc.imag()));
    }
    return acc.real();
}

} // namespace semicl
