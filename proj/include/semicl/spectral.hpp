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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace semicl {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Largest supported log2 grid size. 2^26 complex doubles is 1 GiB per array.
inline constexpr int kMaxQubits = 26;

/// Uniform periodic grid with M = 2^m nodes x_j = x0 + j*dx on [x0, x0 + L).
///
/// L and m are stored; dx is always derived so that dx * M reproduces L.
class Grid1D {
  public:
    Grid1D(double length, int qubits, double x0 = 0.0);

    double length() const { return length_; }
    int qubits() const { return qubits_; }
    std::size_t points() const { return std::size_t{1} << qubits_; }
    double dx() const { return length_ / static_cast<double>(points()); }
    double x0() const { return x0_; }
    double node(std::size_t j) const { return x0_ + static_cast<double>(j) * dx(); }
    RealVector nodes() const;

    bool operator==(const Grid1D &other) const = default;

  private:
    double length_;
    int qubits_;
    double x0_;
};

/// Throws std::invalid_argument for L <= 0 or m outside [1, kMaxQubits].
Grid1D build_grid(double length, int qubits, double x0 = 0.0);

/// Complex amplitudes on a grid together with the semiclassical parameter.
///
/// Construction does not normalize; use `WaveFunction::normalized` for that.
class WaveFunction {
  public:
    WaveFunction(Grid1D grid, double hbar, ComplexVector values);

    /// Scales `values` so that sum |psi_j|^2 dx = 1. Throws on an all-zero input.
    static WaveFunction normalized(Grid1D grid, double hbar, ComplexVector values);

    const Grid1D &grid() const { return grid_; }
    double hbar() const { return hbar_; }
    std::span<const Complex> values() const { return values_; }
    const ComplexVector &data() const { return values_; }
    ComplexVector &data() { return values_; }
    std::size_t size() const { return values_.size(); }

    /// sqrt(sum |psi_j|^2 dx)
    double norm() const;
    WaveFunction with_values(ComplexVector values) const;

  private:
    Grid1D grid_;
    double hbar_;
    ComplexVector values_;
};

/// Grid-weighted l2 norm sqrt(sum |v_j|^2 dx).
double l2_norm(std::span<const Complex> values, double dx);
/// Grid-weighted l2 distance between two equally sized arrays.
double l2_distance(std::span<const Complex> a, std::span<const Complex> b, double dx);

bool is_power_of_two(std::size_t n);

/// Unitary DFT, out_k = M^{-1/2} sum_j exp(-2 pi i jk/M) in_j.
/// Throws std::invalid_argument unless the length is a power of two.
ComplexVector forward_dft(std::span<const Complex> values);
/// Inverse of `forward_dft`, i.e. the positive-exponent unitary kernel.
ComplexVector inverse_dft(std::span<const Complex> values);

/// Frequencies mu_k attached to DFT index k.
///
/// mu_k = (2 pi / L) s(k) with s(k) = k for k < M/2 and k - M otherwise. As a set
/// this equals {2 pi (k - M/2) / L : k = 0..M-1}; the layout keeps mu(k)
/// deterministic per DFT index without an fftshift.
struct FrequencyTable {
    RealVector mu;

    std::size_t size() const { return mu.size(); }
    double operator[](std::size_t k) const { return mu[k]; }
};

FrequencyTable frequency_table(const Grid1D &grid);

using Multiplier = std::function<Complex(double)>;

/// inverse_dft(g(mu_k) * forward_dft(values)).
ComplexVector apply_multiplier(std::span<const Complex> values, const FrequencyTable &table,
                               const Multiplier &g);
WaveFunction apply_multiplier(const WaveFunction &psi, const Multiplier &g);

/// (i mu)^order for order 0..4, evaluated without complex pow.
Complex derivative_symbol(double mu, int order);

/// Spectral derivative of order 1..4, i.e. the multiplier (i mu)^order.
ComplexVector spatial_derivative(std::span<const Complex> values, const Grid1D &grid, int order);
ComplexVector spatial_derivative(const WaveFunction &psi, int order);

namespace detail {

enum class DftDirection { forward, inverse };

/// Unnormalized transform of `in` into `out` (out-of-place, both length n).
/// Backed by FFTW plans cached per (size, direction) behind a mutex.
void dft_unnormalized(std::span<const Complex> in, std::span<Complex> out, DftDirection direction);

/// In-place unitary transform using `scratch` (resized as needed).
void dft_inplace(ComplexVector &values, ComplexVector &scratch, DftDirection direction);

} // namespace detail

} // namespace semicl
