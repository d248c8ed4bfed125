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

#include "semicl/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace semicl {

Grid1D::Grid1D(double length, int qubits, double x0) : length_(length), qubits_(qubits), x0_(x0) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite");
    }
    if (qubits < 1 || qubits > kMaxQubits) {
        throw std::invalid_argument("grid qubit count must lie in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(qubits));
    }
    if (!std::isfinite(x0)) {
        throw std::invalid_argument("grid offset must be finite");
    }
}

RealVector Grid1D::nodes() const {
    RealVector x(points());
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = node(j);
    }
    return x;
}

Grid1D build_grid(double length, int qubits, double x0) { return Grid1D(length, qubits, x0); }

WaveFunction::WaveFunction(Grid1D grid, double hbar, ComplexVector values)
    : grid_(grid), hbar_(hbar), values_(std::move(values)) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("hbar must be positive and finite");
    }
    if (values_.size() != grid_.points()) {
        throw std::invalid_argument("wavefunction length " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(grid_.points()));
    }
}

WaveFunction WaveFunction::normalized(Grid1D grid, double hbar, ComplexVector values) {
    WaveFunction psi(grid, hbar, std::move(values));
    const double n = psi.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite wavefunction");
    }
    for (auto &v : psi.values_) {
        v /= n;
    }
    return psi;
}

double WaveFunction::norm() const { return l2_norm(values_, grid_.dx()); }

WaveFunction WaveFunction::with_values(ComplexVector values) const {
    return WaveFunction(grid_, hbar_, std::move(values));
}

double l2_norm(std::span<const Complex> values, double dx) {
    double s = 0.0;
    for (const auto &v : values) {
        s += std::norm(v);
    }
    return std::sqrt(s * dx);
}

double l2_distance(std::span<const Complex> a, std::span<const Complex> b, double dx) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("l2_distance: size mismatch");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += std::norm(a[j] - b[j]);
    }
    return std::sqrt(s * dx);
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {
namespace {

class PlanCache {
  public:
    ~PlanCache() {
        std::lock_guard lock(mutex_);
        for (auto &[key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(std::size_t n, DftDirection direction) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, direction);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        // Planning scribbles over the arrays, so plan on scratch buffers. FFTW_UNALIGNED
        // lets the plan run on any std::complex<double> buffer through fftw_execute_dft.
        ComplexVector a(n), b(n);
        const int sign = direction == DftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex *>(a.data()),
                                          reinterpret_cast<fftw_complex *>(b.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
        if (plan == nullptr) {
            throw std::runtime_error("FFTW failed to create a plan of size " + std::to_string(n));
        }
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, DftDirection>, fftw_plan> plans_;
};

PlanCache &plan_cache() {
    static PlanCache cache;
    return cache;
}

void require_power_of_two(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw std::invalid_argument("DFT length must be a power of two, got " + std::to_string(n));
    }
}

} // namespace

void dft_unnormalized(std::span<const Complex> in, std::span<Complex> out, DftDirection direction) {
    require_power_of_two(in.size());
    if (out.size() != in.size()) {
        throw std::invalid_argument("DFT output size mismatch");
    }
    if (in.data() == out.data()) {
        throw std::invalid_argument("dft_unnormalized is out-of-place only");
    }
    fftw_plan plan = plan_cache().get(in.size(), direction);
    // fftw_execute_dft is thread-safe; FFTW_PRESERVE_INPUT keeps `in` untouched.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(const_cast<Complex *>(in.data())),
                     reinterpret_cast<fftw_complex *>(out.data()));
}

void dft_inplace(ComplexVector &values, ComplexVector &scratch, DftDirection direction) {
    scratch.resize(values.size());
    dft_unnormalized(values, scratch, direction);
    const double scale = 1.0 / std::sqrt(static_cast<double>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = scratch[k] * scale;
    }
}

} // namespace detail

namespace {

ComplexVector unitary_dft(std::span<const Complex> values, detail::DftDirection direction) {
    ComplexVector out(values.size());
    detail::dft_unnormalized(values, out, direction);
    const double scale = 1.0 / std::sqrt(static_cast<double>(values.size()));
    for (auto &v : out) {
        v *= scale;
    }
    return out;
}

} // namespace

Complex derivative_symbol(double mu, int order) {
    // Exact powers of (i mu); std::pow on a complex base goes through exp/log.
    switch (order) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, mu};
    case 2:
        return {-mu * mu, 0.0};
    case 3:
        return {0.0, -mu * mu * mu};
    case 4:
        return {mu * mu * mu * mu, 0.0};
    default:
        throw std::invalid_argument("derivative_symbol: order must lie in [0, 4]");
    }
}

ComplexVector forward_dft(std::span<const Complex> values) {
    return unitary_dft(values, detail::DftDirection::forward);
}

ComplexVector inverse_dft(std::span<const Complex> values) {
    return unitary_dft(values, detail::DftDirection::inverse);
}

FrequencyTable frequency_table(const Grid1D &grid) {
    const std::size_t M = grid.points();
    const double scale = 2.0 * std::numbers::pi / grid.length();
    FrequencyTable table;
    table.mu.resize(M);
    for (std::size_t k = 0; k < M; ++k) {
        const auto s = k < M / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(M);
        table.mu[k] = scale * s;
    }
    return table;
}

ComplexVector apply_multiplier(std::span<const Complex> values, const FrequencyTable &table,
                               const Multiplier &g) {
    if (values.size() != table.size()) {
        throw std::invalid_argument("apply_multiplier: table size does not match values");
    }
    ComplexVector hat = forward_dft(values);
    for (std::size_t k = 0; k < hat.size(); ++k) {
        hat[k] *= g(table[k]);
    }
    return inverse_dft(hat);
}

WaveFunction apply_multiplier(const WaveFunction &psi, const Multiplier &g) {
    return psi.with_values(apply_multiplier(psi.values(), frequency_table(psi.grid()), g));
}

ComplexVector spatial_derivative(std::span<const Complex> values, const Grid1D &grid, int order) {
    if (order < 1 || order > 4) {
        throw std::invalid_argument("spatial derivative order must lie in [1, 4], got " +
                                    std::to_string(order));
    }
    return apply_multiplier(values, frequency_table(grid),
                            [order](double mu) { return derivative_symbol(mu, order); });
}

ComplexVector spatial_derivative(const WaveFunction &psi, int order) {
    return spatial_derivative(psi.values(), psi.grid(), order);
}

} // namespace semicl
