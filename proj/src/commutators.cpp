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

#include "semicl/commutators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "semicl/fit.hpp"

namespace semicl {

CommutatorWord::CommutatorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (letters_.size() < 2) {
        throw std::invalid_argument("a commutator word needs at least two letters");
    }
}

CommutatorWord CommutatorWord::parse(std::string_view text) {
    std::vector<Letter> letters;
    for (char ch : text) {
        if (ch == 'A' || ch == 'a') {
            letters.push_back(Letter::A);
        } else if (ch == 'B' || ch == 'b') {
            letters.push_back(Letter::B);
        } else {
            throw std::invalid_argument("commutator words use only the letters A and B, got '" + std::string(text) +
                                        "'");
        }
    }
    CommutatorWord word(std::move(letters));
    if (word.vanishes_trivially()) {
        throw std::invalid_argument("the last two letters of '" + std::string(text) +
                                    "' coincide, so the commutator is identically zero");
    }
    return word;
}

bool CommutatorWord::vanishes_trivially() const { return letters_[letters_.size() - 1] == letters_[letters_.size() - 2]; }

std::string CommutatorWord::str() const {
    std::string s;
    for (Letter l : letters_) {
        s += l == Letter::A ? 'A' : 'B';
    }
    return s;
}

ComplexVector apply_A(std::span<const Complex> psi, const Grid1D &grid, double hbar) {
    ComplexVector out = spatial_derivative(psi, grid, 2);
    for (Complex &v : out) {
        v *= -0.5 * hbar;
    }
    return out;
}

ComplexVector apply_B(std::span<const Complex> psi, const Grid1D &grid, double hbar, const PotentialSpec &potential) {
    ComplexVector out(psi.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = potential(grid.node(j)) / hbar * psi[j];
    }
    return out;
}

ComplexVector apply_A(const WaveFunction &psi) { return apply_A(psi.values(), psi.grid(), psi.hbar()); }

ComplexVector apply_B(const WaveFunction &psi, const PotentialSpec &potential) {
    return apply_B(psi.values(), psi.grid(), psi.hbar(), potential);
}

namespace {

ComplexVector apply_letter(Letter l, std::span<const Complex> v, const WaveFunction &psi,
                           const PotentialSpec &potential) {
    return l == Letter::A ? apply_A(v, psi.grid(), psi.hbar()) : apply_B(v, psi.grid(), psi.hbar(), potential);
}

ComplexVector apply_suffix(const std::vector<Letter> &w, std::size_t i, std::span<const Complex> v,
                           const WaveFunction &psi, const PotentialSpec &potential) {
    if (i + 1 == w.size()) {
        return apply_letter(w[i], v, psi, potential);
    }
    const ComplexVector inner = apply_suffix(w, i + 1, v, psi, potential);
    ComplexVector out = apply_letter(w[i], inner, psi, potential);
    const ComplexVector x_v = apply_letter(w[i], v, psi, potential);
    const ComplexVector swapped = apply_suffix(w, i + 1, x_v, psi, potential);
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] -= swapped[j];
    }
    return out;
}

RealVector sample(const WaveFunction &psi, const PotentialSpec &potential, int k) {
    RealVector out(psi.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = potential.derivative(k, psi.grid().node(j));
    }
    return out;
}

} // namespace

ComplexVector apply_commutator(const CommutatorWord &word, const WaveFunction &psi, const PotentialSpec &potential) {
    return apply_suffix(word.letters(), 0, psi.values(), psi, potential);
}

ComplexVector closed_form(const CommutatorWord &word, const WaveFunction &psi, const PotentialSpec &potential) {
    const std::string w = word.str();
    const double hbar = psi.hbar();
    const std::span<const Complex> p = psi.values();
    ComplexVector out(psi.size());
    if (w == "AB") {
        const ComplexVector d1 = spatial_derivative(psi, 1);
        const RealVector v1 = sample(psi, potential, 1), v2 = sample(psi, potential, 2);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] = -(0.5 * v2[j] * p[j] + v1[j] * d1[j]);
        }
    } else if (w == "BBA") {
        const RealVector v1 = sample(psi, potential, 1);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] = -(v1[j] * v1[j] / hbar) * p[j];
        }
    } else if (w == "AAB") {
        const ComplexVector d1 = spatial_derivative(psi, 1), d2 = spatial_derivative(psi, 2);
        const RealVector v2 = sample(psi, potential, 2), v3 = sample(psi, potential, 3),
                         v4 = sample(psi, potential, 4);
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] = hbar * (0.25 * v4[j] * p[j] + v3[j] * d1[j] + v2[j] * d2[j]);
        }
    } else {
        throw std::invalid_argument("no closed form for the word '" + w + "' (supported: AB, BBA, AAB)");
    }
    return out;
}

ComplexVector aaab_leading_term(int k, const WaveFunction &psi, const PotentialSpec &potential) {
    if (k < 1 || k > 4) {
        throw std::invalid_argument("leading-term order must lie in [1, 4]");
    }
    const ComplexVector dk = spatial_derivative(psi, k);
    const RealVector vk = sample(psi, potential, k);
    const double coeff = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(psi.hbar(), k - 1);
    ComplexVector out(psi.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = coeff * vk[j] * dk[j];
    }
    return out;
}

ScalingProbe scaling_probe(const CommutatorWord &word, const StateFamily &family, const PotentialSpec &potential,
                           const std::vector<double> &hbars) {
    const std::set<double> distinct(hbars.begin(), hbars.end());
    if (distinct.size() < 4 || *distinct.begin() <= 0.0) {
        throw std::invalid_argument("a scaling probe needs at least four distinct positive hbar values");
    }
    ScalingProbe probe;
    probe.hbars = hbars;
    for (double hbar : hbars) {
        const WaveFunction psi = family(hbar);
        const ComplexVector r = apply_commutator(word, psi, potential);
        probe.norms.push_back(l2_norm(r, psi.grid().dx()));
    }
    probe.exponent = fit_loglog_slope(probe.hbars, probe.norms);
    return probe;
}

} // namespace semicl
