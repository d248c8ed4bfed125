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
#include <string>
#include <string_view>
#include <vector>

#include "semicl/spectral.hpp"
#include "semicl/states.hpp"

namespace semicl {

/// A = -(hbar/2) d^2/dx^2, B = V / hbar.
enum class Letter { A, B };

/// Nested commutator [w1,[w2,...[w_{r-1}, w_r]...]].
class CommutatorWord {
  public:
    /// Requires r >= 2. Words whose last two letters coincide are representable
    /// (they vanish identically); see `vanishes_trivially`.
    explicit CommutatorWord(std::vector<Letter> letters);

    /// Parses strings like "AAB" = [A,[A,B]]. Rejects anything but A/B, r < 2,
    /// and equal final letters.
    static CommutatorWord parse(std::string_view text);

    const std::vector<Letter> &letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool vanishes_trivially() const;
    std::string str() const;
    bool operator==(const CommutatorWord &) const = default;

  private:
    std::vector<Letter> letters_;
};

ComplexVector apply_A(std::span<const Complex> psi, const Grid1D &grid, double hbar);
ComplexVector apply_B(std::span<const Complex> psi, const Grid1D &grid, double hbar, const PotentialSpec &potential);
ComplexVector apply_A(const WaveFunction &psi);
ComplexVector apply_B(const WaveFunction &psi, const PotentialSpec &potential);

/// Matrix-free evaluation of the nested commutator applied to psi:
/// C_r = w_r, C_i psi = w_i(C_{i+1} psi) - C_{i+1}(w_i psi).
ComplexVector apply_commutator(const CommutatorWord &word, const WaveFunction &psi, const PotentialSpec &potential);

/// Closed forms for the words AB, BBA and AAB, with psi derivatives taken spectrally:
///   [A,B]psi     = -(V'' psi / 2 + V' psi')
///   [B,[B,A]]psi = -(V')^2 psi / hbar
///   [A,[A,B]]psi = hbar (V'''' psi / 4 + V''' psi' + V'' psi'')
/// Throws std::invalid_argument for other words.
ComplexVector closed_form(const CommutatorWord &word, const WaveFunction &psi, const PotentialSpec &potential);

/// The term (-1)^k hbar^{k-1} (d^k V)(d^k psi) of [A,...,A,B] with k A's, 1 <= k <= 4.
/// For V with vanishing derivatives above order k it is the whole commutator.
ComplexVector aaab_leading_term(int k, const WaveFunction &psi, const PotentialSpec &potential);

struct ScalingProbe {
    std::vector<double> hbars;
    std::vector<double> norms; ///< ||word(psi_hbar)|| in the grid l2 norm
    double exponent = 0.0;     ///< least-squares slope of log norm vs log hbar
};

using StateFamily = std::function<WaveFunction(double hbar)>;

/// Throws std::invalid_argument for fewer than 4 distinct positive hbar values.
ScalingProbe scaling_probe(const CommutatorWord &word, const StateFamily &family, const PotentialSpec &potential,
                           const std::vector<double> &hbars);

} // namespace semicl
