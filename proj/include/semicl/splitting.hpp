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
#include <string>
#include <string_view>
#include <vector>

namespace semicl {

/// Coefficient set of a 2s-operator splitting
///
///   psi^{n+1} = U_V(c_1 dt) U_K(d_1 dt) U_V(c_2 dt) U_K(d_2 dt) ... U_V(c_s dt) U_K(d_s dt) psi^n
///
/// where U_V(tau) = exp(-i tau V / hbar) and U_K(tau) = exp(i tau hbar Laplacian / 2).
/// The product is read right to left: U_K(d_s dt) acts first and U_V(c_1 dt) last.
struct SplittingScheme {
    std::string name;
    std::vector<double> c; ///< potential fractions
    std::vector<double> d; ///< kinetic fractions
    int order = 1;         ///< declared order p
    bool symmetric = false;

    std::size_t stages() const { return c.size(); }
};

/// Builds a scheme from raw coefficients. Throws std::invalid_argument when the
/// arrays are empty, differ in length, hold non-finite values, or order < 1.
/// `symmetric` is derived from the applied operator sequence.
SplittingScheme make_scheme(std::string name, std::vector<double> c, std::vector<double> d, int order);

/// One of lie, strang_vkv, strang_kvk, triple3, yoshida4.
SplittingScheme builtin_scheme(std::string_view id);
std::vector<std::string> builtin_scheme_ids();

struct SchemeValidation {
    double sum_c = 0.0;
    double sum_d = 0.0;
    bool consistent = false;
    bool order2_checked = false;
    double order2_value = 0.0; ///< sum_i d_i (c_1 + ... + c_i), should be 1/2
    bool order2_satisfied = false;
    bool palindromic = false;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// Checks sum c = sum d = 1 and, for declared order >= 2, the second-order
/// condition. Failures are reported, never thrown.
SchemeValidation validate_scheme(const SplittingScheme &scheme, double tolerance = 1e-12);

enum class StageKind { potential, kinetic };

/// Which end of the operator product acts first.
enum class StageOrder {
    right_to_left, ///< U_K(d_s dt) first; the documented default
    left_to_right, ///< U_V(c_1 dt) first; only differs for non-symmetric schemes
};

struct Stage {
    StageKind kind;
    double fraction; ///< multiple of dt
};

/// Stages of one step in application order, zero-fraction stages removed and
/// adjacent same-kind stages combined.
std::vector<Stage> stage_sequence(const SplittingScheme &scheme, StageOrder order = StageOrder::right_to_left);

/// Stages for `steps` consecutive steps. With `merge_boundaries` the last stage of
/// a step is fused with the first stage of the next when both have the same kind,
/// which turns 3n Strang operators into 2n + 1.
std::vector<Stage> flatten_steps(const SplittingScheme &scheme, std::size_t steps, bool merge_boundaries,
                                 StageOrder order = StageOrder::right_to_left);

/// True when a step begins and ends with the same kind of stage, i.e. merging
/// across step boundaries removes one operator per step.
bool has_mergeable_boundary(const SplittingScheme &scheme, StageOrder order = StageOrder::right_to_left);

} // namespace semicl
