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

#include "semicl/splitting.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace semicl {
namespace {

bool is_palindrome(const std::vector<Stage> &stages) {
    for (std::size_t i = 0, j = stages.size(); i < j--; ++i) {
        if (stages[i].kind != stages[j].kind || std::abs(stages[i].fraction - stages[j].fraction) > 1e-15) {
            return false;
        }
    }
    return true;
}

void push_stage(std::vector<Stage> &out, StageKind kind, double fraction) {
    if (fraction == 0.0) {
        return;
    }
    if (!out.empty() && out.back().kind == kind) {
        out.back().fraction += fraction;
        return;
    }
    out.push_back({kind, fraction});
}

} // namespace

SplittingScheme make_scheme(std::string name, std::vector<double> c, std::vector<double> d, int order) {
    if (c.empty() || c.size() != d.size()) {
        throw std::invalid_argument("splitting scheme needs equally many c and d coefficients (s >= 1)");
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!std::isfinite(c[i]) || !std::isfinite(d[i])) {
            throw std::invalid_argument("splitting coefficients must be finite");
        }
    }
    if (order < 1) {
        throw std::invalid_argument("splitting scheme order must be >= 1");
    }
    SplittingScheme scheme{std::move(name), std::move(c), std::move(d), order, false};
    scheme.symmetric = is_palindrome(stage_sequence(scheme));
    return scheme;
}

SplittingScheme builtin_scheme(std::string_view id) {
    if (id == "lie") {
        return make_scheme("lie", {1.0}, {1.0}, 1);
    }
    if (id == "strang_vkv") {
        return make_scheme("strang_vkv", {0.5, 0.5}, {1.0, 0.0}, 2);
    }
    if (id == "strang_kvk") {
        // K-V-K: the leading c_1 = 0 drops the final potential stage, leaving
        // U_K(dt/2) U_V(dt) U_K(dt/2).
        return make_scheme("strang_kvk", {0.0, 1.0}, {0.5, 0.5}, 2);
    }
    if (id == "triple3") {
        const double c1 = 0.26833, c2 = 0.9197;
        const double d1 = 0.63506, d2 = -0.1880;
        return make_scheme("triple3", {c1, c2, 1.0 - c1 - c2}, {d1, d2, 1.0 - d1 - d2}, 3);
    }
    if (id == "yoshida4") {
        const double w = 1.0 / (2.0 - std::cbrt(2.0));
        const double c1 = 0.5 * w;
        const double c2 = 0.5 - c1;
        return make_scheme("yoshida4", {c1, c2, c2, c1}, {w, 1.0 - 2.0 * w, w, 0.0}, 4);
    }
    throw std::invalid_argument("unknown splitting scheme '" + std::string(id) + "'");
}

std::vector<std::string> builtin_scheme_ids() {
    return {"lie", "strang_vkv", "strang_kvk", "triple3", "yoshida4"};
}

SchemeValidation validate_scheme(const SplittingScheme &scheme, double tolerance) {
    SchemeValidation report;
    for (std::size_t i = 0; i < scheme.stages(); ++i) {
        report.sum_c += scheme.c[i];
        report.sum_d += scheme.d[i];
    }
    const bool c_ok = std::abs(report.sum_c - 1.0) <= tolerance;
    const bool d_ok = std::abs(report.sum_d - 1.0) <= tolerance;
    report.consistent = c_ok && d_ok;
    auto fail = [&report](const std::string &what, double value) {
        std::ostringstream os;
        os.precision(17);
        os << what << " = " << value;
        report.failures.push_back(os.str());
    };
    if (!c_ok) {
        fail("consistency: sum of c", report.sum_c);
    }
    if (!d_ok) {
        fail("consistency: sum of d", report.sum_d);
    }
    if (scheme.c.size() != scheme.d.size() || scheme.c.empty()) {
        report.failures.emplace_back("coefficient arrays are empty or differ in length");
    }

    double partial_c = 0.0;
    for (std::size_t i = 0; i < scheme.stages(); ++i) {
        partial_c += scheme.c[i];
        report.order2_value += scheme.d[i] * partial_c;
    }
    report.order2_satisfied = std::abs(report.order2_value - 0.5) <= tolerance;
    if (scheme.order >= 2) {
        report.order2_checked = true;
        if (!report.order2_satisfied) {
            fail("order 2: sum_i d_i (c_1 + ... + c_i)", report.order2_value);
        }
    }
    report.palindromic = is_palindrome(stage_sequence(scheme));
    return report;
}

std::vector<Stage> stage_sequence(const SplittingScheme &scheme, StageOrder order) {
    std::vector<Stage> stages;
    const std::size_t s = scheme.stages();
    if (order == StageOrder::right_to_left) {
        for (std::size_t i = s; i-- > 0;) {
            push_stage(stages, StageKind::kinetic, scheme.d[i]);
            push_stage(stages, StageKind::potential, scheme.c[i]);
        }
    } else {
        for (std::size_t i = 0; i < s; ++i) {
            push_stage(stages, StageKind::potential, scheme.c[i]);
            push_stage(stages, StageKind::kinetic, scheme.d[i]);
        }
    }
    return stages;
}

std::vector<Stage> flatten_steps(const SplittingScheme &scheme, std::size_t steps, bool merge_boundaries,
                                 StageOrder order) {
    const std::vector<Stage> one = stage_sequence(scheme, order);
    std::vector<Stage> out;
    out.reserve(one.size() * steps);
    for (std::size_t n = 0; n < steps; ++n) {
        for (std::size_t i = 0; i < one.size(); ++i) {
            if (i == 0 && merge_boundaries) {
                push_stage(out, one[i].kind, one[i].fraction);
            } else {
                out.push_back(one[i]);
            }
        }
    }
    return out;
}

bool has_mergeable_boundary(const SplittingScheme &scheme, StageOrder order) {
    const auto one = stage_sequence(scheme, order);
    return one.size() > 1 && one.front().kind == one.back().kind;
}

} // namespace semicl
