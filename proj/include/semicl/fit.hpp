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

#include <span>

namespace semicl {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept. Throws std::invalid_argument
/// for fewer than two points or a constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log y against log x. All values must be positive.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace semicl
