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

#include "semicl/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semicl {
namespace {

double effective_eps(const EstimateRequest &req) { return req.v_max ? req.eps / *req.v_max : req.eps; }

double volume_factor(const EstimateRequest &req) { return std::pow(req.L, 0.5 * req.d); }

// ceil() that ignores relative rounding noise below 1e-12, so t / dt = 100.00000000000001 gives 100.
double guarded_ceil(double x) { return std::ceil(x - 1e-12 * std::max(1.0, std::abs(x))); }

double kappa(const EstimateRequest &req) {
    return req.target == Target::observable || req.p <= 2 ? 1.0 : static_cast<double>(req.p);
}

} // namespace

void validate(const EstimateRequest &req) {
    auto positive = [](double v, const char *what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + " must be positive and finite");
        }
    };
    positive(req.eps, "eps");
    positive(req.hbar, "hbar");
    positive(req.L, "L");
    positive(req.t, "t");
    if (req.eps >= 1.0) {
        throw std::invalid_argument("eps must be below 1");
    }
    if (req.d < 1) {
        throw std::invalid_argument("dimension d must be at least 1");
    }
    if (req.p < 1) {
        throw std::invalid_argument("splitting order p must be at least 1");
    }
    if (!(req.ell >= 1.0) || !std::isfinite(req.ell)) {
        throw std::invalid_argument("smoothness ell must be at least 1");
    }
    if (req.v_max) {
        positive(*req.v_max, "v_max");
    }
}

Meshing meshing(const EstimateRequest &req) {
    validate(req);
    const double eps = effective_eps(req);
    const double vol = volume_factor(req);
    Meshing out;
    if (req.target == Target::wavefunction) {
        out.dt = std::pow(req.hbar * eps / (vol * req.t), 1.0 / req.p);
    } else {
        out.dt = std::sqrt(eps / (vol * req.t));
    }
    out.dx = req.hbar * req.L * std::pow(eps * out.dt / (vol * req.t), 1.0 / req.ell);
    out.single_step = out.dt >= req.t;
    out.n_steps = out.single_step ? 1 : static_cast<std::uint64_t>(guarded_ceil(req.t / out.dt));
    return out;
}

QubitCount qubit_count(const EstimateRequest &req) {
    const Meshing mesh = meshing(req);
    QubitCount q;
    const double ratio = req.L / mesh.dx;
    q.log2_argument = std::log2(ratio);
    if (ratio <= 1.0) {
        q.clamped = true;
        q.m = 1;
        return q;
    }
    q.m = req.d * static_cast<int>(guarded_ceil(q.log2_argument));
    return q;
}

EstimateReport estimate(const EstimateRequest &req) {
    const Meshing mesh = meshing(req);
    const QubitCount q = qubit_count(req);
    EstimateReport r;
    r.dt = mesh.dt;
    r.dx = mesh.dx;
    r.n_steps = mesh.n_steps;
    r.m_qubits = q.m;
    r.J_of_m = req.cost_model.cost(q.m);
    r.n_gates = 2.0 * kappa(req) * r.J_of_m * req.t / mesh.dt;
    r.n_queries = r.n_gates / (2.0 * r.J_of_m);
    r.notes.push_back("order-of-magnitude: all constants set to 1");
    if (mesh.single_step) {
        r.notes.push_back("single step regime: dt >= t");
    }
    if (q.clamped) {
        r.notes.push_back("qubit formula argument <= 1; m set to 1");
    }
    if (req.target == Target::observable && !(req.hbar < std::sqrt(effective_eps(req) / req.t))) {
        r.notes.push_back("warning: hbar >= sqrt(eps/t); the observable bound assumes hbar < sqrt(eps/t)");
    }
    if (req.target == Target::wavefunction && req.ell != 1.0) {
        r.notes.push_back("ell enters the gate count only through J(m)");
    }
    return r;
}

double measurement_overhead(const EstimateRequest &req) {
    if (!req.m_obs || !req.delta) {
        throw std::invalid_argument("measurement overhead needs both M_obs and delta");
    }
    if (!(*req.m_obs >= 1.0)) {
        throw std::invalid_argument("M_obs must be at least 1");
    }
    if (!(*req.delta > 0.0 && *req.delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    EstimateRequest obs = req;
    obs.target = Target::observable;
    const double eps = effective_eps(obs);
    const int m = qubit_count(obs).m;
    return 2.0 * obs.cost_model.cost(m) * std::sqrt(*req.m_obs) * std::pow(obs.L, 0.25 * obs.d) *
           std::pow(obs.t, 1.5) / std::pow(eps, 1.5) * std::log(1.0 / *req.delta);
}

ErrorBudget error_budget(const EstimateRequest &req, double dt, double dx) {
    validate(req);
    const double vol = volume_factor(req);
    const double n = req.t / dt;
    const double space = std::pow(dx / (req.hbar * req.L), req.ell);
    ErrorBudget b;
    b.space_term = vol * n * space;
    if (req.target == Target::wavefunction) {
        b.time_term = vol * n * std::pow(dt, req.p + 1) / req.hbar;
    } else {
        b.time_term = vol * n * dt * dt * dt;
        b.hbar_term = vol * n * dt * req.hbar * req.hbar;
    }
    return b;
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "eps") return SweepAxis::eps;
    if (name == "hbar") return SweepAxis::hbar;
    if (name == "t") return SweepAxis::t;
    if (name == "d") return SweepAxis::d;
    if (name == "p") return SweepAxis::p;
    if (name == "ell") return SweepAxis::ell;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "' (eps, hbar, t, d, p, ell)");
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::eps:
        return "eps";
    case SweepAxis::hbar:
        return "hbar";
    case SweepAxis::t:
        return "t";
    case SweepAxis::d:
        return "d";
    case SweepAxis::p:
        return "p";
    case SweepAxis::ell:
        return "ell";
    }
    return "?";
}

namespace {

int as_integer(double v, const char *what) {
    if (v != std::floor(v) || v < 1.0) {
        throw std::invalid_argument(std::string(what) + " sweep values must be positive integers");
    }
    return static_cast<int>(v);
}

} // namespace

std::vector<SweepRow> sweep(const EstimateRequest &base, SweepAxis axis, const std::vector<double> &values) {
    if (values.empty()) {
        throw std::invalid_argument("sweep needs at least one value");
    }
    std::vector<SweepRow> rows;
    for (double v : values) {
        EstimateRequest req = base;
        switch (axis) {
        case SweepAxis::eps:
            req.eps = v;
            break;
        case SweepAxis::hbar:
            req.hbar = v;
            break;
        case SweepAxis::t:
            req.t = v;
            break;
        case SweepAxis::d:
            req.d = as_integer(v, "d");
            break;
        case SweepAxis::p:
            req.p = as_integer(v, "p");
            break;
        case SweepAxis::ell:
            req.ell = v;
            break;
        }
        rows.push_back({v, estimate(req)});
    }
    return rows;
}

EstimateRequest scattering_preset() {
    EstimateRequest req;
    req.L = 10.0;
    req.d = 3;
    req.t = 1000.0;
    req.p = 2;
    req.ell = 2.0;
    return req;
}

} // namespace semicl
