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

#include "semicl/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "semicl/circuit.hpp"
#include "semicl/commutators.hpp"

namespace semicl::harness {

using nlohmann::json;

namespace {

void require_object(const json &j, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
}

void check_keys(const json &j, const std::string &where, const std::set<std::string> &allowed) {
    require_object(j, where);
    for (const auto &item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }
    }
}

template <typename T> void read(const json &j, const char *key, T &out, const std::string &where) {
    if (!j.contains(key)) {
        return;
    }
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <typename T> void read_opt(const json &j, const char *key, std::optional<T> &out, const std::string &where) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return;
    }
    T v{};
    read(j, key, v, where);
    out = v;
}

ReferencePolicy parse_reference(const json &j, ReferencePolicy policy, const std::string &where) {
    check_keys(j, where, {"scheme", "dt", "m"});
    read(j, "scheme", policy.scheme, where);
    read(j, "dt", policy.dt, where);
    read(j, "m", policy.m, where);
    return policy;
}

SplittingScheme parse_scheme(const json &j) {
    try {
        if (j.is_string()) {
            return builtin_scheme(j.get<std::string>());
        }
        check_keys(j, "scheme", {"name", "c", "d", "order"});
        std::string name = "custom";
        std::vector<double> c, d;
        int order = 1;
        read(j, "name", name, "scheme");
        read(j, "c", c, "scheme");
        read(j, "d", d, "scheme");
        read(j, "order", order, "scheme");
        return make_scheme(name, c, d, order);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(std::string("scheme: ") + e.what());
    }
}

json reference_json(const ReferencePolicy &r) { return {{"scheme", r.scheme}, {"dt", r.dt}, {"m", r.m}}; }

} // namespace

std::uint64_t DiscretizationConfig::resolved_steps() const {
    if (steps) {
        return *steps;
    }
    if (t_final) {
        return static_cast<std::uint64_t>(std::llround(*t_final / dt));
    }
    return 0;
}

double DiscretizationConfig::final_time() const {
    return t_final ? *t_final : static_cast<double>(resolved_steps()) * dt;
}

double ReferencePolicy::resolved_dt(double hbar) const { return dt > 0.0 ? dt : std::min(hbar / 10.0, 5e-4); }

RunConfig parse_config(const json &doc) {
    check_keys(doc, "config",
               {"problem", "discretization", "scheme", "outputs", "seed", "convergence", "robustness", "circuit",
                "commutators"});
    RunConfig cfg;
    if (doc.contains("problem")) {
        const json &p = doc.at("problem");
        const std::string w = "problem";
        check_keys(p, w, {"state", "potential", "coefficients", "hbar", "domain", "gaussian", "wkb"});
        read(p, "state", cfg.problem.state, w);
        read(p, "potential", cfg.problem.potential, w);
        read(p, "coefficients", cfg.problem.coefficients, w);
        read(p, "hbar", cfg.problem.hbar, w);
        if (p.contains("domain")) {
            check_keys(p.at("domain"), "problem.domain", {"L", "x0"});
            read(p.at("domain"), "L", cfg.problem.L, "problem.domain");
            read(p.at("domain"), "x0", cfg.problem.x0, "problem.domain");
        }
        if (p.contains("gaussian")) {
            check_keys(p.at("gaussian"), "problem.gaussian", {"center", "gamma", "k0"});
            read(p.at("gaussian"), "center", cfg.problem.center, "problem.gaussian");
            read(p.at("gaussian"), "gamma", cfg.problem.gamma, "problem.gaussian");
            read(p.at("gaussian"), "k0", cfg.problem.k0, "problem.gaussian");
        }
        if (p.contains("wkb")) {
            check_keys(p.at("wkb"), "problem.wkb", {"center", "gamma", "phase"});
            read(p.at("wkb"), "center", cfg.problem.center, "problem.wkb");
            read(p.at("wkb"), "gamma", cfg.problem.gamma, "problem.wkb");
            read(p.at("wkb"), "phase", cfg.problem.phase, "problem.wkb");
        }
    }
    if (doc.contains("discretization")) {
        const json &d = doc.at("discretization");
        const std::string w = "discretization";
        check_keys(d, w, {"m", "dt", "steps", "t_final"});
        read(d, "m", cfg.discretization.m, w);
        read(d, "dt", cfg.discretization.dt, w);
        read_opt(d, "steps", cfg.discretization.steps, w);
        read_opt(d, "t_final", cfg.discretization.t_final, w);
    }
    if (!cfg.discretization.steps && !cfg.discretization.t_final) {
        cfg.discretization.steps = 100;
    }
    if (doc.contains("scheme")) {
        cfg.scheme = parse_scheme(doc.at("scheme"));
    }
    if (doc.contains("outputs")) {
        const json &o = doc.at("outputs");
        const std::string w = "outputs";
        check_keys(o, w, {"directory", "cadence", "formats"});
        std::string dir = cfg.outputs.directory.string();
        read(o, "directory", dir, w);
        cfg.outputs.directory = dir;
        read(o, "cadence", cfg.outputs.cadence, w);
        if (o.contains("formats")) {
            std::vector<std::string> formats;
            read(o, "formats", formats, w);
            cfg.outputs.csv = cfg.outputs.dump = false;
            for (const auto &f : formats) {
                if (f == "csv") {
                    cfg.outputs.csv = true;
                } else if (f == "dump") {
                    cfg.outputs.dump = true;
                } else {
                    throw ConfigError("outputs.formats: unknown format '" + f + "' (csv, dump)");
                }
            }
        }
    }
    read(doc, "seed", cfg.seed, "config");
    if (doc.contains("convergence")) {
        const json &c = doc.at("convergence");
        const std::string w = "convergence";
        check_keys(c, w, {"schemes", "dts", "reference"});
        read(c, "schemes", cfg.convergence.schemes, w);
        read(c, "dts", cfg.convergence.dts, w);
        if (c.contains("reference")) {
            cfg.convergence.reference = parse_reference(c.at("reference"), cfg.convergence.reference, w + ".reference");
        }
    }
    if (doc.contains("robustness")) {
        const json &r = doc.at("robustness");
        const std::string w = "robustness";
        check_keys(r, w, {"hbars", "growth_factor", "wave_threshold", "reference"});
        read(r, "hbars", cfg.robustness.hbars, w);
        read(r, "growth_factor", cfg.robustness.growth_factor, w);
        read(r, "wave_threshold", cfg.robustness.wave_threshold, w);
        if (r.contains("reference")) {
            cfg.robustness.reference = parse_reference(r.at("reference"), cfg.robustness.reference, w + ".reference");
        }
    }
    if (doc.contains("circuit")) {
        const json &c = doc.at("circuit");
        const std::string w = "circuit";
        check_keys(c, w, {"shots", "repeats", "cost_model", "divergence_limit"});
        read(c, "shots", cfg.circuit.shots, w);
        read(c, "repeats", cfg.circuit.repeats, w);
        read(c, "cost_model", cfg.circuit.cost_model, w);
        read(c, "divergence_limit", cfg.circuit.divergence_limit, w);
    }
    if (doc.contains("commutators")) {
        const json &c = doc.at("commutators");
        const std::string w = "commutators";
        check_keys(c, w, {"words", "hbars", "m"});
        read(c, "words", cfg.commutators.words, w);
        read(c, "hbars", cfg.commutators.hbars, w);
        read(c, "m", cfg.commutators.m, w);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception &e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

void validate(const RunConfig &cfg) {
    const auto &p = cfg.problem;
    if (!(p.hbar > 0.0) || !std::isfinite(p.hbar)) {
        throw ConfigError("problem.hbar must be positive");
    }
    if (!(p.L > 0.0) || !std::isfinite(p.L) || !std::isfinite(p.x0)) {
        throw ConfigError("problem.domain: L must be positive and x0 finite");
    }
    if (p.state != "test-wkb" && p.state != "gaussian" && p.state != "custom-wkb") {
        throw ConfigError("problem.state: unknown state '" + p.state + "' (test-wkb, gaussian, custom-wkb)");
    }
    if (p.state == "test-wkb" && (p.L != 4.0 || p.x0 != -2.0)) {
        throw ConfigError("problem.domain: the test-wkb state lives on [-2, 2) (L = 4, x0 = -2)");
    }
    if (p.state != "test-wkb" && !(p.gamma > 0.0)) {
        throw ConfigError("problem.gamma must be positive");
    }
    try {
        (void)potential_by_name(p.potential, p.coefficients);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("problem.potential: ") + e.what());
    }
    const auto &d = cfg.discretization;
    if (d.m < 1 || d.m > kMaxQubits) {
        throw ConfigError("discretization.m must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (!std::isfinite(d.dt) || d.dt == 0.0) {
        throw ConfigError("discretization.dt must be finite and nonzero");
    }
    if (d.steps.has_value() == d.t_final.has_value()) {
        throw ConfigError("discretization: give exactly one of steps and t_final");
    }
    if (d.t_final) {
        const double ratio = *d.t_final / d.dt;
        if (!(ratio >= 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
            throw ConfigError("discretization.t_final must be a nonnegative multiple of dt");
        }
    }
    const std::uint64_t steps = d.resolved_steps();
    if (cfg.outputs.cadence > 0 && steps % cfg.outputs.cadence != 0) {
        throw ConfigError("outputs.cadence (" + std::to_string(cfg.outputs.cadence) + ") must divide the step count (" +
                          std::to_string(steps) + ")");
    }
    for (const auto &s : cfg.convergence.schemes) {
        try {
            (void)builtin_scheme(s);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("convergence.schemes: ") + e.what());
        }
    }
    for (double dt : cfg.convergence.dts) {
        if (!(dt > 0.0)) {
            throw ConfigError("convergence.dts must be positive");
        }
    }
    for (const ReferencePolicy *r : {&cfg.convergence.reference, &cfg.robustness.reference}) {
        try {
            (void)builtin_scheme(r->scheme);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(std::string("reference.scheme: ") + e.what());
        }
        if (r->dt < 0.0 || r->m < 0 || r->m > kMaxQubits) {
            throw ConfigError("reference: dt must be nonnegative and m in [0, " + std::to_string(kMaxQubits) + "]");
        }
    }
    for (double h : cfg.robustness.hbars) {
        if (!(h > 0.0)) {
            throw ConfigError("robustness.hbars must be positive");
        }
    }
    if (cfg.circuit.repeats == 0) {
        throw ConfigError("circuit.repeats must be at least 1");
    }
    for (auto s : cfg.circuit.shots) {
        if (s == 0) {
            throw ConfigError("circuit.shots entries must be at least 1");
        }
    }
    try {
        (void)CostModel::parse(cfg.circuit.cost_model);
        for (const auto &w : cfg.commutators.words) {
            (void)CommutatorWord::parse(w);
        }
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (cfg.commutators.m < 0 || cfg.commutators.m > kMaxQubits) {
        throw ConfigError("commutators.m out of range");
    }
}

json to_json(const ProblemConfig &p) {
    json j = {{"state", p.state},
              {"potential", p.potential},
              {"coefficients", p.coefficients},
              {"hbar", p.hbar},
              {"domain", {{"L", p.L}, {"x0", p.x0}}}};
    if (p.state == "gaussian") {
        j["gaussian"] = {{"center", p.center}, {"gamma", p.gamma}, {"k0", p.k0}};
    } else if (p.state == "custom-wkb") {
        j["wkb"] = {{"center", p.center}, {"gamma", p.gamma}, {"phase", p.phase}};
    }
    return j;
}

json to_json(const RunConfig &cfg) {
    json disc = {{"m", cfg.discretization.m}, {"dt", cfg.discretization.dt}};
    if (cfg.discretization.steps) {
        disc["steps"] = *cfg.discretization.steps;
    } else {
        disc["t_final"] = *cfg.discretization.t_final;
    }
    std::vector<std::string> formats;
    if (cfg.outputs.csv) {
        formats.emplace_back("csv");
    }
    if (cfg.outputs.dump) {
        formats.emplace_back("dump");
    }
    return {
        {"problem", to_json(cfg.problem)},
        {"discretization", disc},
        {"scheme", {{"name", cfg.scheme.name}, {"c", cfg.scheme.c}, {"d", cfg.scheme.d}, {"order", cfg.scheme.order}}},
        {"outputs",
         {{"directory", cfg.outputs.directory.string()}, {"cadence", cfg.outputs.cadence}, {"formats", formats}}},
        {"seed", cfg.seed},
        {"convergence",
         {{"schemes", cfg.convergence.schemes},
          {"dts", cfg.convergence.dts},
          {"reference", reference_json(cfg.convergence.reference)}}},
        {"robustness",
         {{"hbars", cfg.robustness.hbars},
          {"growth_factor", cfg.robustness.growth_factor},
          {"wave_threshold", cfg.robustness.wave_threshold},
          {"reference", reference_json(cfg.robustness.reference)}}},
        {"circuit",
         {{"shots", cfg.circuit.shots},
          {"repeats", cfg.circuit.repeats},
          {"cost_model", cfg.circuit.cost_model},
          {"divergence_limit", cfg.circuit.divergence_limit}}},
        {"commutators",
         {{"words", cfg.commutators.words}, {"hbars", cfg.commutators.hbars}, {"m", cfg.commutators.m}}},
    };
}

Problem build_problem(const ProblemConfig &p, int m) {
    const Grid1D grid(p.L, m, p.x0);
    PotentialSpec potential = potential_by_name(p.potential, p.coefficients);
    if (p.state == "test-wkb") {
        TestProblem tp = test_problem(p.hbar, grid);
        return {std::move(tp.state), std::move(potential)};
    }
    if (p.state == "gaussian") {
        return {gaussian_packet(p.center, p.gamma, p.k0, p.hbar, grid), std::move(potential)};
    }
    const std::vector<double> phase = p.phase;
    const double center = p.center, gamma = p.gamma;
    WKBData data{
        [center, gamma](double x) { return std::exp(-(x - center) * (x - center) / gamma); },
        [phase](double x) {
            double acc = 0.0;
            for (std::size_t i = phase.size(); i-- > 0;) {
                acc = acc * x + phase[i];
            }
            return acc;
        },
        p.hbar,
    };
    return {wkb_state(data, grid), std::move(potential)};
}

} // namespace semicl::harness
