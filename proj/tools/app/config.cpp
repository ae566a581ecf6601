// Copyright 2026 The pint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include "pint/errors.hpp"
#include "pint/problems.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>

namespace pint::app {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v)
{
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty()) {
        throw ConfigError("expected a number, got '" + v + "'");
    }
    return d;
}

std::size_t to_size(const std::string& v)
{
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("expected true or false, got '" + v + "'");
}

} // namespace

FractionalScheme parse_scheme(const std::string& s)
{
    if (s == "cd2") return FractionalScheme::cd2;
    if (s == "hoc4") return FractionalScheme::hoc4;
    throw ConfigError("unknown scheme '" + s + "' (expected cd2 or hoc4)");
}

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"problem.example", [&](const std::string& v) { cfg.example = v; }},
        {"problem.M", [&](const std::string& v) { cfg.time_steps = to_size(v); }},
        {"problem.n", [&](const std::string& v) { cfg.n = to_size(v); }},
        {"problem.dim", [&](const std::string& v) { cfg.dim = to_size(v); }},
        {"problem.theta", [&](const std::string& v) { cfg.theta = to_double(v); }},
        {"problem.T", [&](const std::string& v) { cfg.t_final = to_double(v); }},
        {"problem.scheme", [&](const std::string& v) { cfg.scheme = parse_scheme(v); }},
        {"problem.alpha1", [&](const std::string& v) { cfg.alpha1 = to_double(v); }},
        {"problem.alpha2", [&](const std::string& v) { cfg.alpha2 = to_double(v); }},
        {"preconditioner.enabled", [&](const std::string& v) { cfg.precondition = to_bool(v); }},
        {"preconditioner.omega", [&](const std::string& v) { cfg.omega = to_double(v); }},
        {"preconditioner.workers", [&](const std::string& v) { cfg.workers = static_cast<int>(to_size(v)); }},
        {"gmres.restart", [&](const std::string& v) { cfg.gmres.restart = to_size(v); }},
        {"gmres.maxit", [&](const std::string& v) { cfg.gmres.maxit = to_size(v); }},
        {"gmres.rtol", [&](const std::string& v) { cfg.gmres.rtol = to_double(v); }},
        {"gmres.reorthogonalize", [&](const std::string& v) { cfg.gmres.reorthogonalize = to_bool(v); }},
        {"output.solution", [&](const std::string& v) { cfg.solution_path = v; }},
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ", key '" + key + "': " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

ProblemSpec example_spec(const std::string& example, std::size_t n, std::size_t m, double theta, double alpha1,
                         double alpha2, FractionalScheme scheme, std::size_t dim)
{
    ProblemSpec spec;
    if (example == "ex1_case1") {
        spec = ex1_case1(n, m, theta);
    } else if (example == "ex1_case2") {
        spec = ex1_case2(n, m, theta);
    } else if (example == "ex2") {
        spec = ex2(n, m, alpha1, alpha2, scheme, theta);
    } else if (example == "heat") {
        spec = heat_problem(n, m, theta);
    } else if (example == "riesz") {
        std::vector<double> alpha{alpha1};
        if (dim == 2) alpha.push_back(alpha2);
        else if (dim != 1) throw ConfigError("problem.dim must be 1 or 2");
        spec = riesz_problem(alpha, n, m, scheme, theta);
    } else {
        throw ConfigError("unknown example '" + example + "' (expected ex1_case1, ex1_case2, ex2, heat or riesz)");
    }
    return spec;
}

ProblemSpec make_spec(const RunConfig& cfg)
{
    ProblemSpec spec = example_spec(cfg.example, cfg.n, cfg.time_steps, cfg.theta, cfg.alpha1, cfg.alpha2,
                                    cfg.scheme, cfg.dim);
    spec.t_final = cfg.t_final;
    spec.validate();
    return spec;
}

} // namespace pint::app
