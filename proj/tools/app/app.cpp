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

#include "app.hpp"

#include "pint/preconditioner.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pint::app {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << text;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) {
        out.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::optional<double> parse_opt(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    return std::stod(s);
}

} // namespace

SolveOutcome solve_spec(const ProblemSpec& spec, bool precondition, std::optional<double> omega,
                        const GmresConfig& gmres, int workers)
{
    const AllAtOnceOperator a = build_all_at_once(spec, workers);
    const Vector f = assemble_rhs(spec, a.spatial());
    const LinearMap apply_a = [&](std::span<const double> x, std::span<double> y) { a.apply(x, y); };

    SolveOutcome out;
    GmresResult res;
    if (precondition) {
        const PintPreconditioner p = build_preconditioner(spec, omega, workers);
        out.omega = p.omega();
        const LinearMap apply_p = [&](std::span<const double> x, std::span<double> y) { p.apply_pinv(x, y); };
        res = gmres_solve(apply_a, apply_p, f, {}, gmres);
    } else {
        res = gmres_solve(apply_a, LinearMap{}, f, {}, gmres);
    }
    out.solution = std::move(res.x);
    out.report = std::move(res.report);
    if (spec.exact_u) {
        const Vector u = sample_exact_solution(spec);
        double err = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            err = std::max(err, std::abs(u[i] - out.solution[i]));
        }
        out.report.error_inf = err;
    }
    return out;
}

int run_solve(const std::string& config_path, std::optional<double> omega_override, const std::string& out_json)
{
    RunConfig cfg;
    ProblemSpec spec;
    try {
        cfg = load_config(config_path);
        if (omega_override) cfg.omega = omega_override;
        spec = make_spec(cfg);
    } catch (const Error& e) {
        std::cerr << "pint solve: " << e.what() << "\n";
        return kUsage;
    }

    SolveOutcome res;
    try {
        res = solve_spec(spec, cfg.precondition, cfg.omega, cfg.gmres, cfg.workers);
    } catch (const InvalidSpecError& e) {
        std::cerr << "pint solve: " << e.what() << "\n";
        return kUsage;
    } catch (const NumericalError& e) {
        std::cerr << "pint solve: " << e.what() << "\n";
        return kNotConverged;
    }

    json j;
    j["problem"] = spec.name;
    j["kind"] = to_string(spec.kind);
    if (spec.kind == OperatorKind::riesz_fractional) {
        j["scheme"] = to_string(spec.scheme);
        j["alpha"] = spec.alpha;
    }
    j["theta"] = spec.theta;
    j["T"] = spec.t_final;
    j["M"] = spec.time_steps;
    j["n"] = spec.n;
    j["preconditioned"] = cfg.precondition;
    j["omega"] = res.omega ? json(*res.omega) : json(nullptr);
    j["workers"] = cfg.workers;
    j["gmres"] = {{"restart", cfg.gmres.restart}, {"maxit", cfg.gmres.maxit}, {"rtol", cfg.gmres.rtol}};
    j["stopping_rule"] = cfg.precondition ? "preconditioned_relative_residual" : "relative_residual";
    j["iters"] = res.report.iters_total;
    j["converged"] = res.report.converged;
    j["true_residual_final"] = res.report.true_residual_final;
    j["error_inf"] = res.report.error_inf ? json(*res.report.error_inf) : json(nullptr);
    j["wall_time_s"] = res.report.wall_time_s;
    j["residual_history"] = res.report.preconditioned_residual_history;

    try {
        write_text(out_json, j.dump(2) + "\n");
        if (!cfg.solution_path.empty()) {
            std::ofstream sol(cfg.solution_path);
            sol << "# space-major: entry s*M + m is node s at time level m+1\n";
            for (double v : res.solution) sol << num(v) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "pint solve: " << e.what() << "\n";
        return kUsage;
    }
    return res.report.converged ? kOk : kNotConverged;
}

std::vector<ReportRow> run_bench_rows(const BenchCase& bench)
{
    const bool fractional = bench.example == "ex2" || bench.example == "riesz";
    std::vector<std::pair<double, double>> alphas = bench.alphas;
    if (!fractional || alphas.empty()) {
        alphas = {{std::nan(""), std::nan("")}};
    }
    std::vector<ReportRow> rows;
    for (const auto& [a1, a2] : alphas) {
        for (std::size_t n : bench.ns) {
            for (std::size_t m : bench.ms) {
                for (const auto& method : bench.methods) {
                    ReportRow row;
                    row.case_id = bench.example;
                    row.method = method;
                    row.theta = bench.theta;
                    row.m = m;
                    row.n = n;
                    if (fractional) {
                        row.alpha1 = a1;
                        row.alpha2 = a2;
                    }
                    try {
                        const ProblemSpec spec =
                            example_spec(bench.example, n, m, bench.theta, a1, a2, bench.scheme);
                        const bool pre = method == "pgmres";
                        if (!pre && method != "gmres") {
                            throw ConfigError("unknown method '" + method + "'");
                        }
                        const SolveOutcome res = solve_spec(spec, pre, bench.omega, bench.gmres, bench.workers);
                        row.omega = res.omega;
                        row.error_inf = res.report.error_inf;
                        row.iters = res.report.iters_total;
                        row.wall_time_s = res.report.wall_time_s;
                        row.converged = res.report.converged;
                    } catch (const Error& e) {
                        std::cerr << "pint bench: row " << bench.example << " M=" << m << " n=" << n << " "
                                  << method << ": " << e.what() << "\n";
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

std::string format_csv(const std::vector<ReportRow>& rows)
{
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows) {
        out += r.case_id + "," + r.method + "," + num(r.theta) + "," + opt_num(r.omega) + "," + std::to_string(r.m) +
               "," + std::to_string(r.n) + "," + opt_num(r.alpha1) + "," + opt_num(r.alpha2) + "," +
               opt_num(r.error_inf) + "," + std::to_string(r.iters) + "," + num(r.wall_time_s) + "," +
               (r.converged ? "true" : "false") + "\n";
    }
    return out;
}

std::vector<ReportRow> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("CSV header does not match");
    }
    std::vector<ReportRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 12) {
            throw ConfigError("CSV line " + std::to_string(lineno) + ": expected 12 fields");
        }
        ReportRow r;
        r.case_id = f[0];
        r.method = f[1];
        r.theta = std::stod(f[2]);
        r.omega = parse_opt(f[3]);
        r.m = std::stoul(f[4]);
        r.n = std::stoul(f[5]);
        r.alpha1 = parse_opt(f[6]);
        r.alpha2 = parse_opt(f[7]);
        r.error_inf = parse_opt(f[8]);
        r.iters = std::stoul(f[9]);
        r.wall_time_s = std::stod(f[10]);
        r.converged = f[11] == "true";
        rows.push_back(r);
    }
    return rows;
}

int run_bench(const BenchCase& bench, const std::string& out_csv)
{
    const std::vector<ReportRow> rows = run_bench_rows(bench);
    try {
        write_text(out_csv, format_csv(rows));
    } catch (const Error& e) {
        std::cerr << "pint bench: " << e.what() << "\n";
        return kUsage;
    }
    for (const auto& r : rows) {
        if (!r.converged) return kNotConverged;
    }
    return kOk;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_json)
{
    std::vector<TheoremReport> reports;
    try {
        reports = run_verification_suite(suite, seed);
    } catch (const InvalidSpecError& e) {
        std::cerr << "pint verify: " << e.what() << "\n";
        return kUsage;
    }
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    bool all = true;
    json checks = json::array();
    for (const auto& r : reports) {
        json q = json::object();
        for (const auto& [k, v] : r.quantities) q[k] = v;
        checks.push_back({{"name", r.name}, {"pass", r.pass}, {"tolerance", r.tolerance}, {"quantities", q},
                          {"detail", r.detail}});
        all = all && r.pass;
        if (!r.pass) {
            std::cerr << "FAIL " << r.name << ": " << r.detail << "\n";
        }
    }
    j["checks"] = checks;
    j["pass"] = all;
    try {
        write_text(out_json, j.dump(2) + "\n");
    } catch (const Error& e) {
        std::cerr << "pint verify: " << e.what() << "\n";
        return kUsage;
    }
    return all ? kOk : kVerifyFailed;
}

} // namespace pint::app
