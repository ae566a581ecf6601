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

#include "app/app.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    using namespace pint::app;

    CLI::App cli{"pint: parallel-in-time preconditioned GMRES for theta-method all-at-once systems"};
    cli.require_subcommand(1);

    std::string config, solve_out;
    std::optional<double> omega;
    auto* solve = cli.add_subcommand("solve", "solve one configured instance");
    solve->add_option("--config", config, "key=value config file")->required()->check(CLI::ExistingFile);
    solve->add_option("--omega", omega, "override omega");
    solve->add_option("--out", solve_out, "JSON report path (stdout if omitted)");

    BenchCase bench;
    std::string alphas, method = "pgmres", scheme = "hoc4", bench_out;
    auto* bsub = cli.add_subcommand("bench", "run a grid of (M, n, method) solves and write CSV");
    bsub->add_option("--example", bench.example, "ex1_case1, ex1_case2, ex2, heat or riesz")
        ->required()
        ->check(CLI::IsMember({"ex1_case1", "ex1_case2", "ex2", "heat", "riesz"}));
    bsub->add_option("--alphas", alphas, "fractional orders a1,a2 (ex2); repeat pairs with ';'");
    bsub->add_option("--M", bench.ms, "time step counts, comma separated")->required()->delimiter(',');
    bsub->add_option("--n", bench.ns, "interior points per axis, comma separated")->required()->delimiter(',');
    bsub->add_option("--method", method, "gmres, pgmres or both")->check(CLI::IsMember({"gmres", "pgmres", "both"}));
    bsub->add_option("--theta", bench.theta, "theta in [1/2, 1]");
    bsub->add_option("--scheme", scheme, "cd2 or hoc4")->check(CLI::IsMember({"cd2", "hoc4"}));
    bsub->add_option("--omega", bench.omega, "override omega");
    bsub->add_option("--workers", bench.workers, "OpenMP threads for operator and preconditioner");
    bsub->add_option("--out", bench_out, "CSV path (stdout if omitted)");

    std::string suite, verify_out;
    std::uint64_t seed = 42;
    auto* verify = cli.add_subcommand("verify", "run the dense-oracle verification battery");
    verify->add_option("--suite", suite, "kernels, lemmas, theorems or all")->required();
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--out", verify_out, "JSON report path (stdout if omitted)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*solve) {
        return run_solve(config, omega, solve_out);
    }
    if (*bsub) {
        try {
            bench.scheme = parse_scheme(scheme);
            bench.methods = method == "both" ? std::vector<std::string>{"gmres", "pgmres"}
                                             : std::vector<std::string>{method};
            if (!alphas.empty()) {
                bench.alphas.clear();
                std::size_t pos = 0;
                while (pos <= alphas.size()) {
                    const auto end = std::min(alphas.find(';', pos), alphas.size());
                    const std::string pair = alphas.substr(pos, end - pos);
                    const auto comma = pair.find(',');
                    if (comma == std::string::npos) {
                        throw ConfigError("--alphas expects a1,a2 pairs, got '" + pair + "'");
                    }
                    bench.alphas.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
                    pos = end + 1;
                }
            }
        } catch (const std::exception& e) {
            std::cerr << "pint bench: " << e.what() << "\n";
            return kUsage;
        }
        return run_bench(bench, bench_out);
    }
    return run_verify(suite, seed, verify_out);
}
