// Copyright 2026 The tqhe Authors
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

// tqhe: run scenario files, randomized sweeps and the security statistics.
//
// Exit codes for `run`: 0 pass, 1 fidelity failure, 2 channel compromised,
// 3 unreadable or malformed scenario. Usage errors exit 64.

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>

#include "tqhe/error.hpp"
#include "tqhe/harness.hpp"
#include "tqhe/scenario_file.hpp"

namespace {

constexpr int kExitParse = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct RunArgs {
    std::string path;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::string comparison;
    std::string schedule;
    bool json = false;
};

int cmd_run(const RunArgs &a) {
    tqhe::Scenario s;
    try {
        s = tqhe::load_scenario(a.path);
        if (a.seed) {
            s.seed = *a.seed;
        }
        if (a.tolerance) {
            s.tolerance = *a.tolerance;
        }
        if (a.comparison == "exact") {
            s.comparison = tqhe::Comparison::kExact;
        } else if (a.comparison == "phase") {
            s.comparison = tqhe::Comparison::kGlobalPhase;
        }
        if (a.schedule == "concurrent") {
            s.schedule = tqhe::Schedule::kConcurrent;
        } else if (a.schedule == "sequential") {
            s.schedule = tqhe::Schedule::kSequential;
        }
        tqhe::validate(s);
    } catch (const std::exception &e) {
        std::cerr << a.path << ": " << e.what() << "\n";
        return kExitParse;
    }

    const tqhe::RunReport r = tqhe::run(s);
    if (a.json) {
        std::cout << tqhe::to_json(r).dump(2) << "\n";
    } else {
        std::cout << tqhe::format_report(r);
    }
    switch (r.status) {
    case tqhe::RunStatus::kPass:
        return 0;
    case tqhe::RunStatus::kFidelityFailure:
        return 1;
    case tqhe::RunStatus::kChannelCompromised:
        return 2;
    }
    return kExitInternal;
}

int cmd_sweep(int count, std::uint64_t seed, bool json) {
    if (count < 1) {
        std::cerr << "sweep: --count must be at least 1\n";
        return kExitUsage;
    }
    tqhe::Rng rng(seed);
    int passed = 0;
    tqhe::json failures = tqhe::json::array();
    for (int i = 0; i < count; ++i) {
        const tqhe::Scenario s = tqhe::random_scenario(rng);
        const tqhe::RunReport r = tqhe::run(s);
        if (r.status == tqhe::RunStatus::kPass) {
            ++passed;
        } else {
            failures.push_back(tqhe::json{{"index", i}, {"seed", s.seed}, {"status", tqhe::status_name(r.status)}});
            if (!json) {
                std::cout << "scenario " << i << " (seed " << s.seed << "): " << tqhe::status_name(r.status) << "\n";
            }
        }
    }
    const double rate = 100.0 * passed / count;
    if (json) {
        std::cout << tqhe::json{{"count", count}, {"seed", seed}, {"passed", passed}, {"failures", failures}}.dump(2)
                  << "\n";
    } else {
        std::cout << "sweep seed " << seed << ": " << passed << "/" << count << " passed (" << std::fixed
                  << std::setprecision(1) << rate << "%)\n";
    }
    return passed == count ? 0 : 1;
}

struct SecurityArgs {
    std::size_t samples = 100000;
    std::size_t trials = 10000;
    int decoys = 20;
    std::uint64_t seed = 1;
    double alpha = 0.7;
};

int cmd_security(const SecurityArgs &a) {
    if (a.samples == 0 || a.decoys < 0) {
        std::cerr << "security: --samples must be at least 1 and --decoys non-negative\n";
        return kExitUsage;
    }
    if (a.samples < 1000) {
        std::cerr << "warning: " << a.samples << " samples is too few for a meaningful rho_enc estimate\n";
    }
    tqhe::Rng rng(a.seed, tqhe::stream::kScenario);
    const tqhe::Matrix rho_enc = tqhe::security_rho_enc(a.samples, a.alpha, rng);
    std::cout << std::scientific << std::setprecision(3);
    std::cout << "rho_enc (" << a.samples << " samples, alpha " << a.alpha
              << "): max deviation from I/2 = " << tqhe::deviation_from_mixed(rho_enc) << "\n";

    // Q over the blinding masks for random gate words on one and two qubits.
    double worst_q = 0.0;
    for (int i = 0; i < 50; ++i) {
        tqhe::RandomLimits limits;
        limits.max_n = 1;
        limits.max_qubits = 1 + i % 2;
        tqhe::Scenario s = tqhe::random_scenario(rng, limits);
        tqhe::GateProgram prog = s.programs.empty() ? tqhe::GateProgram{} : s.programs.begin()->second;
        const tqhe::Matrix g = tqhe::composite_matrix(prog, s.qubits);
        const auto factory = [&](double gamma) {
            std::vector<tqhe::Matrix> u(s.qubits.size(), tqhe::u_rot(gamma));
            return g * tqhe::tensor_all(u) * tqhe::dagger(g);
        };
        const double sigma2 = rng.uniform_open(0.0, 2.0 * std::numbers::pi);
        worst_q = std::max(worst_q, tqhe::deviation_from_mixed(tqhe::security_rho_q(factory, sigma2)));
    }
    std::cout << "rho_Q (50 random rhs): max deviation from I/2^j = " << worst_q << "\n";

    tqhe::Scenario s;
    s.seed = a.seed;
    s.n = 2;
    s.k = 2;
    s.chain = {1, 2};
    s.qubits = {"q0"};
    s.angles = {a.alpha};
    s.programs[1] = tqhe::parse_program("H q0");
    s.programs[2] = tqhe::parse_program("T q0");
    std::cout << std::fixed << std::setprecision(4);
    std::cout << "intercept-resend on hop 2, " << a.trials << " trials per point:\n";
    std::cout << "  decoys  detected  expected\n";
    for (int d : {0, 1, 2, 5, 10, a.decoys}) {
        s.decoys = d;
        s.eavesdropper = tqhe::Eavesdropper{2, 1.0};
        const double rate = tqhe::eavesdrop_detection(s, a.trials);
        std::cout << "  " << std::setw(6) << d << "  " << std::setw(8) << rate << "  " << std::setw(8)
                  << tqhe::expected_detection(d, 1.0) << "\n";
        if (d == a.decoys) {
            break;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Threshold quantum homomorphic encryption simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("path", run_args.path, "Scenario file")->required();
    run->add_option("--seed", run_args.seed, "Override the scenario seed");
    run->add_option("--tolerance", run_args.tolerance, "Override the comparison tolerance");
    run->add_option("--comparison", run_args.comparison, "phase or exact")
        ->check(CLI::IsMember({"phase", "exact"}));
    run->add_option("--schedule", run_args.schedule, "sequential or concurrent")
        ->check(CLI::IsMember({"sequential", "concurrent"}));
    run->add_flag("--json", run_args.json, "Machine-readable report");

    int sweep_count = 0;
    std::uint64_t sweep_seed = 1;
    bool sweep_json = false;
    auto *sweep = app.add_subcommand("sweep", "Run randomized scenarios against the oracle");
    sweep->add_option("--count", sweep_count, "Number of scenarios")->required();
    sweep->add_option("--seed", sweep_seed, "Generator seed");
    sweep->add_flag("--json", sweep_json, "Machine-readable summary");

    SecurityArgs sec;
    auto *security = app.add_subcommand("security", "Maximally-mixed checks and eavesdropper detection");
    security->add_option("--samples", sec.samples, "Monte-Carlo samples for rho_enc");
    security->add_option("--trials", sec.trials, "Runs per detection point");
    security->add_option("--decoys", sec.decoys, "Largest decoy count on the detection curve");
    security->add_option("--seed", sec.seed, "Seed");
    security->add_option("--alpha", sec.alpha, "Plaintext angle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) {
            return cmd_run(run_args);
        }
        if (*sweep) {
            return cmd_sweep(sweep_count, sweep_seed, sweep_json);
        }
        return cmd_security(sec);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
