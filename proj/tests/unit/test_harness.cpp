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

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tqhe/error.hpp"
#include "tqhe/harness.hpp"

namespace {

using namespace tqhe;
using oracle::kPi;

Scenario single_qubit_chain() {
    Scenario s;
    s.seed = 1;
    s.n = 5;
    s.k = 3;
    s.chain = {1, 3, 4};
    s.qubits = {"q"};
    s.angles = {0.3};
    s.programs = {{1, parse_program("X q")}, {3, parse_program("T q")}, {4, parse_program("S q")}};
    s.sigma2 = kPi / 4;
    s.mask = {{"q", MaskBits{false, true}}};
    return s;
}

Scenario two_qubit_cnot() {
    Scenario s;
    s.seed = 2;
    s.n = 3;
    s.k = 2;
    s.chain = {2, 3};
    s.qubits = {"p", "q"};
    s.angles = {0.4, 1.1};
    s.programs = {{2, parse_program("X p; Y q; CNOT p q; H p; Z q")}, {3, parse_program("Y p; X q")}};
    return s;
}

Scenario detection_scenario(int decoys, double p) {
    Scenario s;
    s.n = 2;
    s.k = 2;
    s.chain = {1, 2};
    s.qubits = {"q"};
    s.angles = {0.5};
    s.programs = {{1, parse_program("H q")}, {2, parse_program("T q")}};
    s.decoys = decoys;
    s.eavesdropper = Eavesdropper{2, p};
    return s;
}

TEST(Harness, SingleQubitChainRecoversExactState) {
    Scenario s = single_qubit_chain();
    s.comparison = Comparison::kExact;
    const RunReport r = run(s);
    ASSERT_EQ(r.status, RunStatus::kPass);
    ASSERT_TRUE(r.final_state.has_value());
    const oracle::Vec expected{std::sin(0.3), oracle::c{-std::sqrt(0.5), std::sqrt(0.5)} * std::cos(0.3)};
    EXPECT_LT(oracle::max_diff(amplitudes(*r.final_state, r.final_state->qubit_ids()), expected), 1e-9);
    EXPECT_NEAR(*r.fidelity, 1.0, 1e-12);
    ASSERT_EQ(r.qprime.size(), 1u);
    const double r2 = std::sqrt(2.0);
    const oracle::c i = oracle::kI;
    const oracle::Mat printed{{(2 - r2) / 4 + i * r2 / 4.0, -(2 + r2) / 4 - i * r2 / 4.0},
                              {-(2 + r2) / 4 + i * r2 / 4.0, (-2 + r2) / 4 + i * r2 / 4.0}};
    EXPECT_LT(oracle::max_diff(r.qprime[0], printed), 1e-9);
}

TEST(Harness, OneDecoyCheckPerLeg) {
    const RunReport r = run(single_qubit_chain());
    ASSERT_EQ(r.decoys.size(), 4u);
    for (std::size_t h = 0; h < 4; ++h) {
        EXPECT_EQ(r.decoys[h].hop, static_cast<int>(h) + 1);
        EXPECT_EQ(r.decoys[h].attempt, 1);
        EXPECT_EQ(r.decoys[h].errors, 0);
        EXPECT_TRUE(r.decoys[h].accepted);
        // One payload qubit at ratio 0.2 needs one decoy.
        EXPECT_EQ(r.decoys[h].decoys, 1);
    }
}

TEST(Harness, CnotScenarioMatchesOracle) {
    const RunReport r = run(two_qubit_cnot());
    EXPECT_EQ(r.status, RunStatus::kPass);
    EXPECT_TRUE(r.matches_oracle);
    ASSERT_TRUE(r.final_dec.has_value());
    EXPECT_EQ(r.final_dec->components.size(), 1u);
}

TEST(Harness, ProgramlessServersStillDecrypt) {
    Scenario s;
    s.n = 4;
    s.k = 3;
    s.chain = {4, 2, 1};
    s.qubits = {"a", "b"};
    s.angles = {1.0, 2.0};
    s.comparison = Comparison::kExact;
    const RunReport r = run(s);
    EXPECT_EQ(r.status, RunStatus::kPass);
    EXPECT_TRUE(equal_exact(*r.final_state, prepare(plaintext_of(s)), 1e-9));
}

TEST(Harness, DeterministicAcrossRunsAndSchedules) {
    Scenario s = two_qubit_cnot();
    s.decoys = 5;
    const std::string a = to_json(run(s)).dump();
    EXPECT_EQ(a, to_json(run(s)).dump());
    s.schedule = Schedule::kConcurrent;
    EXPECT_EQ(a, to_json(run(s)).dump());

    s.seed = 3;
    EXPECT_NE(a, to_json(run(s)).dump());
}

TEST(Harness, ConcurrentScheduleWithEavesdropperMatchesSequential) {
    Scenario s = detection_scenario(6, 0.5);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        s.seed = seed;
        s.schedule = Schedule::kSequential;
        const std::string a = to_json(run(s)).dump();
        s.schedule = Schedule::kConcurrent;
        ASSERT_EQ(a, to_json(run(s)).dump()) << seed;
    }
}

TEST(Harness, ReportJsonHasNoTiming) {
    const json j = to_json(run(single_qubit_chain()));
    EXPECT_EQ(j.at("status"), "pass");
    EXPECT_FALSE(j.contains("elapsed_ms"));
    EXPECT_TRUE(j.contains("qprime"));
}

TEST(Harness, FullInterceptionExhaustsRetries) {
    Scenario s = single_qubit_chain();
    s.decoys = 20;
    s.eavesdropper = Eavesdropper{2, 1.0};
    const RunReport r = run(s);
    ASSERT_EQ(r.status, RunStatus::kChannelCompromised);
    EXPECT_EQ(r.compromised_hop, 2);
    EXPECT_FALSE(r.final_state.has_value());
    EXPECT_FALSE(r.fidelity.has_value());
    EXPECT_TRUE(r.qprime.empty());
    int hop2 = 0;
    for (const DecoyAttempt &d : r.decoys) {
        EXPECT_LE(d.hop, 2);
        if (d.hop == 2) {
            EXPECT_FALSE(d.accepted);
            EXPECT_EQ(d.attempt, ++hop2);
        }
    }
    EXPECT_EQ(hop2, 4);
}

TEST(Harness, InterceptionOnReturnLegIsCaught) {
    Scenario s = single_qubit_chain();
    s.decoys = 20;
    s.eavesdropper = Eavesdropper{4, 1.0};
    const RunReport r = run(s);
    EXPECT_EQ(r.status, RunStatus::kChannelCompromised);
    EXPECT_EQ(r.compromised_hop, 4);
}

TEST(Harness, RetryAfterDetectionStillDecrypts) {
    Scenario s = two_qubit_cnot();
    s.decoys = 10;
    s.eavesdropper = Eavesdropper{1, 0.1};
    int recovered = 0;
    for (std::uint64_t seed = 1; seed <= 60 && recovered < 3; ++seed) {
        s.seed = seed;
        const RunReport r = run(s);
        bool retried = false;
        for (const DecoyAttempt &d : r.decoys) {
            retried |= d.hop == 1 && d.attempt > 1 && d.accepted;
        }
        if (retried && r.status == RunStatus::kPass) {
            ++recovered;
            EXPECT_TRUE(r.matches_oracle);
        }
    }
    EXPECT_EQ(recovered, 3);
}

TEST(Harness, ZeroThresholdAcceptsCleanChannel) {
    Scenario s = two_qubit_cnot();
    s.decoys = 30;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        s.seed = seed;
        const RunReport r = run(s);
        ASSERT_EQ(r.status, RunStatus::kPass);
        for (const DecoyAttempt &d : r.decoys) {
            ASSERT_EQ(d.errors, 0);
        }
    }
}

TEST(Harness, DetectionEdgeCases) {
    EXPECT_EQ(eavesdrop_detection(detection_scenario(0, 1.0), 200), 0.0);
    EXPECT_EQ(eavesdrop_detection(detection_scenario(20, 0.0), 200), 0.0);
    EXPECT_NEAR(expected_detection(20, 1.0), 1 - std::pow(0.75, 20), 1e-15);
    EXPECT_EQ(expected_detection(0, 1.0), 0.0);
    Scenario none = detection_scenario(5, 1.0);
    none.eavesdropper.reset();
    EXPECT_THROW(eavesdrop_detection(none, 10), InvalidArgument);
}

TEST(Harness, DetectionRateTracksTheory) {
    const double measured = eavesdrop_detection(detection_scenario(5, 1.0), 2000);
    EXPECT_NEAR(measured, expected_detection(5, 1.0), 0.04);
    const double partial = eavesdrop_detection(detection_scenario(8, 0.5), 2000);
    EXPECT_NEAR(partial, expected_detection(8, 0.5), 0.04);
}

TEST(Harness, RhoEncSingleSampleAtZeroIsPureState) {
    const Matrix rho = security_rho_enc(1, 0.6, [] { return 0.0; });
    const oracle::Vec v = oracle::qubit(0.6);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            EXPECT_NEAR(std::abs(rho(r, c) - v[r] * std::conj(v[c])), 0.0, 1e-15);
        }
    }
    Rng rng(1);
    EXPECT_THROW(security_rho_enc(0, 0.6, rng), InvalidArgument);
}

TEST(Harness, RhoEncConverges) {
    double small = 0.0;
    double large = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng a(seed);
        small += deviation_from_mixed(security_rho_enc(10000, 0.7, a));
        Rng b(seed + 1000);
        large += deviation_from_mixed(security_rho_enc(40000, 0.7, b));
    }
    EXPECT_LT(large / 20, 0.01);
    EXPECT_LE(large, 0.7 * small);
}

TEST(Harness, RhoEncIndependentOfInput) {
    for (double alpha : {0.0, 0.9, 2.5}) {
        Rng rng(7);
        EXPECT_LT(deviation_from_mixed(security_rho_enc(100000, alpha, rng)), 0.01) << alpha;
    }
}

TEST(Harness, BlindedAverageIsMaximallyMixed) {
    Rng rng(8);
    const double s2 = 1.9;
    for (int trial = 0; trial < 10; ++trial) {
        const double phi = kPi / 4 * static_cast<double>(rng.index(8));
        const Matrix one = e_phase(phi) * u_rot(-s2) * e_phase(-phi);
        EXPECT_LT(max_abs_diff(blinding_average(one, s2), Matrix::identity(2)), 1e-9);
        const Matrix two = tensor(one, hadamard() * u_rot(-s2) * hadamard());
        EXPECT_LT(deviation_from_mixed(security_rho_q([&](double) { return two; }, s2)), 1e-9);
    }
    EXPECT_THROW(blinding_average(Matrix(3, 3), s2), InvalidArgument);
}

TEST(Harness, OracleAppliesProgramsInChainOrder) {
    const Scenario s = two_qubit_cnot();
    oracle::Vec ref = oracle::kron(oracle::qubit(0.4), oracle::qubit(1.1));
    ref = oracle::apply(oracle::kron(oracle::X(), oracle::Y()), ref);
    ref = oracle::apply(oracle::CNOT(), ref);
    ref = oracle::apply(oracle::kron(oracle::H(), oracle::Z()), ref);
    ref = oracle::apply(oracle::kron(oracle::Y(), oracle::X()), ref);
    const std::vector<QubitLabel> order{"p", "q"};
    EXPECT_LT(oracle::max_diff(amplitudes(tqhe::oracle(s), order), ref), 1e-12);
}

TEST(Harness, ValidateRejectsBadScenarios) {
    const Scenario good = two_qubit_cnot();
    EXPECT_NO_THROW(validate(good));
    const std::vector<std::function<void(Scenario &)>> breakers{
        [](Scenario &s) { s.n = 0; },
        [](Scenario &s) { s.n = 9; },
        [](Scenario &s) { s.k = 4; },
        [](Scenario &s) { s.chain = {2}; },
        [](Scenario &s) { s.chain = {2, 2}; },
        [](Scenario &s) { s.chain = {2, 4}; },
        [](Scenario &s) { s.qubits = {"p", "p"}; },
        [](Scenario &s) { s.qubits = {"p", "~q"}; },
        [](Scenario &s) { s.angles = {0.1}; },
        [](Scenario &s) { s.angles[0] = std::nan(""); },
        [](Scenario &s) { s.programs[1] = parse_program("X p"); },
        [](Scenario &s) { s.programs[3] = parse_program("X r"); },
        [](Scenario &s) { s.decoy_ratio = 1.0; },
        [](Scenario &s) { s.decoys = -1; },
        [](Scenario &s) { s.decoy_error_threshold = 1.5; },
        [](Scenario &s) { s.max_retries = -1; },
        [](Scenario &s) { s.eavesdropper = Eavesdropper{4, 1.0}; },
        [](Scenario &s) { s.eavesdropper = Eavesdropper{1, 1.5}; },
        [](Scenario &s) { s.tolerance = 0.0; },
        [](Scenario &s) { s.mask["r"] = MaskBits{}; },
    };
    for (std::size_t i = 0; i < breakers.size(); ++i) {
        Scenario s = good;
        breakers[i](s);
        EXPECT_THROW(validate(s), InvalidArgument) << "case " << i;
        EXPECT_THROW(run(s), InvalidArgument) << "case " << i;
    }
}

TEST(Harness, RandomScenariosPass) {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Scenario s = random_scenario(rng);
        ASSERT_NO_THROW(validate(s));
        const RunReport r = run(s);
        ASSERT_EQ(r.status, RunStatus::kPass) << format_report(r);
    }
}

TEST(Harness, IntegerEligibleScenariosStayInteger) {
    Rng rng(12);
    RandomLimits limits;
    limits.integer_eligible = true;
    for (int i = 0; i < 100; ++i) {
        const Scenario s = random_scenario(rng, limits);
        const RunReport r = run(s);
        ASSERT_EQ(r.status, RunStatus::kPass);
        ASSERT_TRUE(r.final_dec->all_integer());
    }
}

}  // namespace
