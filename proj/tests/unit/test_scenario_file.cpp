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

#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "tqhe/error.hpp"
#include "tqhe/harness.hpp"
#include "tqhe/scenario_file.hpp"

namespace {

using namespace tqhe;
constexpr double kPi = std::numbers::pi;

const std::string kScenarioDir = TQHE_SCENARIO_DIR;

const char *kMinimal = "n = 2\nk = 1\nchain = 2\nqubits = q\nangles = 0.5\n";

int parse_error_line(const std::string &text) {
    try {
        parse_scenario(text);
    } catch (const ParseError &e) {
        return e.line();
    }
    return -1;
}

TEST(ScenarioFile, Angles) {
    EXPECT_DOUBLE_EQ(parse_angle("pi"), kPi);
    EXPECT_DOUBLE_EQ(parse_angle("-pi/4"), -kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("3pi/2"), 3 * kPi / 2);
    EXPECT_DOUBLE_EQ(parse_angle("3*pi/4"), 3 * kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("0.5*pi"), kPi / 2);
    EXPECT_DOUBLE_EQ(parse_angle("1.25"), 1.25);
    EXPECT_DOUBLE_EQ(parse_angle("-2e-3"), -2e-3);
    EXPECT_THROW(parse_angle(""), InvalidArgument);
    EXPECT_THROW(parse_angle("tau"), InvalidArgument);
    EXPECT_THROW(parse_angle("pi/0"), InvalidArgument);
    EXPECT_THROW(parse_angle("1.5x"), InvalidArgument);
}

TEST(ScenarioFile, MinimalDefaults) {
    const Scenario s = parse_scenario(kMinimal);
    EXPECT_EQ(s.seed, 1u);
    EXPECT_EQ(s.chain, std::vector<int>{2});
    EXPECT_TRUE(s.programs.empty());
    EXPECT_FALSE(s.sigma2.has_value());
    EXPECT_FALSE(s.eavesdropper.has_value());
    EXPECT_EQ(s.comparison, Comparison::kGlobalPhase);
    EXPECT_EQ(s.schedule, Schedule::kSequential);
}

TEST(ScenarioFile, CommentsAndBlankLines) {
    const Scenario s = parse_scenario(std::string("# header\n\n") + kMinimal + "   # trailing\n");
    EXPECT_EQ(s.qubits, std::vector<QubitLabel>{"q"});
}

TEST(ScenarioFile, AllKeys) {
    const Scenario s = parse_scenario(
        "seed = 9\nn = 4\nk = 2\nchain = 3 1\nqubits = a b\nangles = pi/8 1.5\n"
        "program.3 = H a; CNOT a b\nprogram.1 = T b\nsigma2 = pi/3\nmask.a = 1 0\n"
        "decoy_ratio = 0.25\ndecoys = 7\ndecoy_error_threshold = 0.1\nmax_retries = 2\n"
        "eavesdropper = intercept_resend 3 0.5\ncomparison = exact\ntolerance = 1e-8\n"
        "force_matrix_form = true\nschedule = concurrent\n");
    EXPECT_EQ(s.seed, 9u);
    EXPECT_EQ(s.chain, (std::vector<int>{3, 1}));
    EXPECT_EQ(s.programs.at(3), parse_program("H a; CNOT a b"));
    EXPECT_DOUBLE_EQ(*s.sigma2, kPi / 3);
    EXPECT_EQ(s.mask.at("a"), (MaskBits{true, false}));
    EXPECT_EQ(s.decoys, 7);
    EXPECT_EQ(s.max_retries, 2);
    EXPECT_EQ(s.eavesdropper, (Eavesdropper{3, 0.5}));
    EXPECT_EQ(s.comparison, Comparison::kExact);
    EXPECT_TRUE(s.force_matrix_form);
    EXPECT_EQ(s.schedule, Schedule::kConcurrent);
}

TEST(ScenarioFile, ErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "colour = blue\n"), 6);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "\nn = 3\n"), 7);
    EXPECT_EQ(parse_error_line("n = 2\nk 1\n"), 2);
    EXPECT_EQ(parse_error_line("n = two\n"), 1);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "program.2 = X r\n"), 6);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "mask.r = 0 1\n"), 6);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "mask.q = 0 2\n"), 6);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "eavesdropper = sniff\n"), 6);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "program.2 = Q q\n"), 6);
}

TEST(ScenarioFile, WholeDocumentErrorsHaveNoLine) {
    EXPECT_EQ(parse_error_line("n = 2\nk = 1\n"), 0);
    EXPECT_EQ(parse_error_line("n = 2\nk = 3\nchain = 1 2 3\nqubits = q\nangles = 1\n"), 0);
    EXPECT_EQ(parse_error_line(std::string(kMinimal) + "program.1 = X q\n"), 0);
    EXPECT_THROW(load_scenario(kScenarioDir + "/does_not_exist.scn"), ParseError);
}

TEST(ScenarioFile, RoundTrip) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Scenario s = random_scenario(rng);
        if (i % 3 == 0) {
            s.eavesdropper = Eavesdropper{1, 0.37};
            s.sigma2 = 0.1 + i;
            s.mask[s.qubits[0]] = MaskBits{true, true};
            s.decoys = i;
            s.schedule = Schedule::kConcurrent;
        }
        const std::string text = format_scenario(s);
        ASSERT_EQ(parse_scenario(text), s) << text;
    }
}

TEST(ScenarioFile, BundledScenarios) {
    for (const char *name : {"example1", "example2", "example3"}) {
        const Scenario s = load_scenario(kScenarioDir + "/" + name + ".scn");
        const RunReport r = run(s);
        EXPECT_EQ(r.status, RunStatus::kPass) << name;
    }
    const Scenario e1 = load_scenario(kScenarioDir + "/example1.scn");
    EXPECT_EQ(e1.chain, (std::vector<int>{1, 3, 4}));
    EXPECT_DOUBLE_EQ(*e1.sigma2, kPi / 4);

    const RunReport eve = run(load_scenario(kScenarioDir + "/eavesdrop.scn"));
    EXPECT_EQ(eve.status, RunStatus::kChannelCompromised);
}

}  // namespace
