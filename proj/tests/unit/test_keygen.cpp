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
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "tqhe/error.hpp"
#include "tqhe/keygen.hpp"

namespace {

using namespace tqhe;

TEST(Keygen, SubsetEnumeration) {
    EXPECT_EQ(subsets(3, 2), (std::vector<ServerSubset>{{1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(choose(5, 3), 10u);
    EXPECT_EQ(choose(8, 4), 70u);
    EXPECT_EQ(subsets(4, 4).size(), 1u);
}

TEST(Keygen, SingleServerForcesInverse) {
    Rng rng(1);
    const KeyMaterial km = generate(1, 1, rng);
    EXPECT_NEAR(km.solution({1}, 1), 1.0 / km.b[0], 1e-12);
    const KeyShare share = share_for(km, 1);
    ASSERT_EQ(share.entries.size(), 1u);
    EXPECT_NEAR(share.entries.begin()->second, km.sigma1, 1e-12);
    EXPECT_NEAR(theta_for(share, {1}), km.sigma1, 1e-12);
}

TEST(Keygen, ThresholdEquationHolds) {
    Rng rng(2);
    const KeyMaterial km = generate(5, 3, rng);
    const ServerSubset s{1, 3, 4};
    const double sum = km.b[0] * km.solution(s, 1) + km.b[2] * km.solution(s, 3) + km.b[3] * km.solution(s, 4);
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(km.solutions.size(), choose(5, 3));
}

TEST(Keygen, SamplingRanges) {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const KeyMaterial km = generate(6, 3, rng);
        for (double b : km.b) {
            EXPECT_GE(std::abs(b), 0.1);
            EXPECT_LE(std::abs(b), 2.0);
        }
        EXPECT_GT(km.sigma1, 0.0);
        EXPECT_LT(km.sigma1, 2 * std::numbers::pi);
        EXPECT_GT(km.sigma2, 0.0);
        EXPECT_LT(km.sigma2, 2 * std::numbers::pi);
        for (const auto &[subset, x] : km.solutions) {
            double sum = 0.0;
            for (std::size_t j = 0; j < subset.size(); ++j) {
                EXPECT_NE(x[j], 0.0);
                sum += km.b[static_cast<std::size_t>(subset[j] - 1)] * x[j];
            }
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
    }
}

TEST(Keygen, VariablesNeverRepeatAcrossSubsets) {
    Rng rng(4);
    const KeyMaterial km = generate(7, 3, rng);
    for (int server = 1; server <= 7; ++server) {
        std::set<double> values;
        std::size_t count = 0;
        for (const auto &[subset, x] : km.solutions) {
            for (std::size_t j = 0; j < subset.size(); ++j) {
                if (subset[j] == server) {
                    values.insert(x[j]);
                    ++count;
                }
            }
        }
        EXPECT_EQ(values.size(), count);
    }
}

TEST(Keygen, ShareEntriesCoverOtherSubsets) {
    Rng rng(5);
    const KeyMaterial km = generate(3, 2, rng);
    const KeyShare share = share_for(km, 2);
    std::set<ServerSubset> keys;
    for (const auto &[k, theta] : share.entries) {
        keys.insert(k);
        EXPECT_TRUE(std::isfinite(theta));
        EXPECT_NE(theta, 0.0);
    }
    EXPECT_EQ(keys, (std::set<ServerSubset>{{1}, {3}}));
    EXPECT_NEAR(share.entries.at({1}), km.sigma1 * km.b[1] * km.solution({1, 2}, 2), 1e-12);
}

TEST(Keygen, ThetaForUsesCoalitionRegardlessOfOrder) {
    Rng rng(6);
    const KeyMaterial km = generate(5, 3, rng);
    const KeyShare s1 = share_for(km, 1);
    EXPECT_NEAR(theta_for(s1, {1, 3, 4}), km.sigma1 * km.b[0] * km.solution({1, 3, 4}, 1), 1e-12);
    EXPECT_EQ(theta_for(s1, {4, 1, 3}), theta_for(s1, {1, 3, 4}));
    EXPECT_THROW(theta_for(s1, {2, 3, 4}), ProtocolViolation);
}

TEST(Keygen, ThresholdCompleteness) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(8));
        const int k = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        const KeyMaterial km = generate(n, k, rng);
        for (const ServerSubset &s : subsets(n, k)) {
            double sum = 0.0;
            for (int id : s) {
                sum += theta_for(share_for(km, id), s);
            }
            ASSERT_NEAR(sum, km.sigma1, 1e-9);
        }
    }
}

TEST(Keygen, ProperCoalitionsMissSigma1) {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(8));
        const int k = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        const KeyMaterial km = generate(n, k, rng);
        EXPECT_GT(km.sigma1, 0.1);
        for (const ServerSubset &s : subsets(n, k)) {
            for (unsigned bits = 1; bits + 1 < (1u << k); ++bits) {
                double partial = 0.0;
                for (int j = 0; j < k; ++j) {
                    if (bits & (1u << j)) {
                        partial += theta_for(share_for(km, s[static_cast<std::size_t>(j)]), s);
                    }
                }
                ASSERT_GT(std::abs(partial - km.sigma1), kCoalitionGap);
            }
        }
    }
}

TEST(Keygen, ManyDrawsNeverExhaustResampling) {
    Rng rng(10);
    for (int trial = 0; trial < 20000; ++trial) {
        ASSERT_NO_THROW(generate(2, 2, rng)) << trial;
    }
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(8));
        const int k = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        ASSERT_NO_THROW(generate(n, k, rng)) << n << " " << k;
    }
}

TEST(Keygen, RejectsBadParameters) {
    Rng rng(8);
    EXPECT_THROW(generate(3, 4, rng), InvalidArgument);
    EXPECT_THROW(generate(9, 2, rng), InvalidArgument);
    EXPECT_THROW(generate(3, 0, rng), InvalidArgument);
    const KeyMaterial km = generate(3, 2, rng);
    EXPECT_THROW(share_for(km, 0), InvalidArgument);
    EXPECT_THROW(share_for(km, 4), InvalidArgument);
}

TEST(Keygen, Deterministic) {
    Rng a(99);
    Rng b(99);
    EXPECT_EQ(generate(6, 4, a), generate(6, 4, b));
}

}  // namespace
