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

/**
 * @file
 * Threshold key material.
 *
 * The client publishes non-zero reals b_1..b_n. For every k-subset
 * S = {i_1 < … < i_k} it picks non-zero x values with Σ_j b_{i_j} x_{i_j,S} = 1,
 * so that the scaled shares θ_{i,S} = σ₁ b_i x_{i,S} of any k servers add up to
 * σ₁, and no smaller coalition's shares do.
 */

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tqhe/random.hpp"

namespace tqhe {

/// 1-based server ids, strictly increasing.
using ServerSubset = std::vector<int>;

inline constexpr int kMaxServers = 8;

/// Minimum distance (radians) between σ₁ and the summed θ of any proper part
/// of a k-coalition, including the empty one. Draws closer than this are
/// resampled, and σ₁ itself is drawn from (0.1, 2π) so the gap is reachable.
inline constexpr double kCoalitionGap = 1e-3;

struct KeyMaterial {
    int n = 0;
    int k = 0;
    std::vector<double> b;  // b[i-1] for server i
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    /// For each k-subset, x values aligned with the subset's ids.
    std::map<ServerSubset, std::vector<double>> solutions;

    double public_b(int server) const;
    /// x_{server,subset}; the subset must contain the server.
    double solution(const ServerSubset &subset, int server) const;

    friend bool operator==(const KeyMaterial &, const KeyMaterial &) = default;
};

/// Per-server share: θ for each (k−1)-subset of the other servers.
struct KeyShare {
    int server_id = 0;
    std::map<ServerSubset, double> entries;
    friend bool operator==(const KeyShare &, const KeyShare &) = default;
};

/// All size-`k` subsets of {1..n} in lexicographic order.
std::vector<ServerSubset> subsets(int n, int k);

/// Binomial coefficient.
std::size_t choose(int n, int k);

KeyMaterial generate(int n, int k, Rng &rng, int max_servers = kMaxServers);

KeyShare share_for(const KeyMaterial &km, int server);

/// θ for `share` within the chosen coalition (order irrelevant).
double theta_for(const KeyShare &share, const std::vector<int> &chosen);

}  // namespace tqhe
