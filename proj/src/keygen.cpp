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

#include "tqhe/keygen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

constexpr double kMinMagnitude = 0.1;
constexpr double kMaxMagnitude = 2.0;
constexpr int kMaxAttempts = 1000;
/// Every free b·x product is at least kMinMagnitude², so this keeps the
/// coalition gap reachable for every draw.
constexpr double kMinSigma1 = kCoalitionGap / (kMinMagnitude * kMinMagnitude);

/// True when every proper part of the coalition misses σ₁ by more than the gap.
bool coalition_gap_holds(const KeyMaterial &km, const ServerSubset &subset, const std::vector<double> &x) {
    const std::size_t k = subset.size();
    for (std::uint32_t bits = 1; bits + 1 < (std::uint32_t{1} << k); ++bits) {
        double partial = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (bits & (std::uint32_t{1} << j)) {
                partial += km.b[static_cast<std::size_t>(subset[j] - 1)] * x[j];
            }
        }
        if (km.sigma1 * std::abs(1.0 - partial) <= kCoalitionGap) {
            return false;
        }
    }
    return true;
}

/// Uniform over [−2, −0.1] ∪ [0.1, 2].
double nonzero_real(Rng &rng) {
    const double magnitude = rng.uniform(kMinMagnitude, kMaxMagnitude);
    return rng.bit() ? magnitude : -magnitude;
}

void combos(int n, int k, int start, ServerSubset &cur, std::vector<ServerSubset> &out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n; ++i) {
        cur.push_back(i);
        combos(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ServerSubset> subsets(int n, int k) {
    std::vector<ServerSubset> out;
    if (k < 0 || k > n) {
        return out;
    }
    ServerSubset cur;
    combos(n, k, 1, cur, out);
    return out;
}

std::size_t choose(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    }
    return r;
}

double KeyMaterial::public_b(int server) const {
    if (server < 1 || server > n) {
        throw InvalidArgument("server index " + std::to_string(server) + " out of range");
    }
    return b[static_cast<std::size_t>(server - 1)];
}

double KeyMaterial::solution(const ServerSubset &subset, int server) const {
    auto it = solutions.find(subset);
    if (it == solutions.end()) {
        throw NotFound("no solution for the requested subset");
    }
    auto pos = std::find(subset.begin(), subset.end(), server);
    if (pos == subset.end()) {
        throw NotFound("server " + std::to_string(server) + " is not in the subset");
    }
    return it->second[static_cast<std::size_t>(pos - subset.begin())];
}

KeyMaterial generate(int n, int k, Rng &rng, int max_servers) {
    if (k < 1 || n < k || n > max_servers) {
        throw InvalidArgument("generate: need 0 < k <= n <= " + std::to_string(max_servers) + ", got n=" +
                              std::to_string(n) + " k=" + std::to_string(k));
    }
    KeyMaterial km;
    km.n = n;
    km.k = k;
    km.b.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        km.b.push_back(nonzero_real(rng));
    }
    do {
        km.sigma1 = rng.uniform_open(0.0, 2.0 * std::numbers::pi);
    } while (km.sigma1 <= kMinSigma1);
    km.sigma2 = rng.uniform_open(0.0, 2.0 * std::numbers::pi);

    // Values already used at each server's variable position, across subsets.
    std::vector<std::set<double>> used(static_cast<std::size_t>(n) + 1);
    for (const ServerSubset &subset : subsets(n, k)) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts && !ok; ++attempt) {
            std::vector<double> x(subset.size());
            double partial = 0.0;
            for (std::size_t j = 0; j + 1 < subset.size(); ++j) {
                x[j] = nonzero_real(rng);
                partial += km.b[static_cast<std::size_t>(subset[j] - 1)] * x[j];
            }
            const int last = subset.back();
            x.back() = (1.0 - partial) / km.b[static_cast<std::size_t>(last - 1)];
            if (!std::isfinite(x.back()) || std::abs(x.back()) < 1e-12 || !coalition_gap_holds(km, subset, x)) {
                continue;
            }
            ok = true;
            for (std::size_t j = 0; j < subset.size(); ++j) {
                if (used[static_cast<std::size_t>(subset[j])].count(x[j]) != 0) {
                    ok = false;
                }
            }
            if (ok) {
                for (std::size_t j = 0; j < subset.size(); ++j) {
                    used[static_cast<std::size_t>(subset[j])].insert(x[j]);
                }
                km.solutions.emplace(subset, std::move(x));
            }
        }
        if (!ok) {
            throw GenerationFailure("generate: could not find distinct non-zero solutions");
        }
    }
    return km;
}

KeyShare share_for(const KeyMaterial &km, int server) {
    if (server < 1 || server > km.n) {
        throw InvalidArgument("share_for: server " + std::to_string(server) + " out of range 1.." +
                              std::to_string(km.n));
    }
    KeyShare share;
    share.server_id = server;
    const double bi = km.public_b(server);
    for (const auto &[subset, x] : km.solutions) {
        auto pos = std::find(subset.begin(), subset.end(), server);
        if (pos == subset.end()) {
            continue;
        }
        ServerSubset others;
        for (int s : subset) {
            if (s != server) {
                others.push_back(s);
            }
        }
        share.entries.emplace(std::move(others), km.sigma1 * bi * x[static_cast<std::size_t>(pos - subset.begin())]);
    }
    return share;
}

double theta_for(const KeyShare &share, const std::vector<int> &chosen) {
    if (std::find(chosen.begin(), chosen.end(), share.server_id) == chosen.end()) {
        throw ProtocolViolation("theta_for: server " + std::to_string(share.server_id) +
                                " is not in the chosen coalition");
    }
    ServerSubset others;
    for (int s : chosen) {
        if (s != share.server_id) {
            others.push_back(s);
        }
    }
    std::sort(others.begin(), others.end());
    auto it = share.entries.find(others);
    if (it == share.entries.end()) {
        throw NotFound("theta_for: share has no entry for this coalition");
    }
    return it->second;
}

}  // namespace tqhe
