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
 * Scenario runner: wires the client and evaluators over an in-process
 * transport, optionally with an intercept-resend eavesdropper on one hop, and
 * checks the outcome against direct evaluation of the plaintext.
 *
 * Also hosts the statistical security checks (averaged ciphertext density,
 * averaged blinded Q) and the randomized scenario generator.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tqhe/gates.hpp"
#include "tqhe/keygen.hpp"
#include "tqhe/linalg.hpp"
#include "tqhe/parties.hpp"
#include "tqhe/protocol.hpp"
#include "tqhe/random.hpp"
#include "tqhe/serialize.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

struct Eavesdropper {
    /// Hop whose quantum transmissions are intercepted (1..k+1).
    int hop = 1;
    /// Per-qubit interception probability.
    double probability = 1.0;
    friend bool operator==(const Eavesdropper &, const Eavesdropper &) = default;
};

enum class Comparison { kGlobalPhase, kExact };
enum class Schedule { kSequential, kConcurrent };

struct Scenario {
    std::uint64_t seed = 1;
    int n = 1;
    int k = 1;
    /// Evaluator order i_1..i_k (server ids, 1-based).
    std::vector<int> chain{1};
    std::vector<QubitLabel> qubits;
    std::vector<double> angles;
    /// Gate program per server id; servers without an entry apply nothing.
    std::map<int, GateProgram> programs;

    double decoy_ratio = 0.2;
    std::optional<int> decoys;
    double decoy_error_threshold = 0.0;
    int max_retries = 3;
    std::optional<Eavesdropper> eavesdropper;

    Comparison comparison = Comparison::kGlobalPhase;
    /// Final-state comparison only; parties use the library tolerance.
    double tolerance = kTolerance;

    /// Pinned values; unset parts are drawn from the seed.
    std::optional<double> sigma2;
    FinalMask mask;

    bool force_matrix_form = false;
    Schedule schedule = Schedule::kSequential;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Throws InvalidArgument describing the first problem found.
void validate(const Scenario &s);

enum class RunStatus { kPass, kFidelityFailure, kChannelCompromised };
std::string_view status_name(RunStatus s);

struct RunReport {
    RunStatus status = RunStatus::kPass;
    /// Every decoy check, ordered by (hop, attempt).
    std::vector<DecoyAttempt> decoys;
    /// Hop that exhausted its retries, 0 if none.
    int compromised_hop = 0;
    /// |⟨oracle|final⟩|², absent when the run aborted.
    std::optional<double> fidelity;
    bool matches_oracle = false;
    std::vector<Matrix> qprime;
    std::optional<DecTuple> final_dec;
    std::optional<Statevector> final_state;
    Statevector oracle;
    KeyMaterial keys;
    FinalMask mask;
    /// Wall-clock duration; reported in text only.
    double elapsed_ms = 0.0;
};

RunReport run(const Scenario &s);

/// Applies every chained evaluator's program directly to the plaintext.
Statevector oracle(const PlaintextSpec &spec, const std::vector<GateProgram> &programs);
Statevector oracle(const Scenario &s);

PlaintextSpec plaintext_of(const Scenario &s);

/// Machine-readable report; identical scenarios give identical bytes.
json to_json(const RunReport &r);
std::string format_report(const RunReport &r);

/**
 * Monte-Carlo average of U(σ)ρU(σ)† for ρ = |φ_α⟩⟨φ_α|, σ drawn by `sigma`
 * (uniform on [−2π, 2π] in the overload taking an Rng).
 */
Matrix security_rho_enc(std::size_t samples, double alpha, const std::function<double()> &sigma);
Matrix security_rho_enc(std::size_t samples, double alpha, Rng &rng);

/// (1/4^j) Σ_mask Q·Q† with Q = (⊗X^aZ^bU(σ₂))†·rhs. Equals I for unitary rhs.
Matrix blinding_average(const Matrix &rhs, double sigma2);

/// Density matrix of the blinded Q over all masks (trace-normalized
/// blinding_average); I/2^j for every unitary rhs.
Matrix security_rho_q(const std::function<Matrix(double)> &rhs_factory, double sigma2);

/// Largest entrywise deviation from I/dim.
double deviation_from_mixed(const Matrix &rho);

/**
 * Fraction of `trials` runs of `s` (seeds s.seed, s.seed + 1, ...) that abort
 * on the first attempt. Requires s.eavesdropper.
 */
double eavesdrop_detection(const Scenario &s, std::size_t trials);

/// 1 − (1 − p/4)^decoys: abort probability of an intercept-resend attacker
/// measuring in a random basis, with zero error tolerance.
double expected_detection(int decoys, double probability);

struct RandomLimits {
    int max_n = 6;
    int max_qubits = 4;
    int max_gates = 8;
    /// Only programs whose Dec components stay in integer form.
    bool integer_eligible = false;
};

Scenario random_scenario(Rng &rng, const RandomLimits &limits = {});

}  // namespace tqhe
