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
 * Client and evaluator state machines.
 *
 * Parties are event driven: each incoming envelope is handled to completion
 * and yields the envelopes to send next. Nothing is shared between parties,
 * so they can be driven from one loop or from one thread each.
 *
 * Hop d (1 ≤ d ≤ k) is the quantum transmission into the d-th evaluator of
 * the chain; hop k + 1 is the last evaluator's return leg to the client.
 * Every hop is guarded by decoy states inserted by the sender.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqhe/gates.hpp"
#include "tqhe/keygen.hpp"
#include "tqhe/messages.hpp"
#include "tqhe/protocol.hpp"
#include "tqhe/random.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

inline constexpr int kClientId = 0;

struct Envelope {
    int from = 0;
    int to = 0;
    std::string payload;
};

struct DecoyPolicy {
    /// Fraction of the transmitted sequence made of decoys.
    double ratio = 0.2;
    /// Explicit decoy count per hop; overrides `ratio` when set.
    std::optional<int> count;
    /// A hop is accepted when its decoy error rate is at most this.
    double error_threshold = 0.0;
    /// Retransmissions after a rejected attempt before giving up.
    int max_retries = 3;
};

/// Decoys inserted alongside `data_qubits` data qubits.
int decoys_for(const DecoyPolicy &policy, std::size_t data_qubits);

struct DecoyAttempt {
    int hop = 0;
    int attempt = 0;
    int decoys = 0;
    int errors = 0;
    double error_rate = 0.0;
    bool accepted = false;
    friend bool operator==(const DecoyAttempt &, const DecoyAttempt &) = default;
};

/// Sender side of one decoy-checked hop.
class DecoySender {
  public:
    DecoySender(int self, int peer, int hop, bool final_return, DecoyPolicy policy);

    /// Sends `data` with fresh decoys: QubitSequence then DecoyAnnounce.
    std::vector<Envelope> start(Statevector data, Rng &rng);

    struct Outcome {
        std::vector<Envelope> out;
        bool accepted = false;
        bool exhausted = false;
    };
    Outcome on_results(const DecoyResults &results, Rng &rng);

    const std::vector<DecoyAttempt> &log() const { return log_; }

  private:
    std::vector<Envelope> transmit(Rng &rng);

    int self_;
    int peer_;
    int hop_;
    bool final_return_;
    DecoyPolicy policy_;
    Statevector snapshot_;
    std::vector<DecoyState> decoys_;
    int attempt_ = 0;
    std::vector<DecoyAttempt> log_;
};

/// Receiver side of one decoy-checked hop.
class DecoyReceiver {
  public:
    void on_sequence(QubitSequence seq);
    /// Measures and strips the announced decoys; returns the DecoyResults.
    Envelope on_announce(const DecoyAnnounce &a, int self, int peer, Rng &rng);
    /// The data register if the sender accepted the hop.
    std::optional<Statevector> on_verdict(const DecoyVerdict &v);

  private:
    std::optional<Statevector> pending_;
    int attempt_ = -1;
};

struct ClientConfig {
    PlaintextSpec plaintext;
    KeyMaterial keys;
    std::vector<int> chain;
    FinalMask mask;
    DecoyPolicy decoys;
    double tolerance = kTolerance;
};

class Client {
  public:
    Client(ClientConfig config, Rng rng);

    std::vector<Envelope> start();
    std::vector<Envelope> on_message(const Envelope &e);

    bool finished() const { return finished_; }
    bool compromised() const { return compromised_; }
    int compromised_hop() const { return compromised_hop_; }
    const std::optional<Statevector> &result() const { return result_; }
    const std::vector<Matrix> &qprime() const { return qprime_; }
    const std::optional<DecTuple> &final_dec() const { return final_dec_; }
    /// Attempts for hop 1, where the client is the sender.
    const std::vector<DecoyAttempt> &decoy_log() const { return sender_.log(); }

  private:
    int last_evaluator() const { return config_.chain.back(); }
    int final_hop() const { return static_cast<int>(config_.chain.size()) + 1; }

    ClientConfig config_;
    Rng rng_;
    DecoySender sender_;
    DecoyReceiver receiver_;
    std::vector<Matrix> qprime_;
    std::optional<DecTuple> final_dec_;
    std::optional<Statevector> result_;
    bool finished_ = false;
    bool compromised_ = false;
    int compromised_hop_ = 0;
};

struct EvaluatorConfig {
    int server_id = 0;
    /// 1-based position in the chain; this evaluator receives hop `hop`.
    int hop = 0;
    KeyShare share;
    std::vector<int> chain;
    GateProgram program;
    bool force_matrix = false;
    DecoyPolicy decoys;
    double tolerance = kTolerance;
};

class Evaluator {
  public:
    Evaluator(EvaluatorConfig config, Rng rng);

    std::vector<Envelope> on_message(const Envelope &e);

    int id() const { return config_.server_id; }
    bool is_last() const { return config_.hop == static_cast<int>(config_.chain.size()); }
    /// Attempts for the outgoing hop, where this evaluator is the sender.
    const std::vector<DecoyAttempt> &decoy_log() const { return sender_.log(); }
    const std::optional<DecTuple> &outgoing_dec() const { return dec_out_; }

  private:
    int previous_party() const;
    int next_party() const;
    std::vector<Envelope> try_evaluate();

    EvaluatorConfig config_;
    Rng rng_;
    DecoyReceiver receiver_;
    DecoySender sender_;
    std::optional<DecTuple> dec_in_;
    std::optional<Statevector> data_;
    std::optional<DecTuple> dec_out_;
    bool evaluated_ = false;
};

}  // namespace tqhe
