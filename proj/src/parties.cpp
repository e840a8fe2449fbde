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

#include "tqhe/parties.hpp"

#include <cmath>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

std::string decoy_label(int hop, int attempt, std::size_t i) {
    return "~decoy." + std::to_string(hop) + "." + std::to_string(attempt) + "." + std::to_string(i);
}

Envelope envelope(int from, int to, const Message &m) { return Envelope{from, to, encode(m)}; }

}  // namespace

int decoys_for(const DecoyPolicy &policy, std::size_t data_qubits) {
    if (policy.count) {
        if (*policy.count < 0) {
            throw InvalidArgument("decoy count must be non-negative");
        }
        return *policy.count;
    }
    if (!(policy.ratio >= 0.0 && policy.ratio < 1.0)) {
        throw InvalidArgument("decoy ratio must be in [0, 1)");
    }
    const double wanted = policy.ratio * static_cast<double>(data_qubits) / (1.0 - policy.ratio);
    return static_cast<int>(std::ceil(wanted - 1e-9));
}

// DecoySender ---------------------------------------------------------------

DecoySender::DecoySender(int self, int peer, int hop, bool final_return, DecoyPolicy policy)
    : self_(self), peer_(peer), hop_(hop), final_return_(final_return), policy_(policy) {}

std::vector<Envelope> DecoySender::start(Statevector data, Rng &rng) {
    snapshot_ = std::move(data);
    attempt_ = 0;
    return transmit(rng);
}

std::vector<Envelope> DecoySender::transmit(Rng &rng) {
    ++attempt_;
    Statevector reg = snapshot_;
    const int count = decoys_for(policy_, snapshot_.qubit_ids().size());
    std::vector<std::string> labels;
    decoys_.clear();
    for (int i = 0; i < count; ++i) {
        DecoyState d;
        d.basis = rng.bit() ? Basis::kHadamard : Basis::kComputational;
        d.value = rng.bit();
        const std::size_t slot = static_cast<std::size_t>(rng.index(reg.qubit_ids().size() + 1));
        labels.push_back(decoy_label(hop_, attempt_, static_cast<std::size_t>(i)));
        reg.insert_qubit(slot, labels.back(), decoy_amplitudes(d));
        decoys_.push_back(d);
    }
    DecoyAnnounce announce{hop_, attempt_, {}, {}};
    for (std::size_t i = 0; i < decoys_.size(); ++i) {
        decoys_[i].position = reg.position_of(labels[i]);
        announce.positions.push_back(decoys_[i].position);
        announce.bases.push_back(decoys_[i].basis);
    }
    return {envelope(self_, peer_, QubitSequence{hop_, attempt_, final_return_, std::move(reg)}),
            envelope(self_, peer_, announce)};
}

DecoySender::Outcome DecoySender::on_results(const DecoyResults &results, Rng &rng) {
    if (results.hop != hop_ || results.attempt != attempt_ || results.outcomes.size() != decoys_.size()) {
        throw ProtocolViolation("DecoyResults do not match the outstanding transmission");
    }
    DecoyAttempt rec{hop_, attempt_, static_cast<int>(decoys_.size()), 0, 0.0, false};
    for (std::size_t i = 0; i < decoys_.size(); ++i) {
        rec.errors += results.outcomes[i] != decoys_[i].value;
    }
    rec.error_rate = rec.decoys == 0 ? 0.0 : static_cast<double>(rec.errors) / rec.decoys;
    rec.accepted = rec.error_rate <= policy_.error_threshold;
    log_.push_back(rec);

    Outcome out;
    out.accepted = rec.accepted;
    out.out.push_back(envelope(self_, peer_, DecoyVerdict{hop_, attempt_, rec.accepted}));
    if (!rec.accepted) {
        if (attempt_ <= policy_.max_retries) {
            auto again = transmit(rng);
            out.out.insert(out.out.end(), again.begin(), again.end());
        } else {
            out.exhausted = true;
        }
    }
    return out;
}

// DecoyReceiver -------------------------------------------------------------

void DecoyReceiver::on_sequence(QubitSequence seq) {
    pending_ = std::move(seq.reg);
    attempt_ = seq.attempt;
}

Envelope DecoyReceiver::on_announce(const DecoyAnnounce &a, int self, int peer, Rng &rng) {
    if (!pending_ || a.attempt != attempt_ || a.positions.size() != a.bases.size()) {
        throw ProtocolViolation("DecoyAnnounce without a matching qubit sequence");
    }
    std::vector<QubitLabel> labels;
    for (std::size_t pos : a.positions) {
        if (pos >= pending_->qubit_ids().size()) {
            throw ProtocolViolation("DecoyAnnounce position out of range");
        }
        labels.push_back(pending_->qubit_ids()[pos]);
    }
    DecoyResults results{a.hop, a.attempt, {}};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        results.outcomes.push_back(measure_decoy(*pending_, labels[i], a.bases[i], rng));
    }
    for (const QubitLabel &l : labels) {
        pending_->remove_qubit(l);
    }
    return envelope(self, peer, results);
}

std::optional<Statevector> DecoyReceiver::on_verdict(const DecoyVerdict &v) {
    if (v.attempt != attempt_) {
        throw ProtocolViolation("DecoyVerdict for an unknown attempt");
    }
    std::optional<Statevector> out;
    if (v.accepted) {
        out = std::move(pending_);
    }
    pending_.reset();
    return out;
}

// Client ---------------------------------------------------------------------

Client::Client(ClientConfig config, Rng rng)
    : config_(std::move(config)), rng_(std::move(rng)),
      sender_(kClientId, config_.chain.at(0), 1, false, config_.decoys) {}

std::vector<Envelope> Client::start() {
    Statevector ciphertext = encrypt(config_.plaintext, config_.keys);
    std::vector<Envelope> out;
    out.push_back(envelope(kClientId, config_.chain.front(), ClassicalTuple{1, initial_dec(config_.plaintext.qubits)}));
    auto sent = sender_.start(std::move(ciphertext), rng_);
    out.insert(out.end(), sent.begin(), sent.end());
    return out;
}

std::vector<Envelope> Client::on_message(const Envelope &e) {
    if (finished_) {
        return {};
    }
    const Message m = decode(e.payload);
    std::vector<Envelope> out;
    if (const auto *r = std::get_if<DecoyResults>(&m)) {
        auto outcome = sender_.on_results(*r, rng_);
        out = std::move(outcome.out);
        if (outcome.exhausted) {
            finished_ = true;
            compromised_ = true;
            compromised_hop_ = 1;
        }
    } else if (const auto *t = std::get_if<ClassicalTuple>(&m)) {
        if (e.from != last_evaluator() || t->hop != final_hop()) {
            throw ProtocolViolation("client: unexpected ClassicalTuple");
        }
        final_dec_ = t->dec;
        qprime_ = client_final(t->dec, config_.keys, config_.mask, config_.tolerance);
        out.push_back(envelope(kClientId, e.from, QPrime{qprime_}));
    } else if (const auto *q = std::get_if<QubitSequence>(&m)) {
        if (!q->final_return || e.from != last_evaluator()) {
            throw ProtocolViolation("client: unexpected qubit sequence");
        }
        receiver_.on_sequence(*q);
    } else if (const auto *a = std::get_if<DecoyAnnounce>(&m)) {
        out.push_back(receiver_.on_announce(*a, kClientId, e.from, rng_));
    } else if (const auto *v = std::get_if<DecoyVerdict>(&m)) {
        if (auto data = receiver_.on_verdict(*v)) {
            result_ = client_unmask(std::move(*data), config_.keys, config_.mask);
            finished_ = true;
        }
    } else if (const auto *ab = std::get_if<Abort>(&m)) {
        finished_ = true;
        compromised_ = true;
        compromised_hop_ = ab->hop;
    } else {
        throw ProtocolViolation("client: unexpected message " + std::string(kind_of(m)));
    }
    return out;
}

// Evaluator ------------------------------------------------------------------

Evaluator::Evaluator(EvaluatorConfig config, Rng rng)
    : config_(std::move(config)), rng_(std::move(rng)),
      sender_(config_.server_id, next_party(), config_.hop + 1, is_last(), config_.decoys) {}

int Evaluator::previous_party() const {
    return config_.hop == 1 ? kClientId : config_.chain.at(static_cast<std::size_t>(config_.hop - 2));
}

int Evaluator::next_party() const {
    return is_last() ? kClientId : config_.chain.at(static_cast<std::size_t>(config_.hop));
}

std::vector<Envelope> Evaluator::on_message(const Envelope &e) {
    const Message m = decode(e.payload);
    std::vector<Envelope> out;
    if (const auto *t = std::get_if<ClassicalTuple>(&m)) {
        if (e.from != previous_party() || t->hop != config_.hop) {
            throw ProtocolViolation("evaluator: unexpected ClassicalTuple");
        }
        dec_in_ = t->dec;
        out = try_evaluate();
    } else if (const auto *q = std::get_if<QubitSequence>(&m)) {
        if (e.from != previous_party() || q->hop != config_.hop) {
            throw ProtocolViolation("evaluator: unexpected qubit sequence");
        }
        receiver_.on_sequence(*q);
    } else if (const auto *a = std::get_if<DecoyAnnounce>(&m)) {
        out.push_back(receiver_.on_announce(*a, config_.server_id, e.from, rng_));
    } else if (const auto *v = std::get_if<DecoyVerdict>(&m)) {
        if (auto data = receiver_.on_verdict(*v)) {
            data_ = std::move(*data);
            out = try_evaluate();
        }
    } else if (const auto *r = std::get_if<DecoyResults>(&m)) {
        auto outcome = sender_.on_results(*r, rng_);
        out = std::move(outcome.out);
        if (outcome.exhausted) {
            out.push_back(envelope(config_.server_id, kClientId,
                                   Abort{config_.hop + 1, "decoy error rate above threshold after retries"}));
        }
    } else if (const auto *qp = std::get_if<QPrime>(&m)) {
        if (!is_last() || e.from != kClientId || !evaluated_ || !data_) {
            throw ProtocolViolation("evaluator: unexpected QPrime");
        }
        Statevector blinded = apply_qprime(std::move(*data_), *dec_out_, qp->matrices, config_.tolerance);
        data_.reset();
        out = sender_.start(std::move(blinded), rng_);
    } else {
        throw ProtocolViolation("evaluator: unexpected message " + std::string(kind_of(m)));
    }
    return out;
}

std::vector<Envelope> Evaluator::try_evaluate() {
    if (evaluated_ || !dec_in_ || !data_) {
        return {};
    }
    evaluated_ = true;
    const double theta = theta_for(config_.share, config_.chain);
    Statevector sv = partial_decrypt(std::move(*data_), *dec_in_, theta, config_.tolerance);
    sv = apply_program(std::move(sv), config_.program);
    dec_out_ = update_dec(*dec_in_, config_.program, profile(config_.program), {config_.force_matrix});

    std::vector<Envelope> out;
    out.push_back(envelope(config_.server_id, next_party(), ClassicalTuple{config_.hop + 1, *dec_out_}));
    if (is_last()) {
        // Hold the register until the client's Q' arrives.
        data_ = std::move(sv);
        return out;
    }
    data_.reset();
    auto sent = sender_.start(std::move(sv), rng_);
    out.insert(out.end(), sent.begin(), sent.end());
    return out;
}

}  // namespace tqhe
