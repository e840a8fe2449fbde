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

#include "tqhe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <exception>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

using Handler = std::function<std::vector<Envelope>(const Envelope &)>;
using Link = std::function<Envelope(Envelope)>;

void run_sequential(std::map<int, Handler> &parties, std::vector<Envelope> initial, const Link &link) {
    std::deque<Envelope> queue(initial.begin(), initial.end());
    while (!queue.empty()) {
        Envelope e = link(std::move(queue.front()));
        queue.pop_front();
        for (Envelope &out : parties.at(e.to)(e)) {
            queue.push_back(std::move(out));
        }
    }
}

// One thread per party, each draining its own FIFO inbox. The run is over
// when no message is queued or being handled.
class ConcurrentNetwork {
  public:
    ConcurrentNetwork(std::map<int, Handler> &parties, const Link &link) : parties_(parties), link_(link) {
        for (const auto &[id, h] : parties_) {
            inboxes_.emplace(id, std::make_unique<Inbox>());
        }
    }

    void run(std::vector<Envelope> initial) {
        for (Envelope &e : initial) {
            post(std::move(e));
        }
        if (in_flight_ == 0) {
            return;
        }
        std::vector<std::thread> threads;
        for (auto &[id, h] : parties_) {
            threads.emplace_back([this, id = id] { serve(id); });
        }
        for (std::thread &t : threads) {
            t.join();
        }
        if (error_) {
            std::rethrow_exception(error_);
        }
    }

  private:
    struct Inbox {
        std::mutex m;
        std::condition_variable cv;
        std::deque<Envelope> q;
    };

    void post(Envelope e) {
        {
            std::lock_guard lock(link_mutex_);
            e = link_(std::move(e));
        }
        Inbox &box = *inboxes_.at(e.to);
        ++in_flight_;
        {
            std::lock_guard lock(box.m);
            box.q.push_back(std::move(e));
        }
        box.cv.notify_one();
    }

    void stop_all() {
        stop_ = true;
        for (auto &[id, box] : inboxes_) {
            std::lock_guard lock(box->m);
            box->cv.notify_all();
        }
    }

    void serve(int id) {
        Inbox &box = *inboxes_.at(id);
        Handler &handler = parties_.at(id);
        while (true) {
            Envelope e;
            {
                std::unique_lock lock(box.m);
                box.cv.wait(lock, [&] { return stop_ || !box.q.empty(); });
                if (stop_) {
                    return;
                }
                e = std::move(box.q.front());
                box.q.pop_front();
            }
            try {
                for (Envelope &out : handler(e)) {
                    post(std::move(out));
                }
            } catch (...) {
                {
                    std::lock_guard lock(error_mutex_);
                    if (!error_) {
                        error_ = std::current_exception();
                    }
                }
                stop_all();
                return;
            }
            if (--in_flight_ == 0) {
                stop_all();
                return;
            }
        }
    }

    std::map<int, Handler> &parties_;
    const Link &link_;
    std::map<int, std::unique_ptr<Inbox>> inboxes_;
    std::mutex link_mutex_;
    std::atomic<int> in_flight_{0};
    std::atomic<bool> stop_{false};
    std::mutex error_mutex_;
    std::exception_ptr error_;
};

// Intercept-resend: each qubit of a matching transmission is, with the given
// probability, measured in a random basis and the post-measurement state sent on.
Link make_link(const std::optional<Eavesdropper> &eve, std::shared_ptr<Rng> rng) {
    if (!eve || eve->probability <= 0.0) {
        return [](Envelope e) { return e; };
    }
    const Eavesdropper cfg = *eve;
    return [cfg, rng](Envelope e) {
        Message m = decode(e.payload);
        auto *seq = std::get_if<QubitSequence>(&m);
        if (seq == nullptr || seq->hop != cfg.hop) {
            return e;
        }
        const std::vector<QubitLabel> labels = seq->reg.qubit_ids();
        for (const QubitLabel &q : labels) {
            if (rng->bernoulli(cfg.probability)) {
                const bool hadamard_basis = rng->bit();
                seq->reg.measure(q, hadamard_basis, *rng);
            }
        }
        e.payload = encode(m);
        return e;
    };
}

FinalMask draw_mask(const Scenario &s) {
    Rng rng(s.seed, stream::kScenario);
    FinalMask mask;
    for (const QubitLabel &q : s.qubits) {
        MaskBits bits{rng.bit(), rng.bit()};
        auto pinned = s.mask.find(q);
        mask[q] = pinned != s.mask.end() ? pinned->second : bits;
    }
    return mask;
}

DecoyPolicy policy_of(const Scenario &s) {
    return DecoyPolicy{s.decoy_ratio, s.decoys, s.decoy_error_threshold, s.max_retries};
}

const GateProgram &program_for(const Scenario &s, int server) {
    static const GateProgram kEmpty;
    auto it = s.programs.find(server);
    return it == s.programs.end() ? kEmpty : it->second;
}

std::string format_complex(cplx c) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
    return os.str();
}

}  // namespace

void validate(const Scenario &s) {
    if (s.n < 1 || s.n > kMaxServers) {
        throw InvalidArgument("n must be in 1.." + std::to_string(kMaxServers));
    }
    if (s.k < 1 || s.k > s.n) {
        throw InvalidArgument("k must be in 1..n");
    }
    if (static_cast<int>(s.chain.size()) != s.k) {
        throw InvalidArgument("chain must list exactly k servers");
    }
    std::set<int> seen;
    for (int id : s.chain) {
        if (id < 1 || id > s.n || !seen.insert(id).second) {
            throw InvalidArgument("chain must be distinct server ids in 1..n");
        }
    }
    if (s.qubits.empty()) {
        throw InvalidArgument("at least one qubit is required");
    }
    if (s.angles.size() != s.qubits.size()) {
        throw InvalidArgument("one angle per qubit is required");
    }
    std::set<QubitLabel> labels;
    for (const QubitLabel &q : s.qubits) {
        if (q.empty() || q.front() == '~' || !labels.insert(q).second) {
            throw InvalidArgument("qubit labels must be distinct, non-empty and not start with '~'");
        }
    }
    for (double a : s.angles) {
        if (!std::isfinite(a)) {
            throw InvalidArgument("angles must be finite");
        }
    }
    for (const auto &[id, prog] : s.programs) {
        if (!seen.contains(id)) {
            throw InvalidArgument("program given for server " + std::to_string(id) + " which is not in the chain");
        }
        for (const Gate &g : prog.gates) {
            for (const QubitLabel &q : g.operands) {
                if (!labels.contains(q)) {
                    throw InvalidArgument("program for server " + std::to_string(id) + " uses undeclared qubit '" +
                                          q + "'");
                }
            }
        }
    }
    if (!(s.decoy_ratio >= 0.0 && s.decoy_ratio < 1.0)) {
        throw InvalidArgument("decoy_ratio must be in [0, 1)");
    }
    if (s.decoys && *s.decoys < 0) {
        throw InvalidArgument("decoys must be non-negative");
    }
    if (!(s.decoy_error_threshold >= 0.0 && s.decoy_error_threshold <= 1.0)) {
        throw InvalidArgument("decoy_error_threshold must be in [0, 1]");
    }
    if (s.max_retries < 0) {
        throw InvalidArgument("max_retries must be non-negative");
    }
    if (s.eavesdropper) {
        if (s.eavesdropper->hop < 1 || s.eavesdropper->hop > s.k + 1) {
            throw InvalidArgument("eavesdropper hop must be in 1..k+1");
        }
        if (!(s.eavesdropper->probability >= 0.0 && s.eavesdropper->probability <= 1.0)) {
            throw InvalidArgument("eavesdropper probability must be in [0, 1]");
        }
    }
    if (!(s.tolerance > 0.0) || !std::isfinite(s.tolerance)) {
        throw InvalidArgument("tolerance must be positive");
    }
    if (s.sigma2 && !std::isfinite(*s.sigma2)) {
        throw InvalidArgument("sigma2 must be finite");
    }
    for (const auto &[q, bits] : s.mask) {
        if (!labels.contains(q)) {
            throw InvalidArgument("mask given for undeclared qubit '" + q + "'");
        }
    }
}

std::string_view status_name(RunStatus s) {
    switch (s) {
    case RunStatus::kPass:
        return "pass";
    case RunStatus::kFidelityFailure:
        return "fidelity-failure";
    case RunStatus::kChannelCompromised:
        return "channel-compromised";
    }
    return "unknown";
}

PlaintextSpec plaintext_of(const Scenario &s) { return PlaintextSpec{s.qubits, s.angles}; }

Statevector oracle(const PlaintextSpec &spec, const std::vector<GateProgram> &programs) {
    Statevector sv = prepare(spec);
    for (const GateProgram &p : programs) {
        sv = apply_program(std::move(sv), p);
    }
    return sv;
}

Statevector oracle(const Scenario &s) {
    std::vector<GateProgram> programs;
    for (int id : s.chain) {
        programs.push_back(program_for(s, id));
    }
    return oracle(plaintext_of(s), programs);
}

RunReport run(const Scenario &s) {
    validate(s);
    const auto started = std::chrono::steady_clock::now();

    Rng key_rng(s.seed, stream::kKeygen);
    KeyMaterial keys = generate(s.n, s.k, key_rng);
    if (s.sigma2) {
        keys.sigma2 = *s.sigma2;
    }
    const FinalMask mask = draw_mask(s);
    const DecoyPolicy policy = policy_of(s);

    Client client(ClientConfig{plaintext_of(s), keys, s.chain, mask, policy},
                  Rng(s.seed, stream::kClient));
    std::vector<std::unique_ptr<Evaluator>> evaluators;
    std::map<int, Handler> parties;
    parties[kClientId] = [&client](const Envelope &e) { return client.on_message(e); };
    for (std::size_t d = 0; d < s.chain.size(); ++d) {
        const int id = s.chain[d];
        EvaluatorConfig cfg{id,     static_cast<int>(d) + 1, share_for(keys, id), s.chain, program_for(s, id),
                            s.force_matrix_form, policy};
        evaluators.push_back(std::make_unique<Evaluator>(std::move(cfg), Rng(s.seed, stream::kEvaluatorBase + id)));
        Evaluator *ev = evaluators.back().get();
        parties[id] = [ev](const Envelope &e) { return ev->on_message(e); };
    }
    const Link link = make_link(s.eavesdropper, std::make_shared<Rng>(s.seed, stream::kEavesdropper));

    std::vector<Envelope> initial = client.start();
    if (s.schedule == Schedule::kSequential) {
        run_sequential(parties, std::move(initial), link);
    } else {
        ConcurrentNetwork(parties, link).run(std::move(initial));
    }

    RunReport report;
    report.keys = keys;
    report.mask = mask;
    report.oracle = oracle(s);
    report.decoys = client.decoy_log();
    for (const auto &ev : evaluators) {
        report.decoys.insert(report.decoys.end(), ev->decoy_log().begin(), ev->decoy_log().end());
    }
    std::sort(report.decoys.begin(), report.decoys.end(), [](const DecoyAttempt &a, const DecoyAttempt &b) {
        return std::pair(a.hop, a.attempt) < std::pair(b.hop, b.attempt);
    });
    report.qprime = client.qprime();
    report.final_dec = client.final_dec();

    if (client.compromised()) {
        report.status = RunStatus::kChannelCompromised;
        report.compromised_hop = client.compromised_hop();
    } else if (!client.finished() || !client.result()) {
        throw ProtocolViolation("run: protocol stalled before the client recovered the result");
    } else {
        report.final_state = *client.result();
        report.fidelity = fidelity(report.oracle, *report.final_state);
        report.matches_oracle = s.comparison == Comparison::kExact
                                    ? equal_exact(*report.final_state, report.oracle, s.tolerance)
                                    : equal_up_to_global_phase(*report.final_state, report.oracle, s.tolerance);
        report.status = report.matches_oracle ? RunStatus::kPass : RunStatus::kFidelityFailure;
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

json to_json(const RunReport &r) {
    json decoys = json::array();
    for (const DecoyAttempt &d : r.decoys) {
        decoys.push_back(json{{"hop", d.hop},
                              {"attempt", d.attempt},
                              {"decoys", d.decoys},
                              {"errors", d.errors},
                              {"error_rate", d.error_rate},
                              {"accepted", d.accepted}});
    }
    json qprime = json::array();
    for (const Matrix &m : r.qprime) {
        qprime.push_back(to_json(m));
    }
    const std::vector<QubitLabel> &order = r.oracle.qubit_ids();
    json j{{"status", status_name(r.status)},
           {"compromised_hop", r.compromised_hop},
           {"decoy_checks", std::move(decoys)},
           {"matches_oracle", r.matches_oracle},
           {"qprime", std::move(qprime)},
           {"qubits", order},
           {"oracle", to_json(amplitudes(r.oracle, order))},
           {"keys", to_json(r.keys)},
           {"mask", to_json(r.mask)}};
    j["fidelity"] = r.fidelity ? json(*r.fidelity) : json(nullptr);
    j["final_state"] = r.final_state ? to_json(amplitudes(*r.final_state, order)) : json(nullptr);
    j["final_dec"] = r.final_dec ? to_json(*r.final_dec) : json(nullptr);
    return j;
}

std::string format_report(const RunReport &r) {
    std::ostringstream os;
    os << "status: " << status_name(r.status) << "\n";
    if (r.compromised_hop != 0) {
        os << "compromised hop: " << r.compromised_hop << "\n";
    }
    os << "sigma1: " << r.keys.sigma1 << "  sigma2: " << r.keys.sigma2 << "\n";
    for (const DecoyAttempt &d : r.decoys) {
        os << "hop " << d.hop << " attempt " << d.attempt << ": " << d.errors << "/" << d.decoys
           << " decoy errors (rate " << d.error_rate << ") " << (d.accepted ? "accepted" : "rejected") << "\n";
    }
    for (std::size_t i = 0; i < r.qprime.size(); ++i) {
        const Matrix &m = r.qprime[i];
        os << "Q'[" << i << "] " << m.rows() << "x" << m.cols() << ":\n";
        for (std::size_t row = 0; row < m.rows(); ++row) {
            os << "  ";
            for (std::size_t col = 0; col < m.cols(); ++col) {
                os << (col ? ",  " : "") << format_complex(m(row, col));
            }
            os << "\n";
        }
    }
    const std::vector<QubitLabel> &order = r.oracle.qubit_ids();
    auto print_state = [&](const char *name, const Statevector &sv) {
        os << name << ":";
        for (cplx c : amplitudes(sv, order)) {
            os << "  " << format_complex(c);
        }
        os << "\n";
    };
    if (r.final_state) {
        print_state("final ", *r.final_state);
    }
    print_state("oracle", r.oracle);
    if (r.fidelity) {
        os.precision(12);
        os << "fidelity: " << *r.fidelity << "\n";
    }
    os.precision(3);
    os << "elapsed: " << std::fixed << r.elapsed_ms << " ms\n";
    return os.str();
}

Matrix security_rho_enc(std::size_t samples, double alpha, const std::function<double()> &sigma) {
    if (samples == 0) {
        throw InvalidArgument("security_rho_enc: samples must be at least 1");
    }
    const Matrix phi{{std::cos(alpha)}, {std::sin(alpha)}};
    const Matrix rho = phi * dagger(phi);
    Matrix acc(2, 2);
    for (std::size_t i = 0; i < samples; ++i) {
        const Matrix u = u_rot(sigma());
        acc = acc + u * rho * dagger(u);
    }
    return cplx{1.0 / static_cast<double>(samples)} * acc;
}

Matrix security_rho_enc(std::size_t samples, double alpha, Rng &rng) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    return security_rho_enc(samples, alpha, [&rng] { return rng.uniform(-kTwoPi, kTwoPi); });
}

Matrix blinding_average(const Matrix &rhs, double sigma2) {
    std::size_t j = 0;
    while ((std::size_t{1} << j) < rhs.rows()) {
        ++j;
    }
    if (!rhs.square() || (std::size_t{1} << j) != rhs.rows() || j == 0 || j > kMaxBlockQubits) {
        throw InvalidArgument("blinding_average: rhs must be 2^j x 2^j with 1 <= j <= " +
                              std::to_string(kMaxBlockQubits));
    }
    const std::size_t masks = std::size_t{1} << (2 * j);
    Matrix acc(rhs.rows(), rhs.cols());
    std::vector<MaskBits> mask(j);
    for (std::size_t m = 0; m < masks; ++m) {
        for (std::size_t i = 0; i < j; ++i) {
            mask[i] = MaskBits{((m >> (2 * i)) & 1) != 0, ((m >> (2 * i + 1)) & 1) != 0};
        }
        const Matrix q = dagger(blinding_prefix(sigma2, mask)) * rhs;
        acc = acc + q * dagger(q);
    }
    return cplx{1.0 / static_cast<double>(masks)} * acc;
}

Matrix security_rho_q(const std::function<Matrix(double)> &rhs_factory, double sigma2) {
    const Matrix avg = blinding_average(rhs_factory(sigma2), sigma2);
    cplx trace{};
    for (std::size_t i = 0; i < avg.rows(); ++i) {
        trace += avg(i, i);
    }
    return (1.0 / trace) * avg;
}

double deviation_from_mixed(const Matrix &rho) {
    const double diag = 1.0 / static_cast<double>(rho.rows());
    double worst = 0.0;
    for (std::size_t r = 0; r < rho.rows(); ++r) {
        for (std::size_t c = 0; c < rho.cols(); ++c) {
            worst = std::max(worst, std::abs(rho(r, c) - cplx{r == c ? diag : 0.0}));
        }
    }
    return worst;
}

double eavesdrop_detection(const Scenario &s, std::size_t trials) {
    if (!s.eavesdropper) {
        throw InvalidArgument("eavesdrop_detection: scenario has no eavesdropper");
    }
    if (trials == 0) {
        return 0.0;
    }
    Scenario trial = s;
    trial.max_retries = 0;
    std::size_t aborted = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        trial.seed = s.seed + t;
        aborted += run(trial).status == RunStatus::kChannelCompromised;
    }
    return static_cast<double>(aborted) / static_cast<double>(trials);
}

double expected_detection(int decoys, double probability) {
    return 1.0 - std::pow(1.0 - probability / 4.0, decoys);
}

Scenario random_scenario(Rng &rng, const RandomLimits &limits) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    Scenario s;
    s.seed = rng.next();
    s.n = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(limits.max_n)));
    s.k = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(s.n)));
    std::vector<int> ids(static_cast<std::size_t>(s.n));
    for (int i = 0; i < s.n; ++i) {
        ids[static_cast<std::size_t>(i)] = i + 1;
    }
    for (std::size_t i = ids.size(); i > 1; --i) {
        std::swap(ids[i - 1], ids[rng.index(i)]);
    }
    s.chain.assign(ids.begin(), ids.begin() + s.k);

    const int m = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(limits.max_qubits)));
    for (int i = 0; i < m; ++i) {
        s.qubits.push_back("q" + std::to_string(i));
        s.angles.push_back(rng.uniform(0.0, kTwoPi));
    }

    // Integer-eligible programs keep H and Z ahead of the first T/S on each
    // qubit across the whole chain and never use CNOT.
    std::map<QubitLabel, bool> phased;
    static constexpr GateKind kAll[] = {GateKind::X, GateKind::Y, GateKind::Z,
                                        GateKind::H, GateKind::S, GateKind::T};
    static constexpr GateKind kAfterPhase[] = {GateKind::X, GateKind::Y, GateKind::S, GateKind::T};
    for (int id : s.chain) {
        GateProgram prog;
        const int count = static_cast<int>(rng.index(static_cast<std::uint64_t>(limits.max_gates) + 1));
        for (int g = 0; g < count; ++g) {
            if (!limits.integer_eligible && m >= 2 && rng.index(7) == 0) {
                const std::size_t c = rng.index(static_cast<std::uint64_t>(m));
                std::size_t t = rng.index(static_cast<std::uint64_t>(m - 1));
                t += t >= c ? 1 : 0;
                prog.gates.emplace_back(GateKind::CNOT, s.qubits[c], s.qubits[t]);
                continue;
            }
            const QubitLabel &q = s.qubits[rng.index(static_cast<std::uint64_t>(m))];
            GateKind kind;
            if (limits.integer_eligible && phased[q]) {
                kind = kAfterPhase[rng.index(std::size(kAfterPhase))];
            } else {
                kind = kAll[rng.index(std::size(kAll))];
            }
            if (kind == GateKind::S || kind == GateKind::T) {
                phased[q] = true;
            }
            prog.gates.emplace_back(kind, q);
        }
        if (!prog.gates.empty()) {
            s.programs[id] = std::move(prog);
        }
    }
    return s;
}

}  // namespace tqhe
