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

#include "tqhe/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

int sign_of(int v) { return (v > 0) - (v < 0); }

int parity_sign(int count) { return count % 2 == 0 ? 1 : -1; }

}  // namespace

double IntegerForm::phase() const {
    return std::numbers::pi * s_prime / 2.0 + std::numbers::pi * t_prime / 4.0;
}

bool MatrixForm::operator==(const MatrixForm &other) const {
    return kind == other.kind && group == other.group && conjugator == other.conjugator && inner == other.inner;
}

std::vector<QubitLabel> DecComponent::qubits() const {
    if (is_integer()) {
        return {integer().qubit};
    }
    return matrix().group;
}

Matrix DecComponent::evaluate(double gamma) const {
    if (is_integer()) {
        return integer_recipe(integer(), gamma);
    }
    const MatrixForm &m = matrix();
    std::vector<Matrix> parts;
    parts.reserve(m.inner.size());
    for (const DecComponent &c : m.inner) {
        parts.push_back(c.evaluate(gamma));
    }
    return m.conjugator * tensor_all(parts) * dagger(m.conjugator);
}

std::vector<QubitLabel> DecTuple::qubits() const {
    std::vector<QubitLabel> out;
    for (const DecComponent &c : components) {
        const auto qs = c.qubits();
        out.insert(out.end(), qs.begin(), qs.end());
    }
    return out;
}

bool DecTuple::all_integer() const {
    return std::all_of(components.begin(), components.end(), [](const DecComponent &c) { return c.is_integer(); });
}

Matrix integer_recipe(const IntegerForm &f, double gamma) {
    const double phi = f.phase();
    const double signed_gamma = (f.eta % 2 == 0) ? gamma : -gamma;
    return e_phase(phi) * u_rot(signed_gamma) * e_phase(-phi);
}

Statevector encrypt(const PlaintextSpec &spec, const KeyMaterial &km) {
    Statevector sv = prepare(spec);
    const Matrix enc = u_rot(2.0 * std::numbers::pi - km.sigma1 - km.sigma2);
    for (const QubitLabel &q : spec.qubits) {
        sv = apply_single(std::move(sv), q, enc);
    }
    return sv;
}

DecTuple initial_dec(std::span<const QubitLabel> qubits) {
    DecTuple dec;
    for (const QubitLabel &q : qubits) {
        dec.components.push_back(DecComponent{IntegerForm{q, 0, 0, 0}});
    }
    return dec;
}

Statevector partial_decrypt(Statevector sv, const DecTuple &dec, double theta, double tol) {
    std::vector<QubitLabel> covered = dec.qubits();
    std::vector<QubitLabel> held = sv.qubit_ids();
    std::sort(covered.begin(), covered.end());
    std::sort(held.begin(), held.end());
    if (covered != held || std::adjacent_find(covered.begin(), covered.end()) != covered.end()) {
        throw ProtocolViolation("partial_decrypt: Dec tuple does not cover the register exactly once");
    }
    for (const DecComponent &c : dec.components) {
        const std::vector<QubitLabel> qs = c.qubits();
        sv = apply_block(std::move(sv), qs, c.evaluate(theta), tol);
    }
    return sv;
}

std::optional<IntegerForm> exact_counter_update(IntegerForm f, const GateProgram &on_qubit) {
    for (const Gate &g : on_qubit.gates) {
        switch (g.kind) {
        case GateKind::X:
            // X E(φ) X = e^{iφ} E(−φ) and X U(γ) X = U(−γ).
            ++f.eta;
            f.t_prime = -f.t_prime;
            f.s_prime = -f.s_prime;
            break;
        case GateKind::Y:
            // Y E(φ) Y† = e^{iφ} E(−φ) and Y U(γ) Y† = U(γ).
            f.t_prime = -f.t_prime;
            f.s_prime = -f.s_prime;
            break;
        case GateKind::Z:
            ++f.eta;
            break;
        case GateKind::H:
            if (f.t_prime != 0 || f.s_prime != 0) {
                return std::nullopt;
            }
            ++f.eta;
            break;
        case GateKind::T:
            ++f.t_prime;
            break;
        case GateKind::S:
            ++f.s_prime;
            break;
        case GateKind::CNOT:
            return std::nullopt;
        }
    }
    return f;
}

IntegerForm literal_counter_update(const IntegerForm &prev, const QubitProfile &p) {
    IntegerForm out = prev;
    out.eta = prev.eta + p.eta_contribution();
    if (prev.t_prime == 0) {
        out.t_prime = parity_sign(p.x_after_t + p.y_after_t) * p.t;
    } else {
        out.t_prime = parity_sign(p.x + p.y) * sign_of(prev.t_prime) * (std::abs(prev.t_prime) + p.t);
    }
    if (prev.s_prime == 0) {
        out.s_prime = parity_sign(p.x_after_s + p.y_after_s) * p.s;
    } else {
        out.s_prime = parity_sign(p.x + p.y) * sign_of(prev.s_prime) * (std::abs(prev.s_prime) + p.s);
    }
    return out;
}

DecTuple update_dec(const DecTuple &prev, const GateProgram &prog, const ProgramProfile &prof,
                    UpdateOptions options) {
    const std::size_t count = prev.components.size();
    std::map<QubitLabel, std::size_t> owner;
    for (std::size_t i = 0; i < count; ++i) {
        for (const QubitLabel &q : prev.components[i].qubits()) {
            owner[q] = i;
        }
    }
    auto owner_of = [&](const QubitLabel &q) {
        auto it = owner.find(q);
        if (it == owner.end()) {
            throw ProtocolViolation("update_dec: gate on qubit " + q + " not covered by the Dec tuple");
        }
        return it->second;
    };

    // Union components joined by a CNOT in this program.
    std::vector<std::size_t> parent(count);
    for (std::size_t i = 0; i < count; ++i) {
        parent[i] = i;
    }
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            i = parent[i];
        }
        return i;
    };
    for (const Gate &g : prog.gates) {
        for (const QubitLabel &q : g.operands) {
            owner_of(q);
        }
        if (g.kind == GateKind::CNOT) {
            const std::size_t a = find(owner_of(g.operands[0]));
            const std::size_t b = find(owner_of(g.operands[1]));
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < count; ++i) {
        groups[find(i)].push_back(i);
    }

    DecTuple next;
    for (const auto &[root, members] : groups) {
        std::vector<QubitLabel> qubits;
        for (std::size_t i : members) {
            const auto qs = prev.components[i].qubits();
            qubits.insert(qubits.end(), qs.begin(), qs.end());
        }
        const GateProgram local = restrict_to(prog, qubits);

        if (members.size() == 1) {
            const DecComponent &c = prev.components[members.front()];
            if (c.is_integer() && !options.force_matrix) {
                const QubitProfile &qp = prof.at(c.integer().qubit);
                if (!qp.h_after_ts && !qp.z_after_ts) {
                    if (auto updated = exact_counter_update(c.integer(), local)) {
                        next.components.push_back(DecComponent{*updated});
                        continue;
                    }
                }
            }
            if (local.gates.empty() && !c.is_integer()) {
                next.components.push_back(c);
                continue;
            }
        }

        MatrixForm m;
        m.kind = qubits.size() == 1 ? MatrixForm::Kind::kH : MatrixForm::Kind::kCN;
        m.conjugator = composite_matrix(local, qubits);
        m.group = std::move(qubits);
        for (std::size_t i : members) {
            m.inner.push_back(prev.components[i]);
        }
        next.components.push_back(DecComponent{std::move(m)});
    }
    return next;
}

std::vector<Matrix> final_rhs(const DecTuple &dec, double sigma2) {
    std::vector<Matrix> out;
    out.reserve(dec.components.size());
    for (const DecComponent &c : dec.components) {
        out.push_back(c.evaluate(sigma2));
    }
    return out;
}

std::vector<MaskBits> mask_for(const DecComponent &c, const FinalMask &mask) {
    std::vector<MaskBits> bits;
    for (const QubitLabel &q : c.qubits()) {
        auto it = mask.find(q);
        if (it == mask.end()) {
            throw NotFound("mask_for: no mask bits for qubit " + q);
        }
        bits.push_back(it->second);
    }
    return bits;
}

std::vector<Matrix> client_final(const DecTuple &dec, const KeyMaterial &km, const FinalMask &mask, double tol) {
    const std::vector<Matrix> rhs = final_rhs(dec, km.sigma2);
    std::vector<Matrix> out;
    out.reserve(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const std::vector<MaskBits> bits = mask_for(dec.components[i], mask);
        out.push_back(solve_blinded(rhs[i], km.sigma2, bits, tol));
    }
    return out;
}

Statevector apply_qprime(Statevector sv, const DecTuple &dec, std::span<const Matrix> qprime, double tol) {
    if (qprime.size() != dec.components.size()) {
        throw ProtocolViolation("apply_qprime: one Q' matrix per Dec component required");
    }
    for (std::size_t i = 0; i < qprime.size(); ++i) {
        const std::vector<QubitLabel> qs = dec.components[i].qubits();
        sv = apply_block(std::move(sv), qs, qprime[i], tol);
    }
    return sv;
}

Statevector client_unmask(Statevector sv, const KeyMaterial &km, const FinalMask &mask) {
    const std::vector<QubitLabel> qubits = sv.qubit_ids();
    for (const QubitLabel &q : qubits) {
        auto it = mask.find(q);
        if (it == mask.end()) {
            throw NotFound("client_unmask: no mask bits for qubit " + q);
        }
        const MaskBits bits[] = {it->second};
        sv = apply_single(std::move(sv), q, blinding_prefix(km.sigma2, bits));
    }
    return sv;
}

}  // namespace tqhe
