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

#include "tqhe/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

std::vector<cplx> kron(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out;
    out.reserve(a.size() * b.size());
    for (cplx x : a) {
        for (cplx y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

double norm2(std::span<const cplx> v) {
    double acc = 0.0;
    for (cplx x : v) {
        acc += std::norm(x);
    }
    return acc;
}

std::vector<QubitLabel> sorted_labels(std::vector<QubitLabel> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

Statevector::Statevector(std::vector<QubitLabel> qubit_ids, std::vector<Partition> partitions)
    : qubit_ids_(std::move(qubit_ids)), partitions_(std::move(partitions)) {
    std::set<QubitLabel> seen;
    for (const Partition &p : partitions_) {
        if (p.qubits.empty() || p.amplitudes.size() != (std::size_t{1} << p.qubits.size())) {
            throw InvalidArgument("Statevector: partition amplitude count must be 2^|qubits|");
        }
        if (std::abs(norm2(p.amplitudes) - 1.0) > kTolerance) {
            throw InvalidArgument("Statevector: partition amplitudes must have unit norm");
        }
        for (const QubitLabel &q : p.qubits) {
            if (!seen.insert(q).second) {
                throw InvalidArgument("Statevector: qubit " + q + " appears in two partitions");
            }
        }
    }
    if (seen != std::set<QubitLabel>(qubit_ids_.begin(), qubit_ids_.end()) || seen.size() != qubit_ids_.size()) {
        throw InvalidArgument("Statevector: partitions must cover the qubit list exactly");
    }
}

bool Statevector::contains(const QubitLabel &q) const {
    return std::find(qubit_ids_.begin(), qubit_ids_.end(), q) != qubit_ids_.end();
}

std::size_t Statevector::partition_of(const QubitLabel &q) const {
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        const auto &qs = partitions_[i].qubits;
        if (std::find(qs.begin(), qs.end(), q) != qs.end()) {
            return i;
        }
    }
    throw NotFound("unknown qubit " + q);
}

std::size_t Statevector::position_of(const QubitLabel &q) const {
    auto it = std::find(qubit_ids_.begin(), qubit_ids_.end(), q);
    if (it == qubit_ids_.end()) {
        throw NotFound("unknown qubit " + q);
    }
    return static_cast<std::size_t>(it - qubit_ids_.begin());
}

void Statevector::insert_qubit(std::size_t position, const QubitLabel &label, std::vector<cplx> amps) {
    if (contains(label)) {
        throw InvalidArgument("insert_qubit: label " + label + " already present");
    }
    if (amps.size() != 2) {
        throw InvalidArgument("insert_qubit: a single qubit has two amplitudes");
    }
    if (std::abs(norm2(amps) - 1.0) > kTolerance) {
        throw InvalidArgument("insert_qubit: amplitudes must have unit norm");
    }
    position = std::min(position, qubit_ids_.size());
    qubit_ids_.insert(qubit_ids_.begin() + static_cast<std::ptrdiff_t>(position), label);
    partitions_.push_back(Partition{{label}, std::move(amps)});
}

void Statevector::remove_qubit(const QubitLabel &label) {
    const std::size_t p = partition_of(label);
    if (partitions_[p].qubits.size() != 1) {
        throw ProtocolViolation("remove_qubit: " + label + " is entangled with other qubits");
    }
    partitions_.erase(partitions_.begin() + static_cast<std::ptrdiff_t>(p));
    qubit_ids_.erase(qubit_ids_.begin() + static_cast<std::ptrdiff_t>(position_of(label)));
}

std::size_t Statevector::merge(std::span<const QubitLabel> qubits) {
    if (qubits.empty()) {
        throw InvalidArgument("merge: no qubits");
    }
    std::vector<std::size_t> involved;
    for (const QubitLabel &q : qubits) {
        const std::size_t p = partition_of(q);
        if (std::find(involved.begin(), involved.end(), p) == involved.end()) {
            involved.push_back(p);
        }
    }
    if (involved.size() == 1) {
        return involved.front();
    }
    Partition merged = partitions_[involved.front()];
    for (std::size_t i = 1; i < involved.size(); ++i) {
        const Partition &next = partitions_[involved[i]];
        merged.amplitudes = kron(merged.amplitudes, next.amplitudes);
        merged.qubits.insert(merged.qubits.end(), next.qubits.begin(), next.qubits.end());
    }
    std::sort(involved.begin(), involved.end());
    const std::size_t keep = involved.front();
    partitions_[keep] = std::move(merged);
    for (auto it = involved.rbegin(); it != involved.rend() && *it != keep; ++it) {
        partitions_.erase(partitions_.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    return keep;
}

void Statevector::apply_in_partition(std::size_t partition, std::span<const QubitLabel> qubits, const Matrix &m) {
    Partition &p = partitions_.at(partition);
    const std::size_t n = p.qubits.size();
    const std::size_t j = qubits.size();
    if (m.rows() != (std::size_t{1} << j) || !m.square()) {
        throw InvalidArgument("apply_in_partition: matrix is not 2^j x 2^j for j operands");
    }
    // Bit shifts for each operand, operand 0 most significant in the local index.
    std::vector<std::size_t> shift(j);
    std::size_t operand_mask = 0;
    for (std::size_t k = 0; k < j; ++k) {
        auto it = std::find(p.qubits.begin(), p.qubits.end(), qubits[k]);
        if (it == p.qubits.end()) {
            throw InvalidArgument("apply_in_partition: qubit " + qubits[k] + " not in partition");
        }
        shift[k] = n - 1 - static_cast<std::size_t>(it - p.qubits.begin());
        if (operand_mask & (std::size_t{1} << shift[k])) {
            throw InvalidArgument("apply_in_partition: repeated operand " + qubits[k]);
        }
        operand_mask |= std::size_t{1} << shift[k];
    }
    const std::size_t dim = std::size_t{1} << j;
    std::vector<std::size_t> offsets(dim);
    for (std::size_t local = 0; local < dim; ++local) {
        std::size_t off = 0;
        for (std::size_t k = 0; k < j; ++k) {
            if (local & (std::size_t{1} << (j - 1 - k))) {
                off |= std::size_t{1} << shift[k];
            }
        }
        offsets[local] = off;
    }
    std::vector<cplx> gathered(dim);
    for (std::size_t base = 0; base < p.amplitudes.size(); ++base) {
        if (base & operand_mask) {
            continue;
        }
        for (std::size_t local = 0; local < dim; ++local) {
            gathered[local] = p.amplitudes[base | offsets[local]];
        }
        const std::vector<cplx> out = tqhe::apply(m, gathered);
        for (std::size_t local = 0; local < dim; ++local) {
            p.amplitudes[base | offsets[local]] = out[local];
        }
    }
}

bool Statevector::measure(const QubitLabel &q, bool hadamard_basis, Rng &rng) {
    const std::size_t pi = partition_of(q);
    const QubitLabel qs[] = {q};
    if (hadamard_basis) {
        apply_in_partition(pi, qs, hadamard());
    }
    Partition &p = partitions_[pi];
    const std::size_t n = p.qubits.size();
    const std::size_t bit =
        std::size_t{1} << (n - 1 - static_cast<std::size_t>(std::find(p.qubits.begin(), p.qubits.end(), q) -
                                                            p.qubits.begin()));
    double p1 = 0.0;
    for (std::size_t i = 0; i < p.amplitudes.size(); ++i) {
        if (i & bit) {
            p1 += std::norm(p.amplitudes[i]);
        }
    }
    p1 = std::clamp(p1 / norm2(p.amplitudes), 0.0, 1.0);
    const bool outcome = rng.uniform() < p1;
    const double keep = outcome ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(keep);
    for (std::size_t i = 0; i < p.amplitudes.size(); ++i) {
        const bool is_one = (i & bit) != 0;
        p.amplitudes[i] = is_one == outcome ? p.amplitudes[i] * scale : cplx{};
    }
    if (hadamard_basis) {
        apply_in_partition(pi, qs, hadamard());
    }
    return outcome;
}

std::vector<cplx> decoy_amplitudes(const DecoyState &d) {
    if (d.basis == Basis::kComputational) {
        return d.value ? std::vector<cplx>{0.0, 1.0} : std::vector<cplx>{1.0, 0.0};
    }
    const double r = 1.0 / std::sqrt(2.0);
    return d.value ? std::vector<cplx>{r, -r} : std::vector<cplx>{r, r};
}

Statevector prepare(const PlaintextSpec &spec) {
    if (spec.qubits.empty()) {
        throw InvalidArgument("prepare: empty plaintext");
    }
    if (spec.qubits.size() != spec.angles.size()) {
        throw InvalidArgument("prepare: one angle per qubit required");
    }
    std::vector<Partition> parts;
    for (std::size_t i = 0; i < spec.qubits.size(); ++i) {
        const double a = spec.angles[i];
        if (!std::isfinite(a)) {
            throw InvalidArgument("prepare: non-finite angle for " + spec.qubits[i]);
        }
        parts.push_back(Partition{{spec.qubits[i]}, {std::cos(a), std::sin(a)}});
    }
    return Statevector(spec.qubits, std::move(parts));
}

Statevector apply_single(Statevector sv, const QubitLabel &qubit, const Matrix &m, double tol) {
    if (m.rows() != 2 || m.cols() != 2) {
        throw InvalidArgument("apply_single: matrix must be 2x2");
    }
    if (!is_unitary(m, tol)) {
        throw InvalidArgument("apply_single: matrix is not unitary");
    }
    const std::size_t p = sv.partition_of(qubit);
    const QubitLabel qs[] = {qubit};
    sv.apply_in_partition(p, qs, m);
    return sv;
}

Statevector apply_cnot(Statevector sv, const QubitLabel &control, const QubitLabel &target) {
    if (control == target) {
        throw InvalidArgument("apply_cnot: control and target must differ");
    }
    const QubitLabel qs[] = {control, target};
    const std::size_t p = sv.merge(qs);
    const Matrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    sv.apply_in_partition(p, qs, cnot);
    return sv;
}

Statevector apply_block(Statevector sv, std::span<const QubitLabel> qubits, const Matrix &m, double tol) {
    if (qubits.empty() || m.rows() != (std::size_t{1} << qubits.size()) || !m.square()) {
        throw InvalidArgument("apply_block: matrix dimension does not match operand count");
    }
    if (std::set<QubitLabel>(qubits.begin(), qubits.end()).size() != qubits.size()) {
        throw InvalidArgument("apply_block: operands must be distinct");
    }
    if (!is_unitary(m, tol)) {
        throw InvalidArgument("apply_block: matrix is not unitary");
    }
    const std::size_t p = sv.merge(qubits);
    sv.apply_in_partition(p, qubits, m);
    return sv;
}

bool measure_decoy(Statevector &sv, const QubitLabel &qubit, Basis basis, Rng &rng) {
    const std::size_t p = sv.partition_of(qubit);
    if (sv.partitions()[p].qubits.size() != 1) {
        throw ProtocolViolation("measure_decoy: decoy " + qubit + " is entangled");
    }
    return sv.measure(qubit, basis == Basis::kHadamard, rng);
}

std::vector<cplx> amplitudes(const Statevector &sv, std::span<const QubitLabel> order) {
    // Collect the partitions that cover `order`, in order of first appearance.
    std::vector<std::size_t> parts;
    for (const QubitLabel &q : order) {
        const std::size_t p = sv.partition_of(q);
        if (std::find(parts.begin(), parts.end(), p) == parts.end()) {
            parts.push_back(p);
        }
    }
    std::vector<QubitLabel> source_order;
    std::vector<cplx> joint{1.0};
    for (std::size_t p : parts) {
        const Partition &part = sv.partitions()[p];
        source_order.insert(source_order.end(), part.qubits.begin(), part.qubits.end());
        joint = kron(joint, part.amplitudes);
    }
    if (source_order.size() != order.size()) {
        throw InvalidArgument("amplitudes: requested qubits split an entangled partition");
    }
    const std::size_t n = order.size();
    // For target bit k (order[k]) find its position in the source order.
    std::vector<std::size_t> source_shift(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto pos = static_cast<std::size_t>(std::find(source_order.begin(), source_order.end(), order[k]) -
                                                  source_order.begin());
        source_shift[k] = n - 1 - pos;
    }
    std::vector<cplx> out(joint.size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t src = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (idx & (std::size_t{1} << (n - 1 - k))) {
                src |= std::size_t{1} << source_shift[k];
            }
        }
        out[idx] = joint[src];
    }
    return out;
}

namespace {

void require_same_qubits(const Statevector &a, const Statevector &b) {
    if (sorted_labels(a.qubit_ids()) != sorted_labels(b.qubit_ids())) {
        throw InvalidArgument("state comparison: qubit sets differ");
    }
}

}  // namespace

bool equal_up_to_global_phase(const Statevector &a, const Statevector &b, double tol) {
    require_same_qubits(a, b);
    const std::vector<cplx> va = amplitudes(a, a.qubit_ids());
    const std::vector<cplx> vb = amplitudes(b, a.qubit_ids());
    cplx overlap{};
    for (std::size_t i = 0; i < va.size(); ++i) {
        overlap += std::conj(vb[i]) * va[i];
    }
    const cplx c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (std::abs(va[i] - c * vb[i]) > tol) {
            return false;
        }
    }
    return true;
}

bool equal_exact(const Statevector &a, const Statevector &b, double tol) {
    require_same_qubits(a, b);
    const std::vector<cplx> va = amplitudes(a, a.qubit_ids());
    const std::vector<cplx> vb = amplitudes(b, a.qubit_ids());
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (std::abs(va[i] - vb[i]) > tol) {
            return false;
        }
    }
    return true;
}

double fidelity(const Statevector &a, const Statevector &b) {
    require_same_qubits(a, b);
    const std::vector<cplx> va = amplitudes(a, a.qubit_ids());
    const std::vector<cplx> vb = amplitudes(b, a.qubit_ids());
    cplx overlap{};
    for (std::size_t i = 0; i < va.size(); ++i) {
        overlap += std::conj(va[i]) * vb[i];
    }
    return std::norm(overlap);
}

}  // namespace tqhe
