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
 * A qubit register split into entanglement partitions.
 *
 * Each partition owns an amplitude vector over its qubits, with the first
 * qubit of the partition as the most significant bit. Partitions merge when
 * a multi-qubit operation touches qubits in different partitions and never
 * split again, even if the state happens to be separable.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tqhe/linalg.hpp"
#include "tqhe/random.hpp"

namespace tqhe {

using QubitLabel = std::string;

struct Partition {
    std::vector<QubitLabel> qubits;
    std::vector<cplx> amplitudes;
    friend bool operator==(const Partition &, const Partition &) = default;
};

class Statevector {
  public:
    Statevector() = default;
    Statevector(std::vector<QubitLabel> qubit_ids, std::vector<Partition> partitions);

    const std::vector<QubitLabel> &qubit_ids() const { return qubit_ids_; }
    const std::vector<Partition> &partitions() const { return partitions_; }

    bool contains(const QubitLabel &q) const;
    std::size_t partition_of(const QubitLabel &q) const;
    std::size_t position_of(const QubitLabel &q) const;

    /// Adds a fresh singleton qubit at `position` in the qubit order.
    void insert_qubit(std::size_t position, const QubitLabel &label, std::vector<cplx> amplitudes);

    /// Removes a qubit that sits alone in its partition.
    void remove_qubit(const QubitLabel &label);

    /// Merges the partitions holding `qubits` into one and returns its index.
    std::size_t merge(std::span<const QubitLabel> qubits);

    /// Applies a 2^j × 2^j matrix to `qubits` (first label most significant).
    /// The partitions involved must already be merged.
    void apply_in_partition(std::size_t partition, std::span<const QubitLabel> qubits, const Matrix &m);

    /// Projective measurement with collapse; `hadamard` selects the |±⟩ basis.
    /// Outcome 0 is |0⟩ or |+⟩.
    bool measure(const QubitLabel &q, bool hadamard, Rng &rng);

    friend bool operator==(const Statevector &, const Statevector &) = default;

  private:
    std::vector<QubitLabel> qubit_ids_;
    std::vector<Partition> partitions_;
};

/// Plaintext qubit i is cos α_i |0⟩ + sin α_i |1⟩.
struct PlaintextSpec {
    std::vector<QubitLabel> qubits;
    std::vector<double> angles;
};

enum class Basis { kComputational, kHadamard };

struct DecoyState {
    Basis basis = Basis::kComputational;
    bool value = false;
    std::size_t position = 0;
    friend bool operator==(const DecoyState &, const DecoyState &) = default;
};

/// |0⟩, |1⟩, |+⟩ or |−⟩.
std::vector<cplx> decoy_amplitudes(const DecoyState &d);

Statevector prepare(const PlaintextSpec &spec);

Statevector apply_single(Statevector sv, const QubitLabel &qubit, const Matrix &m, double tol = kTolerance);

Statevector apply_cnot(Statevector sv, const QubitLabel &control, const QubitLabel &target);

Statevector apply_block(Statevector sv, std::span<const QubitLabel> qubits, const Matrix &m,
                        double tol = kTolerance);

/// Measures a decoy qubit in its preparation basis. The decoy must be alone
/// in its partition.
bool measure_decoy(Statevector &sv, const QubitLabel &qubit, Basis basis, Rng &rng);

/// Amplitudes of the full register restricted to `order`, with order[0] most
/// significant. Every partition touching `order` must lie entirely inside it.
std::vector<cplx> amplitudes(const Statevector &sv, std::span<const QubitLabel> order);

bool equal_up_to_global_phase(const Statevector &a, const Statevector &b, double tol = kTolerance);

bool equal_exact(const Statevector &a, const Statevector &b, double tol = kTolerance);

/// |⟨a|b⟩|² over the qubits of `a`.
double fidelity(const Statevector &a, const Statevector &b);

}  // namespace tqhe
