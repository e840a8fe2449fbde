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
 * Encryption, partial decryption and the Dec tuple that travels with the
 * ciphertext from evaluator to evaluator.
 *
 * Every Dec component is a recipe D(γ) satisfying D(γ) = G U(γ) G† for the
 * gates G accumulated so far on its qubits. A component is either the
 * compact integer triple (η, t′, s′), meaning
 *
 *     D(γ) = E(πs′/2 + πt′/4) · U((−1)^η γ) · E(−πs′/2 − πt′/4),
 *
 * or a matrix recipe D(γ) = C · (⊗ inner_i(γ)) · C†, where C is the composite
 * of one evaluator's gates on the group and inner_i are the components the
 * group was assembled from.
 */

#pragma once

#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tqhe/gates.hpp"
#include "tqhe/keygen.hpp"
#include "tqhe/linalg.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

struct IntegerForm {
    QubitLabel qubit;
    int eta = 0;
    int t_prime = 0;
    int s_prime = 0;

    /// πs′/2 + πt′/4
    double phase() const;
    friend bool operator==(const IntegerForm &, const IntegerForm &) = default;
};

struct DecComponent;

struct MatrixForm {
    /// kH: one qubit with H after T/S (U^H); kCN: a CNOT-joined group (U^CN).
    enum class Kind { kH, kCN };

    Kind kind = Kind::kH;
    std::vector<QubitLabel> group;
    Matrix conjugator;
    /// Components this group was built from; their qubits concatenated in
    /// order equal `group`.
    std::vector<DecComponent> inner;

    bool operator==(const MatrixForm &other) const;
};

struct DecComponent {
    std::variant<IntegerForm, MatrixForm> form;

    bool is_integer() const { return std::holds_alternative<IntegerForm>(form); }
    const IntegerForm &integer() const { return std::get<IntegerForm>(form); }
    const MatrixForm &matrix() const { return std::get<MatrixForm>(form); }

    std::vector<QubitLabel> qubits() const;
    /// D(γ) as a 2^j × 2^j matrix over qubits().
    Matrix evaluate(double gamma) const;

    friend bool operator==(const DecComponent &, const DecComponent &) = default;
};

struct DecTuple {
    std::vector<DecComponent> components;

    std::vector<QubitLabel> qubits() const;
    bool all_integer() const;
    friend bool operator==(const DecTuple &, const DecTuple &) = default;
};

/// Blinding bits per data qubit; never leave the client.
using FinalMask = std::map<QubitLabel, MaskBits>;

/// E(φ) U((−1)^η γ) E(−φ) for an integer component.
Matrix integer_recipe(const IntegerForm &f, double gamma);

/// Applies U(2π − σ₁ − σ₂) to every plaintext qubit.
Statevector encrypt(const PlaintextSpec &spec, const KeyMaterial &km);

/// All-zero integer components, one per qubit.
DecTuple initial_dec(std::span<const QubitLabel> qubits);

/// Applies every component's D(θ) to the register.
Statevector partial_decrypt(Statevector sv, const DecTuple &dec, double theta, double tol = kTolerance);

/**
 * Tracks one qubit's integer recipe through a single-qubit gate sequence,
 * conjugating gate by gate. Returns nullopt when an H meets a non-zero
 * accumulated phase, which has no integer representation.
 */
std::optional<IntegerForm> exact_counter_update(IntegerForm prev, const GateProgram &on_qubit);

/**
 * The closed-form counter rules as published for the T/S case:
 * η += x + z + h, and t′ (resp. s′) is (−1)^{x^T + y^T}·t when the incoming
 * t′ is zero, otherwise (−1)^{x + y}·sgn(t′)(|t′| + t). These rules are not a
 * faithful conjugation for every gate order (e.g. incoming t′ = 1 followed by
 * `X T`), so the protocol itself uses exact_counter_update.
 */
IntegerForm literal_counter_update(const IntegerForm &prev, const QubitProfile &p);

struct UpdateOptions {
    /// Escalate every component to a matrix recipe (reference runs).
    bool force_matrix = false;
};

/// Dec tuple after an evaluator applied `prog`.
DecTuple update_dec(const DecTuple &prev, const GateProgram &prog, const ProgramProfile &prof,
                    UpdateOptions options = {});

/// D_k(σ₂) per component, the matrix that would finish decryption.
std::vector<Matrix> final_rhs(const DecTuple &dec, double sigma2);

/// Mask bits for a component, in its qubit order.
std::vector<MaskBits> mask_for(const DecComponent &c, const FinalMask &mask);

/// Blinded Q′ per component for the last evaluator.
std::vector<Matrix> client_final(const DecTuple &dec, const KeyMaterial &km, const FinalMask &mask,
                                 double tol = kTolerance);

/// Last evaluator's step: apply each Q′ block on its component's qubits.
Statevector apply_qprime(Statevector sv, const DecTuple &dec, std::span<const Matrix> qprime,
                         double tol = kTolerance);

/// Client's last step: X^a Z^b U(σ₂) on each qubit.
Statevector client_unmask(Statevector sv, const KeyMaterial &km, const FinalMask &mask);

}  // namespace tqhe
