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

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tqhe/linalg.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

enum class GateKind { X, Y, Z, H, S, T, CNOT };

std::string_view gate_name(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

/// One gate. For CNOT `operands` is (control, target); otherwise one qubit.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<QubitLabel> operands;

    Gate() = default;
    Gate(GateKind k, QubitLabel q);
    Gate(GateKind k, QubitLabel control, QubitLabel target);

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Gates in application order (first element applied first).
struct GateProgram {
    std::vector<Gate> gates;

    bool touches(const QubitLabel &q) const;
    friend bool operator==(const GateProgram &, const GateProgram &) = default;
};

/// Parses `X q0; CNOT q0 q1; H q1`. Separators are ';' or newlines; an empty
/// string is the empty program.
GateProgram parse_program(std::string_view text);
std::string format_program(const GateProgram &p);

/// Standard 2×2 matrix, or 4×4 for CNOT with the control as high-order bit.
Matrix gate_matrix(GateKind kind);
Matrix gate_matrix(const Gate &g);

/// Single-qubit gate counts for one qubit within one program.
struct QubitProfile {
    int x = 0, y = 0, z = 0, h = 0, t = 0, s = 0;
    /// X / Y gates strictly after the first T on this qubit.
    int x_after_t = 0, y_after_t = 0;
    /// X / Y gates strictly after the first S on this qubit.
    int x_after_s = 0, y_after_s = 0;
    /// Some H comes after some T or S on this qubit.
    bool h_after_ts = false;
    /// Some Z comes after some T or S on this qubit.
    bool z_after_ts = false;
    /// The qubit is an operand of at least one CNOT.
    bool has_cnot = false;

    int single_qubit_gates() const { return x + y + z + h + t + s; }
    /// Contribution x + z + h to the η counter.
    int eta_contribution() const { return x + z + h; }
    friend bool operator==(const QubitProfile &, const QubitProfile &) = default;
};

struct ProgramProfile {
    std::map<QubitLabel, QubitProfile> qubits;
    /// Connected components over CNOT operand pairs; singletons for every
    /// other qubit the program touches. Labels keep first-touch order.
    std::vector<std::vector<QubitLabel>> groups;

    const QubitProfile &at(const QubitLabel &q) const;
};

ProgramProfile profile(const GateProgram &p);

/// Gates of `p` that touch any qubit of `group`, in order. Throws if a CNOT
/// straddles the group boundary.
GateProgram restrict_to(const GateProgram &p, std::span<const QubitLabel> group);

/// Product of the program's gates lifted onto `group` (group[0] most
/// significant), later gates multiplied on the left.
Matrix composite_matrix(const GateProgram &p, std::span<const QubitLabel> group);

/// Runs the program gate by gate on a register.
Statevector apply_program(Statevector sv, const GateProgram &p);

}  // namespace tqhe
