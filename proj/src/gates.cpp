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

#include "tqhe/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

constexpr GateKind kAllKinds[] = {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H,
                                  GateKind::S, GateKind::T, GateKind::CNOT};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::size_t index_in(std::span<const QubitLabel> group, const QubitLabel &q) {
    auto it = std::find(group.begin(), group.end(), q);
    if (it == group.end()) {
        throw InvalidArgument("qubit " + q + " is outside the group");
    }
    return static_cast<std::size_t>(it - group.begin());
}

/// Lifts a single-qubit matrix onto position `pos` of an n-qubit block.
Matrix lift_single(const Matrix &m, std::size_t pos, std::size_t n) {
    std::vector<Matrix> factors(n, Matrix::identity(2));
    factors[pos] = m;
    return tensor_all(factors);
}

Matrix lift_cnot(std::size_t control, std::size_t target, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t cbit = std::size_t{1} << (n - 1 - control);
    const std::size_t tbit = std::size_t{1} << (n - 1 - target);
    Matrix out(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t row = (col & cbit) ? (col ^ tbit) : col;
        out(row, col) = 1.0;
    }
    return out;
}

}  // namespace

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X:
        return "X";
    case GateKind::Y:
        return "Y";
    case GateKind::Z:
        return "Z";
    case GateKind::H:
        return "H";
    case GateKind::S:
        return "S";
    case GateKind::T:
        return "T";
    case GateKind::CNOT:
        return "CNOT";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (GateKind k : kAllKinds) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

Gate::Gate(GateKind k, QubitLabel q) : kind(k), operands{std::move(q)} {
    if (k == GateKind::CNOT) {
        throw InvalidArgument("CNOT needs a control and a target");
    }
}

Gate::Gate(GateKind k, QubitLabel control, QubitLabel target) : kind(k), operands{std::move(control), std::move(target)} {
    if (k != GateKind::CNOT) {
        throw InvalidArgument(std::string(gate_name(k)) + " takes one operand");
    }
    if (operands[0] == operands[1]) {
        throw InvalidArgument("CNOT operands must differ");
    }
}

bool GateProgram::touches(const QubitLabel &q) const {
    return std::any_of(gates.begin(), gates.end(), [&](const Gate &g) {
        return std::find(g.operands.begin(), g.operands.end(), q) != g.operands.end();
    });
}

GateProgram parse_program(std::string_view text) {
    GateProgram p;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find_first_of(";\n", start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view token = trim(text.substr(start, end - start));
        start = end + 1;
        if (token.empty()) {
            continue;
        }
        std::istringstream in{std::string(token)};
        std::string name;
        std::vector<std::string> args;
        in >> name;
        for (std::string a; in >> a;) {
            args.push_back(a);
        }
        const auto kind = parse_gate_kind(name);
        if (!kind) {
            throw InvalidArgument("unknown gate '" + name + "'");
        }
        if (*kind == GateKind::CNOT) {
            if (args.size() != 2) {
                throw InvalidArgument("CNOT expects two operands in '" + std::string(token) + "'");
            }
            p.gates.emplace_back(*kind, args[0], args[1]);
        } else {
            if (args.size() != 1) {
                throw InvalidArgument(name + " expects one operand in '" + std::string(token) + "'");
            }
            p.gates.emplace_back(*kind, args[0]);
        }
    }
    return p;
}

std::string format_program(const GateProgram &p) {
    std::string out;
    for (const Gate &g : p.gates) {
        if (!out.empty()) {
            out += "; ";
        }
        out += gate_name(g.kind);
        for (const QubitLabel &q : g.operands) {
            out += ' ';
            out += q;
        }
    }
    return out;
}

Matrix gate_matrix(GateKind kind) {
    switch (kind) {
    case GateKind::X:
        return pauli_x();
    case GateKind::Y:
        return pauli_y();
    case GateKind::Z:
        return pauli_z();
    case GateKind::H:
        return hadamard();
    case GateKind::S:
        return e_phase(std::numbers::pi / 2);
    case GateKind::T:
        return e_phase(std::numbers::pi / 4);
    case GateKind::CNOT:
        return lift_cnot(0, 1, 2);
    }
    throw InvalidArgument("gate_matrix: unknown gate kind");
}

Matrix gate_matrix(const Gate &g) { return gate_matrix(g.kind); }

const QubitProfile &ProgramProfile::at(const QubitLabel &q) const {
    static const QubitProfile kEmpty{};
    auto it = qubits.find(q);
    return it == qubits.end() ? kEmpty : it->second;
}

ProgramProfile profile(const GateProgram &p) {
    ProgramProfile out;
    struct Seen {
        bool t = false, s = false;
    };
    std::map<QubitLabel, Seen> seen;
    std::vector<QubitLabel> first_touch;
    auto touch = [&](const QubitLabel &q) -> QubitProfile & {
        if (out.qubits.find(q) == out.qubits.end()) {
            first_touch.push_back(q);
        }
        return out.qubits[q];
    };

    for (const Gate &g : p.gates) {
        if (g.kind == GateKind::CNOT) {
            touch(g.operands[0]).has_cnot = true;
            touch(g.operands[1]).has_cnot = true;
            continue;
        }
        const QubitLabel &q = g.operands[0];
        QubitProfile &qp = touch(q);
        Seen &sn = seen[q];
        switch (g.kind) {
        case GateKind::X:
            ++qp.x;
            qp.x_after_t += sn.t;
            qp.x_after_s += sn.s;
            break;
        case GateKind::Y:
            ++qp.y;
            qp.y_after_t += sn.t;
            qp.y_after_s += sn.s;
            break;
        case GateKind::Z:
            ++qp.z;
            qp.z_after_ts = qp.z_after_ts || sn.t || sn.s;
            break;
        case GateKind::H:
            ++qp.h;
            qp.h_after_ts = qp.h_after_ts || sn.t || sn.s;
            break;
        case GateKind::T:
            ++qp.t;
            sn.t = true;
            break;
        case GateKind::S:
            ++qp.s;
            sn.s = true;
            break;
        case GateKind::CNOT:
            break;
        }
    }

    // Connected components over CNOT pairs.
    std::map<QubitLabel, QubitLabel> parent;
    for (const QubitLabel &q : first_touch) {
        parent[q] = q;
    }
    auto find = [&](QubitLabel q) {
        while (parent[q] != q) {
            q = parent[q];
        }
        return q;
    };
    for (const Gate &g : p.gates) {
        if (g.kind == GateKind::CNOT) {
            const QubitLabel a = find(g.operands[0]);
            const QubitLabel b = find(g.operands[1]);
            if (a != b) {
                parent[b] = a;
            }
        }
    }
    std::map<QubitLabel, std::size_t> group_of_root;
    for (const QubitLabel &q : first_touch) {
        const QubitLabel root = find(q);
        auto [it, inserted] = group_of_root.emplace(root, out.groups.size());
        if (inserted) {
            out.groups.emplace_back();
        }
        out.groups[it->second].push_back(q);
    }
    return out;
}

GateProgram restrict_to(const GateProgram &p, std::span<const QubitLabel> group) {
    GateProgram out;
    for (const Gate &g : p.gates) {
        int inside = 0;
        for (const QubitLabel &q : g.operands) {
            inside += std::find(group.begin(), group.end(), q) != group.end();
        }
        if (inside == 0) {
            continue;
        }
        if (inside != static_cast<int>(g.operands.size())) {
            throw InvalidArgument("restrict_to: CNOT crosses the group boundary");
        }
        out.gates.push_back(g);
    }
    return out;
}

Matrix composite_matrix(const GateProgram &p, std::span<const QubitLabel> group) {
    const std::size_t n = group.size();
    if (n == 0 || n > kMaxBlockQubits) {
        throw InvalidArgument("composite_matrix: group size must be in 1.." + std::to_string(kMaxBlockQubits));
    }
    Matrix acc = Matrix::identity(std::size_t{1} << n);
    for (const Gate &g : p.gates) {
        Matrix lifted = g.kind == GateKind::CNOT
                            ? lift_cnot(index_in(group, g.operands[0]), index_in(group, g.operands[1]), n)
                            : lift_single(gate_matrix(g.kind), index_in(group, g.operands[0]), n);
        acc = lifted * acc;
    }
    return acc;
}

Statevector apply_program(Statevector sv, const GateProgram &p) {
    for (const Gate &g : p.gates) {
        if (g.kind == GateKind::CNOT) {
            sv = apply_cnot(std::move(sv), g.operands[0], g.operands[1]);
        } else {
            sv = apply_single(std::move(sv), g.operands[0], gate_matrix(g.kind));
        }
    }
    return sv;
}

}  // namespace tqhe
