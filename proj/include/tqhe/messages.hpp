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
 * Messages exchanged between the client and the evaluators.
 *
 * Every message is a JSON object with a "kind" field:
 *
 *   QubitSequence  hop, attempt, register (qubit order is the transmitted order)
 *   FinalQubits    same shape as QubitSequence, for the evaluator → client leg
 *   DecoyAnnounce  hop, attempt, positions, bases ("Z" or "X")
 *   DecoyResults   hop, attempt, outcomes (0/1 per announced position)
 *   DecoyVerdict   hop, attempt, accepted
 *   ClassicalTuple hop, dec (Dec components; matrix recipes as composite + inner)
 *   QPrime         matrices, one per component of the last Dec tuple
 *   Abort          hop, reason
 */

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tqhe/linalg.hpp"
#include "tqhe/protocol.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

struct QubitSequence {
    int hop = 0;
    int attempt = 0;
    /// True for the last evaluator's return transmission (kind FinalQubits).
    bool final_return = false;
    Statevector reg;
    friend bool operator==(const QubitSequence &, const QubitSequence &) = default;
};

struct DecoyAnnounce {
    int hop = 0;
    int attempt = 0;
    std::vector<std::size_t> positions;
    std::vector<Basis> bases;
    friend bool operator==(const DecoyAnnounce &, const DecoyAnnounce &) = default;
};

struct DecoyResults {
    int hop = 0;
    int attempt = 0;
    std::vector<bool> outcomes;
    friend bool operator==(const DecoyResults &, const DecoyResults &) = default;
};

struct DecoyVerdict {
    int hop = 0;
    int attempt = 0;
    bool accepted = false;
    friend bool operator==(const DecoyVerdict &, const DecoyVerdict &) = default;
};

struct ClassicalTuple {
    int hop = 0;
    DecTuple dec;
    friend bool operator==(const ClassicalTuple &, const ClassicalTuple &) = default;
};

struct QPrime {
    std::vector<Matrix> matrices;
    friend bool operator==(const QPrime &, const QPrime &) = default;
};

struct Abort {
    int hop = 0;
    std::string reason;
    friend bool operator==(const Abort &, const Abort &) = default;
};

using Message = std::variant<QubitSequence, DecoyAnnounce, DecoyResults, DecoyVerdict, ClassicalTuple, QPrime, Abort>;

std::string encode(const Message &m);
Message decode(std::string_view text);

/// The "kind" string of an encoded message.
std::string_view kind_of(const Message &m);

}  // namespace tqhe
