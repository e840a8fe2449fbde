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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "tqhe/error.hpp"
#include "tqhe/gates.hpp"
#include "tqhe/messages.hpp"

namespace {

using namespace tqhe;

Message round_trip(const Message &m) { return decode(encode(m)); }

Statevector sample_register() {
    Statevector sv = prepare(PlaintextSpec{{"a", "b", "c"}, {0.31, 1.7, -2.2}});
    sv = apply_program(sv, parse_program("H a; T a; CNOT a b"));
    return sv;
}

DecTuple sample_dec() {
    const GateProgram g1 = parse_program("T a; H a; X c");
    const GateProgram g2 = parse_program("CNOT a b");
    DecTuple d = update_dec(initial_dec(std::vector<QubitLabel>{"a", "b", "c"}), g1, profile(g1));
    return update_dec(d, g2, profile(g2));
}

TEST(Messages, QubitSequenceRoundTrip) {
    const QubitSequence q{2, 1, false, sample_register()};
    EXPECT_EQ(round_trip(q), Message{q});
    EXPECT_EQ(kind_of(q), "QubitSequence");
    const QubitSequence f{4, 0, true, sample_register()};
    EXPECT_EQ(round_trip(f), Message{f});
    EXPECT_EQ(kind_of(f), "FinalQubits");
}

TEST(Messages, DecoyMessagesRoundTrip) {
    const DecoyAnnounce a{1, 2, {0, 3, 7}, {Basis::kComputational, Basis::kHadamard, Basis::kHadamard}};
    EXPECT_EQ(round_trip(a), Message{a});
    const DecoyResults r{1, 2, {true, false, true}};
    EXPECT_EQ(round_trip(r), Message{r});
    const DecoyVerdict v{3, 0, true};
    EXPECT_EQ(round_trip(v), Message{v});
    EXPECT_EQ(round_trip(DecoyAnnounce{}), Message{DecoyAnnounce{}});
}

TEST(Messages, ClassicalTupleRoundTrip) {
    const ClassicalTuple t{2, sample_dec()};
    ASSERT_FALSE(t.dec.all_integer());
    const Message back = round_trip(t);
    EXPECT_EQ(back, Message{t});
    const DecTuple &d = std::get<ClassicalTuple>(back).dec;
    EXPECT_EQ(max_abs_diff(d.components[0].evaluate(0.4), t.dec.components[0].evaluate(0.4)), 0.0);
}

TEST(Messages, QPrimeAndAbortRoundTrip) {
    const QPrime q{{hadamard() * e_phase(0.3), tensor(pauli_y(), u_rot(1.1))}};
    EXPECT_EQ(round_trip(q), Message{q});
    const Abort a{3, "decoy check failed"};
    EXPECT_EQ(round_trip(a), Message{a});
}

TEST(Messages, EncodingCarriesKind) {
    const auto j = nlohmann::json::parse(encode(DecoyVerdict{1, 0, false}));
    EXPECT_EQ(j.at("kind"), "DecoyVerdict");
    EXPECT_EQ(j.at("accepted"), false);
}

TEST(Messages, MalformedInputRejected) {
    EXPECT_THROW(decode("not json"), ProtocolViolation);
    EXPECT_THROW(decode(R"({"hop":1})"), ProtocolViolation);
    EXPECT_THROW(decode(R"({"kind":"Teleport"})"), ProtocolViolation);
    EXPECT_THROW(decode(R"({"kind":"DecoyVerdict","hop":1})"), ProtocolViolation);
    EXPECT_THROW(decode(R"({"kind":"DecoyAnnounce","hop":1,"attempt":0,"positions":[0],"bases":["Q"]})"),
                 ProtocolViolation);
}

}  // namespace
