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

#include "tqhe/messages.hpp"

#include "tqhe/error.hpp"
#include "tqhe/serialize.hpp"

namespace tqhe {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string basis_code(Basis b) { return b == Basis::kComputational ? "Z" : "X"; }

Basis basis_from_code(const std::string &s) {
    if (s == "Z") {
        return Basis::kComputational;
    }
    if (s == "X") {
        return Basis::kHadamard;
    }
    throw InvalidArgument("unknown basis code '" + s + "'");
}

}  // namespace

std::string_view kind_of(const Message &m) {
    return std::visit(overloaded{
                          [](const QubitSequence &q) -> std::string_view {
                              return q.final_return ? "FinalQubits" : "QubitSequence";
                          },
                          [](const DecoyAnnounce &) -> std::string_view { return "DecoyAnnounce"; },
                          [](const DecoyResults &) -> std::string_view { return "DecoyResults"; },
                          [](const DecoyVerdict &) -> std::string_view { return "DecoyVerdict"; },
                          [](const ClassicalTuple &) -> std::string_view { return "ClassicalTuple"; },
                          [](const QPrime &) -> std::string_view { return "QPrime"; },
                          [](const Abort &) -> std::string_view { return "Abort"; },
                      },
                      m);
}

std::string encode(const Message &m) {
    json j = std::visit(overloaded{
                            [](const QubitSequence &q) {
                                return json{{"hop", q.hop}, {"attempt", q.attempt}, {"register", to_json(q.reg)}};
                            },
                            [](const DecoyAnnounce &a) {
                                json bases = json::array();
                                for (Basis b : a.bases) {
                                    bases.push_back(basis_code(b));
                                }
                                return json{{"hop", a.hop},
                                            {"attempt", a.attempt},
                                            {"positions", a.positions},
                                            {"bases", std::move(bases)}};
                            },
                            [](const DecoyResults &r) {
                                json outcomes = json::array();
                                for (bool o : r.outcomes) {
                                    outcomes.push_back(o ? 1 : 0);
                                }
                                return json{{"hop", r.hop}, {"attempt", r.attempt}, {"outcomes", std::move(outcomes)}};
                            },
                            [](const DecoyVerdict &v) {
                                return json{{"hop", v.hop}, {"attempt", v.attempt}, {"accepted", v.accepted}};
                            },
                            [](const ClassicalTuple &t) { return json{{"hop", t.hop}, {"dec", to_json(t.dec)}}; },
                            [](const QPrime &q) {
                                json ms = json::array();
                                for (const Matrix &m : q.matrices) {
                                    ms.push_back(to_json(m));
                                }
                                return json{{"matrices", std::move(ms)}};
                            },
                            [](const Abort &a) { return json{{"hop", a.hop}, {"reason", a.reason}}; },
                        },
                        m);
    j["kind"] = kind_of(m);
    return j.dump();
}

namespace {

Message decode_json(const json &j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "QubitSequence" || kind == "FinalQubits") {
        return QubitSequence{j.at("hop").get<int>(), j.at("attempt").get<int>(), kind == "FinalQubits",
                             statevector_from_json(j.at("register"))};
    }
    if (kind == "DecoyAnnounce") {
        DecoyAnnounce a{j.at("hop").get<int>(), j.at("attempt").get<int>(),
                        j.at("positions").get<std::vector<std::size_t>>(), {}};
        for (const auto &b : j.at("bases")) {
            a.bases.push_back(basis_from_code(b.get<std::string>()));
        }
        return a;
    }
    if (kind == "DecoyResults") {
        DecoyResults r{j.at("hop").get<int>(), j.at("attempt").get<int>(), {}};
        for (const auto &o : j.at("outcomes")) {
            r.outcomes.push_back(o.get<int>() != 0);
        }
        return r;
    }
    if (kind == "DecoyVerdict") {
        return DecoyVerdict{j.at("hop").get<int>(), j.at("attempt").get<int>(), j.at("accepted").get<bool>()};
    }
    if (kind == "ClassicalTuple") {
        return ClassicalTuple{j.at("hop").get<int>(), dec_from_json(j.at("dec"))};
    }
    if (kind == "QPrime") {
        QPrime q;
        for (const auto &m : j.at("matrices")) {
            q.matrices.push_back(matrix_from_json(m));
        }
        return q;
    }
    if (kind == "Abort") {
        return Abort{j.at("hop").get<int>(), j.at("reason").get<std::string>()};
    }
    throw InvalidArgument("decode: unknown message kind '" + kind + "'");
}

}  // namespace

Message decode(std::string_view text) {
    try {
        return decode_json(json::parse(text));
    } catch (const json::exception &e) {
        throw ProtocolViolation(std::string("decode: malformed message: ") + e.what());
    } catch (const InvalidArgument &e) {
        throw ProtocolViolation(std::string("decode: ") + e.what());
    }
}

}  // namespace tqhe
