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

#include "tqhe/serialize.hpp"

#include "tqhe/error.hpp"

namespace tqhe {

json to_json(const Matrix &m) {
    json re = json::array();
    json im = json::array();
    for (cplx c : m.data()) {
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json &j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (re.size() != rows * cols || im.size() != rows * cols) {
        throw InvalidArgument("matrix_from_json: entry count mismatch");
    }
    std::vector<cplx> data(rows * cols);
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = cplx{re[i].get<double>(), im[i].get<double>()};
    }
    return Matrix(rows, cols, std::move(data));
}

json to_json(const std::vector<cplx> &v) {
    json out = json::array();
    for (cplx c : v) {
        out.push_back(json::array({c.real(), c.imag()}));
    }
    return out;
}

std::vector<cplx> amplitudes_from_json(const json &j) {
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto &pair : j) {
        out.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return out;
}

json to_json(const Statevector &sv) {
    json parts = json::array();
    for (const Partition &p : sv.partitions()) {
        parts.push_back(json{{"qubits", p.qubits}, {"amplitudes", to_json(p.amplitudes)}});
    }
    return json{{"qubits", sv.qubit_ids()}, {"partitions", std::move(parts)}};
}

Statevector statevector_from_json(const json &j) {
    std::vector<Partition> parts;
    for (const auto &p : j.at("partitions")) {
        parts.push_back(Partition{p.at("qubits").get<std::vector<QubitLabel>>(),
                                  amplitudes_from_json(p.at("amplitudes"))});
    }
    return Statevector(j.at("qubits").get<std::vector<QubitLabel>>(), std::move(parts));
}

json to_json(const DecComponent &c) {
    if (c.is_integer()) {
        const IntegerForm &f = c.integer();
        return json{{"form", "integer"},
                    {"qubit", f.qubit},
                    {"eta", f.eta},
                    {"t_prime", f.t_prime},
                    {"s_prime", f.s_prime}};
    }
    const MatrixForm &m = c.matrix();
    json inner = json::array();
    for (const DecComponent &i : m.inner) {
        inner.push_back(to_json(i));
    }
    return json{{"form", m.kind == MatrixForm::Kind::kH ? "h_matrix" : "cn_matrix"},
                {"group", m.group},
                {"composite", to_json(m.conjugator)},
                {"inner", std::move(inner)}};
}

DecComponent component_from_json(const json &j) {
    const std::string form = j.at("form").get<std::string>();
    if (form == "integer") {
        return DecComponent{IntegerForm{j.at("qubit").get<QubitLabel>(), j.at("eta").get<int>(),
                                        j.at("t_prime").get<int>(), j.at("s_prime").get<int>()}};
    }
    if (form != "h_matrix" && form != "cn_matrix") {
        throw InvalidArgument("component_from_json: unknown form '" + form + "'");
    }
    MatrixForm m;
    m.kind = form == "h_matrix" ? MatrixForm::Kind::kH : MatrixForm::Kind::kCN;
    m.group = j.at("group").get<std::vector<QubitLabel>>();
    m.conjugator = matrix_from_json(j.at("composite"));
    for (const auto &i : j.at("inner")) {
        m.inner.push_back(component_from_json(i));
    }
    return DecComponent{std::move(m)};
}

json to_json(const DecTuple &d) {
    json out = json::array();
    for (const DecComponent &c : d.components) {
        out.push_back(to_json(c));
    }
    return out;
}

DecTuple dec_from_json(const json &j) {
    DecTuple d;
    for (const auto &c : j) {
        d.components.push_back(component_from_json(c));
    }
    return d;
}

json to_json(const KeyMaterial &km) {
    json sols = json::array();
    for (const auto &[subset, x] : km.solutions) {
        sols.push_back(json{{"subset", subset}, {"x", x}});
    }
    return json{{"n", km.n}, {"k", km.k},           {"b", km.b},
                {"sigma1", km.sigma1}, {"sigma2", km.sigma2}, {"solutions", std::move(sols)}};
}

json to_json(const FinalMask &mask) {
    json out = json::object();
    for (const auto &[q, bits] : mask) {
        out[q] = json::array({static_cast<int>(bits.a), static_cast<int>(bits.b)});
    }
    return out;
}

}  // namespace tqhe
