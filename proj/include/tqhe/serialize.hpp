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

// JSON mappings for values that cross the simulated wire or land in reports.
// Doubles are written in shortest round-trip form, so decode(encode(v)) == v.

#pragma once

#include <json.hpp>

#include "tqhe/keygen.hpp"
#include "tqhe/linalg.hpp"
#include "tqhe/protocol.hpp"
#include "tqhe/state.hpp"

namespace tqhe {

using json = nlohmann::json;

json to_json(const Matrix &m);
Matrix matrix_from_json(const json &j);

json to_json(const std::vector<cplx> &v);
std::vector<cplx> amplitudes_from_json(const json &j);

json to_json(const Statevector &sv);
Statevector statevector_from_json(const json &j);

json to_json(const DecComponent &c);
DecComponent component_from_json(const json &j);

json to_json(const DecTuple &d);
DecTuple dec_from_json(const json &j);

json to_json(const KeyMaterial &km);

json to_json(const FinalMask &mask);

}  // namespace tqhe
