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
 * Scenario files: one `key = value` pair per line, `#` starts a comment.
 *
 *   seed = 7                       (default 1)
 *   n = 5
 *   k = 3
 *   chain = 1 3 4
 *   qubits = p q
 *   angles = 0.4 3*pi/8            (numbers, or multiples/fractions of pi)
 *   program.3 = X p; CNOT p q      (gates in application order)
 *   sigma2 = pi/4                  (pins σ₂)
 *   mask.p = 0 1                   (pins the a, b blinding bits of qubit p)
 *   decoy_ratio = 0.2
 *   decoys = 20                    (explicit count per hop, overrides ratio)
 *   decoy_error_threshold = 0
 *   max_retries = 3
 *   eavesdropper = intercept_resend 2 1.0    (hop, probability) or none
 *   comparison = phase | exact
 *   tolerance = 1e-9
 *   force_matrix_form = false
 *   schedule = sequential | concurrent
 *
 * n, k, chain, qubits and angles are required. Unknown or repeated keys are
 * errors.
 */

#pragma once

#include <string>
#include <string_view>

#include "tqhe/harness.hpp"

namespace tqhe {

/// Throws ParseError with the offending line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string &path);

/// Text that parse_scenario maps back to an identical Scenario.
std::string format_scenario(const Scenario &s);

/// "0.3", "pi", "-pi/4", "3pi/2", "3*pi/4", "0.5*pi". Throws InvalidArgument.
double parse_angle(std::string_view text);

}  // namespace tqhe
