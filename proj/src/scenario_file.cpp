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

#include "tqhe/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) {
        out.push_back(w);
    }
    return out;
}

template <class T> T parse_number(std::string_view s, const char *what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidArgument(std::string("expected ") + what + ", got '" + std::string(s) + "'");
    }
    return value;
}

bool parse_bool(std::string_view s) {
    if (s == "true" || s == "yes" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "0") {
        return false;
    }
    throw InvalidArgument("expected true or false, got '" + std::string(s) + "'");
}

int single_int(std::string_view v) { return parse_number<int>(v, "an integer"); }

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

double parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) {
        throw InvalidArgument("empty angle");
    }
    const auto pi = s.find("pi");
    if (pi == std::string_view::npos) {
        return parse_number<double>(s, "an angle");
    }
    double sign = 1.0;
    std::string_view coef = s.substr(0, pi);
    if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
        sign = coef.front() == '-' ? -1.0 : 1.0;
        coef.remove_prefix(1);
    }
    if (!coef.empty() && coef.back() == '*') {
        coef.remove_suffix(1);
    }
    const double factor = coef.empty() ? 1.0 : parse_number<double>(coef, "a multiple of pi");
    std::string_view rest = s.substr(pi + 2);
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw InvalidArgument("malformed angle '" + std::string(s) + "'");
        }
        divisor = parse_number<double>(rest.substr(1), "a divisor");
        if (divisor == 0.0) {
            throw InvalidArgument("angle divides by zero");
        }
    }
    return sign * factor * std::numbers::pi / divisor;
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    s.chain.clear();
    std::map<std::string, int> seen;
    std::map<int, int> program_lines;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(line_no, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError(line_no, "missing key");
        }
        if (!seen.emplace(key, line_no).second) {
            throw ParseError(line_no, "duplicate key '" + key + "'");
        }
        try {
            if (key == "seed") {
                s.seed = parse_number<std::uint64_t>(value, "an unsigned integer");
            } else if (key == "n") {
                s.n = single_int(value);
            } else if (key == "k") {
                s.k = single_int(value);
            } else if (key == "chain") {
                for (const std::string &w : words(value)) {
                    s.chain.push_back(single_int(w));
                }
            } else if (key == "qubits") {
                s.qubits = words(value);
            } else if (key == "angles") {
                for (const std::string &w : words(value)) {
                    s.angles.push_back(parse_angle(w));
                }
            } else if (key.starts_with("program.")) {
                const int id = single_int(std::string_view(key).substr(8));
                s.programs[id] = parse_program(value);
                program_lines[id] = line_no;
            } else if (key == "sigma2") {
                s.sigma2 = parse_angle(value);
            } else if (key.starts_with("mask.")) {
                const std::vector<std::string> bits = words(value);
                if (bits.size() != 2 || (bits[0] != "0" && bits[0] != "1") || (bits[1] != "0" && bits[1] != "1")) {
                    throw InvalidArgument("mask expects two bits 'a b'");
                }
                s.mask[key.substr(5)] = MaskBits{bits[0] == "1", bits[1] == "1"};
            } else if (key == "decoy_ratio") {
                s.decoy_ratio = parse_number<double>(value, "a fraction");
            } else if (key == "decoys") {
                s.decoys = single_int(value);
            } else if (key == "decoy_error_threshold") {
                s.decoy_error_threshold = parse_number<double>(value, "a fraction");
            } else if (key == "max_retries") {
                s.max_retries = single_int(value);
            } else if (key == "eavesdropper") {
                const std::vector<std::string> w = words(value);
                if (w.size() == 1 && w[0] == "none") {
                    s.eavesdropper.reset();
                } else if (w.size() == 3 && w[0] == "intercept_resend") {
                    s.eavesdropper = Eavesdropper{single_int(w[1]), parse_number<double>(w[2], "a probability")};
                } else {
                    throw InvalidArgument("expected 'none' or 'intercept_resend <hop> <probability>'");
                }
            } else if (key == "comparison") {
                if (value == "phase") {
                    s.comparison = Comparison::kGlobalPhase;
                } else if (value == "exact") {
                    s.comparison = Comparison::kExact;
                } else {
                    throw InvalidArgument("comparison must be 'phase' or 'exact'");
                }
            } else if (key == "tolerance") {
                s.tolerance = parse_number<double>(value, "a tolerance");
            } else if (key == "force_matrix_form") {
                s.force_matrix_form = parse_bool(value);
            } else if (key == "schedule") {
                if (value == "sequential") {
                    s.schedule = Schedule::kSequential;
                } else if (value == "concurrent") {
                    s.schedule = Schedule::kConcurrent;
                } else {
                    throw InvalidArgument("schedule must be 'sequential' or 'concurrent'");
                }
            } else {
                throw ParseError(line_no, "unknown key '" + key + "'");
            }
        } catch (const InvalidArgument &e) {
            throw ParseError(line_no, key + ": " + e.what());
        }
    }

    for (const char *required : {"n", "k", "chain", "qubits", "angles"}) {
        if (!seen.contains(required)) {
            throw ParseError(0, std::string("missing required key '") + required + "'");
        }
    }
    const std::set<QubitLabel> declared(s.qubits.begin(), s.qubits.end());
    for (const auto &[id, prog] : s.programs) {
        for (const Gate &g : prog.gates) {
            for (const QubitLabel &q : g.operands) {
                if (!declared.contains(q)) {
                    throw ParseError(program_lines[id], "undeclared qubit '" + q + "'");
                }
            }
        }
    }
    for (const auto &[q, bits] : s.mask) {
        if (!declared.contains(q)) {
            throw ParseError(seen.at("mask." + q), "undeclared qubit '" + q + "'");
        }
    }
    try {
        validate(s);
    } catch (const InvalidArgument &e) {
        throw ParseError(0, e.what());
    }
    return s;
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string format_scenario(const Scenario &s) {
    std::ostringstream os;
    auto join_ints = [](const std::vector<int> &v) {
        std::string out;
        for (int i : v) {
            out += (out.empty() ? "" : " ") + std::to_string(i);
        }
        return out;
    };
    os << "seed = " << s.seed << "\n";
    os << "n = " << s.n << "\n";
    os << "k = " << s.k << "\n";
    os << "chain = " << join_ints(s.chain) << "\n";
    os << "qubits =";
    for (const QubitLabel &q : s.qubits) {
        os << " " << q;
    }
    os << "\nangles =";
    for (double a : s.angles) {
        os << " " << format_double(a);
    }
    os << "\n";
    for (const auto &[id, prog] : s.programs) {
        os << "program." << id << " = " << format_program(prog) << "\n";
    }
    if (s.sigma2) {
        os << "sigma2 = " << format_double(*s.sigma2) << "\n";
    }
    for (const auto &[q, bits] : s.mask) {
        os << "mask." << q << " = " << int(bits.a) << " " << int(bits.b) << "\n";
    }
    os << "decoy_ratio = " << format_double(s.decoy_ratio) << "\n";
    if (s.decoys) {
        os << "decoys = " << *s.decoys << "\n";
    }
    os << "decoy_error_threshold = " << format_double(s.decoy_error_threshold) << "\n";
    os << "max_retries = " << s.max_retries << "\n";
    if (s.eavesdropper) {
        os << "eavesdropper = intercept_resend " << s.eavesdropper->hop << " "
           << format_double(s.eavesdropper->probability) << "\n";
    } else {
        os << "eavesdropper = none\n";
    }
    os << "comparison = " << (s.comparison == Comparison::kExact ? "exact" : "phase") << "\n";
    os << "tolerance = " << format_double(s.tolerance) << "\n";
    os << "force_matrix_form = " << (s.force_matrix_form ? "true" : "false") << "\n";
    os << "schedule = " << (s.schedule == Schedule::kConcurrent ? "concurrent" : "sequential") << "\n";
    return os.str();
}

}  // namespace tqhe
