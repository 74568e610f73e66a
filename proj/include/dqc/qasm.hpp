// Copyright 2026 The dqczne Authors
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

#ifndef DQC_QASM_HPP
#define DQC_QASM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

struct ParseDiagnostic {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    std::string message;
};

struct ParseResult {
    std::optional<Circuit> circuit;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return circuit.has_value() && diagnostics.empty(); }
};

// OpenQASM 2.0 subset: one qreg, one or more cregs, gates
// h/x/z/t/tdg/rz/ry/cx/ccx, measure, reset, and `if(c==1)` conditionals on
// 1-bit cregs. Errors are collected with line/column; parsing continues at
// the next statement.
ParseResult parse_qasm(std::string_view text);

/// Deterministic emission in the accepted subset. Comm-tagged gates carry a
/// trailing `// comm` comment. Circuits with conditional gates declare one
/// 1-bit creg per classical bit so the conditionals stay expressible.
std::string emit_qasm(const Circuit &c);

} // namespace dqc

#endif
