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

#ifndef DQC_GATES_HPP
#define DQC_GATES_HPP

#include <array>
#include <cmath>
#include <complex>

#include "dqc/circuit.hpp"
#include "dqc/error.hpp"

namespace dqc {

// Row-major 2x2 matrices in the computational basis.
inline constexpr std::array<std::complex<double>, 4> kPauliX = {0.0, 1.0, 1.0, 0.0};
inline const std::array<std::complex<double>, 4> kPauliY = {
    0.0, std::complex<double>(0.0, -1.0), std::complex<double>(0.0, 1.0), 0.0};
inline constexpr std::array<std::complex<double>, 4> kPauliZ = {1.0, 0.0, 0.0, -1.0};

/// Matrix of a single-qubit unitary gate kind.
inline std::array<std::complex<double>, 4> gate_matrix1(GateKind kind, double angle) {
    using C = std::complex<double>;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case GateKind::X: return kPauliX;
        case GateKind::Z: return kPauliZ;
        case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4)};
        case GateKind::Tdg: return {1.0, 0.0, 0.0, std::polar(1.0, -M_PI / 4)};
        case GateKind::Rz:
            return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
        case GateKind::Ry: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            return {C(c), C(-s), C(s), C(c)};
        }
        default: throw Error("gate_matrix1: not a single-qubit unitary");
    }
}

} // namespace dqc

#endif
