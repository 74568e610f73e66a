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

#ifndef DQC_CIRCUIT_HPP
#define DQC_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dqc {

enum class GateKind : uint8_t {
    H,
    X,
    Z,
    T,
    Tdg,
    Rz,
    Ry,
    Cx,
    Ccx,
    Measure,
    Reset,
    CondX, // X conditioned on a classical bit being 1
    CondZ, // Z conditioned on a classical bit being 1
};

const char *kind_name(GateKind kind);
int arity(GateKind kind);
bool is_unitary(GateKind kind);
bool is_rotation(GateKind kind);
bool uses_clbit(GateKind kind);
bool writes_clbit(GateKind kind);

/// One circuit instruction. `comm` marks gates that belong to the networked
/// part of a communication primitive and therefore see amplified noise.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    double angle = 0.0; // Rz/Ry only
    int clbit = -1;     // Measure writes it, CondX/CondZ read it
    bool comm = false;

    static Gate h(int q) { return {GateKind::H, {q}}; }
    static Gate x(int q) { return {GateKind::X, {q}}; }
    static Gate z(int q) { return {GateKind::Z, {q}}; }
    static Gate t(int q) { return {GateKind::T, {q}}; }
    static Gate tdg(int q) { return {GateKind::Tdg, {q}}; }
    static Gate rz(double angle, int q) { return {GateKind::Rz, {q}, angle}; }
    static Gate ry(double angle, int q) { return {GateKind::Ry, {q}, angle}; }
    static Gate cx(int ctl, int tgt) { return {GateKind::Cx, {ctl, tgt}}; }
    static Gate ccx(int c1, int c2, int tgt) { return {GateKind::Ccx, {c1, c2, tgt}}; }
    static Gate measure(int q, int clbit) { return {GateKind::Measure, {q}, 0.0, clbit}; }
    static Gate reset(int q) { return {GateKind::Reset, {q}}; }
    static Gate cond_x(int q, int clbit) { return {GateKind::CondX, {q}, 0.0, clbit}; }
    static Gate cond_z(int q, int clbit) { return {GateKind::CondZ, {q}, 0.0, clbit}; }

    Gate tagged_comm() const {
        Gate g = *this;
        g.comm = true;
        return g;
    }
};

bool operator==(const Gate &a, const Gate &b);

/// Gate sequence over `num_qubits` qubits and `num_clbits` classical bits.
/// `data_qubits` lists, in logical order, the physical slot currently holding
/// each logical data qubit; generators populate it with the non-ancilla
/// qubits, and circuit transformations keep it pointed at the right slots.
struct Circuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Gate> gates;
    std::vector<int> data_qubits;

    void append(Gate g);
    int add_clbit() { return num_clbits++; }
};

void validate_gate(const Gate &g, int num_qubits, int num_clbits);
void validate(const Circuit &c);

enum class Benchmark { Ghz, Dj, W };
enum class DjOracle { Balanced, Constant };

const char *benchmark_name(Benchmark b);

Circuit make_ghz(int n);
Circuit make_dj(int n, DjOracle oracle);
Circuit make_w(int n);
Circuit generate_benchmark(Benchmark kind, int n, DjOracle oracle = DjOracle::Balanced);

/// Replace every CCX by the standard 15-gate {H, T, Tdg, CX} network.
Circuit decompose_toffoli(const Circuit &c);

/// Greedy left-packed layer count. Measure/Reset/Conditioned occupy a layer
/// slot on their qubit, and Measure/Conditioned also on their classical bit.
int depth(const Circuit &c);

/// Inverse gate. Throws for non-unitary kinds.
Gate adjoint(const Gate &g);

} // namespace dqc

#endif
