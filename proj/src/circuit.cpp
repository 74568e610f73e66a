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

#include "dqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dqc/error.hpp"

namespace dqc {

const char *kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::Rz: return "rz";
        case GateKind::Ry: return "ry";
        case GateKind::Cx: return "cx";
        case GateKind::Ccx: return "ccx";
        case GateKind::Measure: return "measure";
        case GateKind::Reset: return "reset";
        case GateKind::CondX: return "cond_x";
        case GateKind::CondZ: return "cond_z";
    }
    return "?";
}

int arity(GateKind kind) {
    switch (kind) {
        case GateKind::Cx: return 2;
        case GateKind::Ccx: return 3;
        default: return 1;
    }
}

bool is_unitary(GateKind kind) {
    switch (kind) {
        case GateKind::Measure:
        case GateKind::Reset:
        case GateKind::CondX:
        case GateKind::CondZ: return false;
        default: return true;
    }
}

bool is_rotation(GateKind kind) { return kind == GateKind::Rz || kind == GateKind::Ry; }

bool uses_clbit(GateKind kind) {
    return kind == GateKind::Measure || kind == GateKind::CondX || kind == GateKind::CondZ;
}

bool writes_clbit(GateKind kind) { return kind == GateKind::Measure; }

bool operator==(const Gate &a, const Gate &b) {
    return a.kind == b.kind && a.qubits == b.qubits && a.angle == b.angle && a.clbit == b.clbit &&
           a.comm == b.comm;
}

void validate_gate(const Gate &g, int num_qubits, int num_clbits) {
    if (static_cast<int>(g.qubits.size()) != arity(g.kind))
        throw Error(std::string("gate ") + kind_name(g.kind) + ": wrong qubit count");
    for (int q : g.qubits)
        if (q < 0 || q >= num_qubits)
            throw Error(std::string("gate ") + kind_name(g.kind) + ": qubit index out of range");
    for (size_t i = 0; i < g.qubits.size(); ++i)
        for (size_t j = i + 1; j < g.qubits.size(); ++j)
            if (g.qubits[i] == g.qubits[j])
                throw Error(std::string("gate ") + kind_name(g.kind) + ": duplicate qubit operand");
    if (uses_clbit(g.kind)) {
        if (g.clbit < 0 || g.clbit >= num_clbits)
            throw Error(std::string("gate ") + kind_name(g.kind) + ": classical bit out of range");
    } else if (g.clbit != -1) {
        throw Error(std::string("gate ") + kind_name(g.kind) + ": unexpected classical bit");
    }
    if (!is_rotation(g.kind) && g.angle != 0.0)
        throw Error(std::string("gate ") + kind_name(g.kind) + ": unexpected angle");
}

void Circuit::append(Gate g) {
    validate_gate(g, num_qubits, num_clbits);
    gates.push_back(std::move(g));
}

void validate(const Circuit &c) {
    if (c.num_qubits < 0 || c.num_clbits < 0) throw Error("negative register size");
    for (const Gate &g : c.gates) validate_gate(g, c.num_qubits, c.num_clbits);
    for (int q : c.data_qubits)
        if (q < 0 || q >= c.num_qubits) throw Error("data qubit index out of range");
}

const char *benchmark_name(Benchmark b) {
    switch (b) {
        case Benchmark::Ghz: return "ghz";
        case Benchmark::Dj: return "dj";
        case Benchmark::W: return "w";
    }
    return "?";
}

Circuit make_ghz(int n) {
    if (n < 2) throw Error("ghz: need at least 2 qubits");
    Circuit c;
    c.num_qubits = n;
    c.data_qubits.resize(n);
    std::iota(c.data_qubits.begin(), c.data_qubits.end(), 0);
    c.append(Gate::h(0));
    for (int i = 0; i + 1 < n; ++i) c.append(Gate::cx(i, i + 1));
    return c;
}

Circuit make_dj(int n, DjOracle oracle) {
    if (n < 2) throw Error("dj: need at least 2 data qubits");
    Circuit c;
    c.num_qubits = n + 1; // oracle ancilla on the last wire
    c.num_clbits = n;
    c.data_qubits.resize(n);
    std::iota(c.data_qubits.begin(), c.data_qubits.end(), 0);
    const int anc = n;
    c.append(Gate::x(anc));
    c.append(Gate::h(anc));
    for (int i = 0; i < n; ++i) c.append(Gate::h(i));
    if (oracle == DjOracle::Balanced)
        for (int i = 0; i < n; ++i) c.append(Gate::cx(i, anc));
    for (int i = 0; i < n; ++i) c.append(Gate::h(i));
    for (int i = 0; i < n; ++i) c.append(Gate::measure(i, i));
    return c;
}

Circuit make_w(int n) {
    if (n < 2) throw Error("w: need at least 2 qubits");
    Circuit c;
    c.num_qubits = n;
    c.data_qubits.resize(n);
    std::iota(c.data_qubits.begin(), c.data_qubits.end(), 0);
    c.append(Gate::x(n - 1));
    // Distribute the single excitation with RY rotations; the CZ in the
    // textbook F-gate is spelled H-CX-H.
    for (int m = 1; m < n; ++m) {
        const int i = n - m;     // control
        const int j = n - m - 1; // rotated target
        const double theta = std::acos(std::sqrt(1.0 / (n - m + 1)));
        c.append(Gate::ry(-theta, j));
        c.append(Gate::h(j));
        c.append(Gate::cx(i, j));
        c.append(Gate::h(j));
        c.append(Gate::ry(theta, j));
    }
    for (int k = n - 1; k >= 1; --k) c.append(Gate::cx(k - 1, k));
    return c;
}

Circuit generate_benchmark(Benchmark kind, int n, DjOracle oracle) {
    switch (kind) {
        case Benchmark::Ghz: return make_ghz(n);
        case Benchmark::Dj: return make_dj(n, oracle);
        case Benchmark::W: return make_w(n);
    }
    throw Error("unknown benchmark");
}

Circuit decompose_toffoli(const Circuit &c) {
    Circuit out;
    out.num_qubits = c.num_qubits;
    out.num_clbits = c.num_clbits;
    out.data_qubits = c.data_qubits;
    for (const Gate &g : c.gates) {
        if (g.kind != GateKind::Ccx) {
            out.append(g);
            continue;
        }
        const int a = g.qubits[0], b = g.qubits[1], t = g.qubits[2];
        const bool comm = g.comm;
        Gate seq[] = {
            Gate::h(t),      Gate::cx(b, t), Gate::tdg(t),   Gate::cx(a, t), Gate::t(t),
            Gate::cx(b, t),  Gate::tdg(t),   Gate::cx(a, t), Gate::t(b),     Gate::t(t),
            Gate::h(t),      Gate::cx(a, b), Gate::t(a),     Gate::tdg(b),   Gate::cx(a, b),
        };
        for (Gate &s : seq) {
            s.comm = comm;
            out.append(std::move(s));
        }
    }
    return out;
}

int depth(const Circuit &c) {
    std::vector<int> last(c.num_qubits + c.num_clbits, 0);
    int d = 0;
    for (const Gate &g : c.gates) {
        int layer = 0;
        for (int q : g.qubits) layer = std::max(layer, last[q]);
        if (uses_clbit(g.kind)) layer = std::max(layer, last[c.num_qubits + g.clbit]);
        ++layer;
        for (int q : g.qubits) last[q] = layer;
        if (uses_clbit(g.kind)) last[c.num_qubits + g.clbit] = layer;
        d = std::max(d, layer);
    }
    return d;
}

Gate adjoint(const Gate &g) {
    Gate out = g;
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::Cx:
        case GateKind::Ccx: return out;
        case GateKind::T: out.kind = GateKind::Tdg; return out;
        case GateKind::Tdg: out.kind = GateKind::T; return out;
        case GateKind::Rz:
        case GateKind::Ry: out.angle = -g.angle; return out;
        default: throw Error(std::string("adjoint: gate ") + kind_name(g.kind) + " is not unitary");
    }
}

} // namespace dqc
