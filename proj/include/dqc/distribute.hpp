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

#ifndef DQC_DISTRIBUTE_HPP
#define DQC_DISTRIBUTE_HPP

#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/partition.hpp"

namespace dqc {

/// How a cross-partition CX regains locality.
///  - Roundtrip: teleport the control into the target partition's ancilla,
///    apply the CX locally, teleport it straight back. Residency restored.
///  - Migrate: teleport once and leave the logical qubit at its new slot;
///    later gates follow the updated residency map.
enum class LowerMode { Roundtrip, Migrate };

/// Which teleport gates carry the comm tag (and thus amplified noise).
enum class CommScope { BellOnly, WholeTemplate };

struct DistributedCircuit {
    Circuit circuit;                    // data qubits plus one ancilla per partition
    Assignment assignment;              // extended over the ancillas
    std::vector<int> ancilla_of;        // partition id -> ancilla qubit index
    std::vector<int> comm_gate_indices; // positions of comm-tagged gates
    int teleport_count = 0;
};

/// The 10-gate teleport primitive: Bell pair on (anc_near, anc_far), Bell
/// measurement of (src, anc_near) into (c0, c1), Pauli corrections on
/// anc_far. Noiselessly moves src's state onto anc_far.
std::vector<Gate> teleport_template(int src, int anc_near, int anc_far, int c0, int c1);

/// Lower a monolithic circuit onto k simulated QPUs, replacing every
/// cross-partition CX with teleport primitives. Requires a Toffoli-free
/// circuit and an assignment covering its qubits.
DistributedCircuit lower(const Circuit &c, const Assignment &a, LowerMode mode,
                         CommScope scope = CommScope::BellOnly);

struct DistStats {
    int comm_gates = 0;
    int teleports = 0;
    int ancillas = 0;
    int global_depth = 0;
    std::vector<int> per_partition_depth;
    std::vector<int> partition_sizes; // data qubits per partition
};

DistStats distributed_stats(const DistributedCircuit &d);

} // namespace dqc

#endif
