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

#include "dqc/distribute.hpp"

#include <algorithm>

#include "dqc/error.hpp"

namespace dqc {

std::vector<Gate> teleport_template(int src, int anc_near, int anc_far, int c0, int c1) {
    if (src == anc_near || src == anc_far || anc_near == anc_far)
        throw Error("teleport template: qubits must be distinct");
    if (c0 == c1) throw Error("teleport template: classical bits must be distinct");
    return {
        Gate::reset(anc_near),
        Gate::reset(anc_far),
        Gate::h(anc_near).tagged_comm(),
        Gate::cx(anc_near, anc_far).tagged_comm(),
        Gate::cx(src, anc_near),
        Gate::h(src),
        Gate::measure(src, c0),
        Gate::measure(anc_near, c1),
        Gate::cond_x(anc_far, c1),
        Gate::cond_z(anc_far, c0),
    };
}

namespace {

/// Tracks which physical slot every logical qubit occupies and which slots
/// are free, as teleports move states around.
class Lowerer {
  public:
    Lowerer(const Circuit &c, const Assignment &a, LowerMode mode, CommScope scope)
        : mode_(mode), scope_(scope), n_data_(c.num_qubits), k_(a.k) {
        if (static_cast<int>(a.part_of.size()) != c.num_qubits)
            throw Error("lower: assignment does not cover the circuit");
        std::vector<int> sizes(static_cast<size_t>(k_), 0);
        for (int q = 0; q < c.num_qubits; ++q) {
            int p = a.part_of[static_cast<size_t>(q)];
            if (p < 0 || p >= k_) throw Error("lower: partition id out of range");
            ++sizes[static_cast<size_t>(p)];
        }
        for (int s : sizes)
            if (s == 0) throw Error("lower: every partition must hold at least one qubit");

        out_.circuit.num_qubits = n_data_ + k_;
        out_.circuit.num_clbits = c.num_clbits;
        out_.assignment.k = k_;
        out_.assignment.part_of = a.part_of;
        out_.ancilla_of.resize(static_cast<size_t>(k_));
        for (int p = 0; p < k_; ++p) {
            out_.ancilla_of[static_cast<size_t>(p)] = n_data_ + p;
            out_.assignment.part_of.push_back(p);
        }
        slot_of_.resize(static_cast<size_t>(n_data_));
        home_part_ = a.part_of;
        for (int q = 0; q < n_data_; ++q) slot_of_[static_cast<size_t>(q)] = q;
        free_.assign(static_cast<size_t>(out_.circuit.num_qubits), false);
        for (int p = 0; p < k_; ++p) free_[static_cast<size_t>(n_data_ + p)] = true;
    }

    DistributedCircuit run(const Circuit &c) {
        for (const Gate &g : c.gates) lower_gate(g);
        out_.circuit.data_qubits.clear();
        for (int dq : c.data_qubits)
            out_.circuit.data_qubits.push_back(slot_of_[static_cast<size_t>(dq)]);
        out_.teleport_count = teleports_;
        return std::move(out_);
    }

  private:
    int part(int slot) const { return out_.assignment.part_of[static_cast<size_t>(slot)]; }

    void emit(Gate g) {
        if (scope_ == CommScope::WholeTemplate && in_template_) g.comm = true;
        if (g.comm) out_.comm_gate_indices.push_back(static_cast<int>(out_.circuit.gates.size()));
        out_.circuit.append(std::move(g));
    }

    /// Pick a free helper slot for the near Bell half, preferring the given
    /// partitions' own ancillas, then any free ancilla, then any free slot.
    int pick_helper(int pref_part_a, int pref_part_b, int avoid) {
        int cand = out_.ancilla_of[static_cast<size_t>(pref_part_a)];
        if (cand != avoid && free_[static_cast<size_t>(cand)]) return cand;
        cand = out_.ancilla_of[static_cast<size_t>(pref_part_b)];
        if (cand != avoid && free_[static_cast<size_t>(cand)]) return cand;
        for (int p = 0; p < k_; ++p) {
            cand = out_.ancilla_of[static_cast<size_t>(p)];
            if (cand != avoid && free_[static_cast<size_t>(cand)]) return cand;
        }
        for (int s = 0; s < out_.circuit.num_qubits; ++s)
            if (s != avoid && free_[static_cast<size_t>(s)]) return s;
        throw Error("lower: no free slot available for the Bell pair");
    }

    /// Lowest free slot in partition p, ancilla first. -1 if the partition
    /// is full.
    int pick_landing(int p) {
        int anc = out_.ancilla_of[static_cast<size_t>(p)];
        if (free_[static_cast<size_t>(anc)]) return anc;
        for (int s = 0; s < n_data_; ++s)
            if (part(s) == p && free_[static_cast<size_t>(s)]) return s;
        return -1;
    }

    /// Emit one teleport moving the state at `src` onto the free slot `dst`,
    /// via the free helper slot `helper`. The Bell-priming H and any
    /// partition-crossing CX carry the comm tag.
    void teleport(int src, int helper, int dst) {
        if (!free_[static_cast<size_t>(helper)] || !free_[static_cast<size_t>(dst)])
            throw Error("lower: teleport target slots not free");
        int c0 = out_.circuit.add_clbit();
        int c1 = out_.circuit.add_clbit();
        in_template_ = true;
        emit(Gate::reset(helper));
        emit(Gate::reset(dst));
        emit(Gate::h(helper).tagged_comm());
        {
            Gate bell = Gate::cx(helper, dst);
            bell.comm = part(helper) != part(dst);
            emit(std::move(bell));
        }
        {
            Gate meas_cx = Gate::cx(src, helper);
            meas_cx.comm = part(src) != part(helper);
            emit(std::move(meas_cx));
        }
        emit(Gate::h(src));
        emit(Gate::measure(src, c0));
        emit(Gate::measure(helper, c1));
        emit(Gate::cond_x(dst, c1));
        emit(Gate::cond_z(dst, c0));
        in_template_ = false;
        free_[static_cast<size_t>(src)] = true;
        free_[static_cast<size_t>(dst)] = false;
        ++teleports_;
    }

    /// Move logical qubit `lq` into partition p. Caller ensures p has a free
    /// slot. Returns the new slot.
    int migrate_into(int lq, int p) {
        int src = slot_of_[static_cast<size_t>(lq)];
        int dst = pick_landing(p);
        int helper = pick_helper(part(src), p, dst);
        teleport(src, helper, dst);
        slot_of_[static_cast<size_t>(lq)] = dst;
        return dst;
    }

    /// Free up a slot in the full partition p by sending the ancilla's
    /// occupant back towards its home partition.
    void evict_from(int p) {
        int anc = out_.ancilla_of[static_cast<size_t>(p)];
        int occupant = -1;
        for (int q = 0; q < n_data_; ++q)
            if (slot_of_[static_cast<size_t>(q)] == anc) occupant = q;
        if (occupant < 0) throw Error("lower: partition full without an evictable ancilla");
        int home = home_part_[static_cast<size_t>(occupant)];
        int dst = free_[static_cast<size_t>(occupant)] ? occupant : pick_landing(home);
        if (dst < 0) {
            for (int s = 0; s < out_.circuit.num_qubits && dst < 0; ++s)
                if (free_[static_cast<size_t>(s)] &&
                    s != out_.ancilla_of[static_cast<size_t>(part(s))])
                    dst = s;
        }
        if (dst < 0) throw Error("lower: no slot available for eviction");
        int helper = pick_helper(p, part(dst), dst);
        teleport(anc, helper, dst);
        slot_of_[static_cast<size_t>(occupant)] = dst;
    }

    void lower_gate(const Gate &g) {
        Gate mapped = g;
        for (int &q : mapped.qubits) q = slot_of_[static_cast<size_t>(q)];
        if (g.kind == GateKind::Ccx)
            throw Error("lower requires a Toffoli-free circuit; decompose first");
        if (mapped.qubits.size() != 2 || !is_unitary(mapped.kind) ||
            part(mapped.qubits[0]) == part(mapped.qubits[1])) {
            emit(std::move(mapped));
            return;
        }

        const int lctl = g.qubits[0], ltgt = g.qubits[1];
        if (mode_ == LowerMode::Roundtrip) {
            const int ctl_slot = mapped.qubits[0];
            const int tgt_part = part(mapped.qubits[1]);
            const int anc = out_.ancilla_of[static_cast<size_t>(tgt_part)];
            const int helper = pick_helper(part(ctl_slot), tgt_part, anc);
            teleport(ctl_slot, helper, anc);
            emit(Gate::cx(anc, mapped.qubits[1]));
            const int back_helper = pick_helper(part(ctl_slot), tgt_part, ctl_slot);
            teleport(anc, back_helper, ctl_slot);
            return;
        }

        // Migrate: bring the control to the target's partition when there is
        // room, otherwise bring the target to the control, evicting a parked
        // qubit only when both sides are full.
        int tgt_part = part(mapped.qubits[1]);
        int ctl_part = part(mapped.qubits[0]);
        if (pick_landing(tgt_part) >= 0) {
            int slot = migrate_into(lctl, tgt_part);
            emit(Gate::cx(slot, slot_of_[static_cast<size_t>(ltgt)]));
        } else if (pick_landing(ctl_part) >= 0) {
            int slot = migrate_into(ltgt, ctl_part);
            emit(Gate::cx(slot_of_[static_cast<size_t>(lctl)], slot));
        } else {
            evict_from(tgt_part);
            int slot = migrate_into(lctl, tgt_part);
            emit(Gate::cx(slot, slot_of_[static_cast<size_t>(ltgt)]));
        }
    }

    LowerMode mode_;
    CommScope scope_;
    int n_data_;
    int k_;
    DistributedCircuit out_;
    std::vector<int> slot_of_;
    std::vector<int> home_part_;
    std::vector<bool> free_;
    int teleports_ = 0;
    bool in_template_ = false;
};

} // namespace

DistributedCircuit lower(const Circuit &c, const Assignment &a, LowerMode mode, CommScope scope) {
    for (const Gate &g : c.gates)
        if (g.kind == GateKind::Ccx)
            throw Error("lower requires a Toffoli-free circuit; decompose first");
    return Lowerer(c, a, mode, scope).run(c);
}

DistStats distributed_stats(const DistributedCircuit &d) {
    DistStats s;
    s.comm_gates = static_cast<int>(d.comm_gate_indices.size());
    s.teleports = d.teleport_count;
    s.ancillas = static_cast<int>(d.ancilla_of.size());
    s.global_depth = depth(d.circuit);
    const int k = d.assignment.k;
    s.per_partition_depth.resize(static_cast<size_t>(k), 0);
    for (int p = 0; p < k; ++p) {
        Circuit sub;
        sub.num_qubits = d.circuit.num_qubits;
        sub.num_clbits = d.circuit.num_clbits;
        for (const Gate &g : d.circuit.gates) {
            bool touches = false;
            for (int q : g.qubits)
                if (d.assignment.part_of[static_cast<size_t>(q)] == p) touches = true;
            if (touches) sub.gates.push_back(g);
        }
        s.per_partition_depth[static_cast<size_t>(p)] = depth(sub);
    }
    const int n_data = d.circuit.num_qubits - k;
    s.partition_sizes.resize(static_cast<size_t>(k), 0);
    for (int q = 0; q < n_data; ++q)
        ++s.partition_sizes[static_cast<size_t>(d.assignment.part_of[static_cast<size_t>(q)])];
    return s;
}

} // namespace dqc
