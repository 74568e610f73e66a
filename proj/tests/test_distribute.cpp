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

#include <doctest.h>

#include <cmath>
#include <set>

#include "dqc/density.hpp"
#include "dqc/distribute.hpp"
#include "dqc/error.hpp"
#include "dqc/partition.hpp"
#include "oracles.hpp"

using namespace dqc;

namespace {

/// Total-variation distance between the exact data-qubit distributions.
double lowering_tvd(const Circuit &mono, const DistributedCircuit &lowered) {
    const std::vector<double> a =
        exact_output_distribution(mono, NoiseModel::noiseless());
    const std::vector<double> b =
        exact_output_distribution(lowered.circuit, NoiseModel::noiseless());
    REQUIRE(a.size() == b.size());
    double tvd = 0.0;
    for (size_t i = 0; i < a.size(); ++i) tvd += std::abs(a[i] - b[i]);
    return 0.5 * tvd;
}

void check_structure(const DistributedCircuit &d) {
    const std::vector<int> &part = d.assignment.part_of;
    std::set<int> ancillas(d.ancilla_of.begin(), d.ancilla_of.end());
    std::set<int> comm_positions(d.comm_gate_indices.begin(), d.comm_gate_indices.end());
    std::vector<int> writer(static_cast<size_t>(d.circuit.num_clbits), 0);
    for (size_t i = 0; i < d.circuit.gates.size(); ++i) {
        const Gate &g = d.circuit.gates[i];
        CHECK(g.comm == (comm_positions.count(static_cast<int>(i)) > 0));
        if (g.comm) {
            bool touches_ancilla = false;
            for (int q : g.qubits) touches_ancilla |= ancillas.count(q) > 0;
            CHECK(touches_ancilla);
        }
        if (!g.comm && g.qubits.size() == 2 && is_unitary(g.kind))
            CHECK(part[static_cast<size_t>(g.qubits[0])] == part[static_cast<size_t>(g.qubits[1])]);
        if (g.kind == GateKind::Measure) ++writer[static_cast<size_t>(g.clbit)];
    }
    for (int w : writer) CHECK(w <= 1); // classical bits are single-writer
}

} // namespace

TEST_CASE("teleport template has the specified shape") {
    std::vector<Gate> t = teleport_template(0, 1, 2, 0, 1);
    REQUIRE(t.size() == 10);
    CHECK(t[0] == Gate::reset(1));
    CHECK(t[1] == Gate::reset(2));
    CHECK(t[2] == Gate::h(1).tagged_comm());
    CHECK(t[3] == Gate::cx(1, 2).tagged_comm());
    CHECK(t[4] == Gate::cx(0, 1));
    CHECK(t[5] == Gate::h(0));
    CHECK(t[6] == Gate::measure(0, 0));
    CHECK(t[7] == Gate::measure(1, 1));
    CHECK(t[8] == Gate::cond_x(2, 1));
    CHECK(t[9] == Gate::cond_z(2, 0));
    int comm = 0;
    for (const Gate &g : t) comm += g.comm;
    CHECK(comm == 2);
    CHECK_THROWS_AS(teleport_template(0, 0, 2, 0, 1), Error);
    CHECK_THROWS_AS(teleport_template(0, 1, 2, 3, 3), Error);
}

TEST_CASE("noiseless teleport moves |1> onto the far ancilla") {
    Circuit c;
    c.num_qubits = 3;
    c.num_clbits = 2;
    c.data_qubits = {2}; // read out the destination
    c.append(Gate::x(0));
    for (Gate &g : teleport_template(0, 1, 2, 0, 1)) c.append(std::move(g));
    ObservableSpec parity;
    CHECK(simulate_exact_expectation(c, NoiseModel::noiseless(), parity) ==
          doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("noiseless teleport preserves |+> exactly") {
    Circuit c;
    c.num_qubits = 3;
    c.num_clbits = 2;
    c.data_qubits = {2};
    c.append(Gate::h(0)); // prepare |+>
    for (Gate &g : teleport_template(0, 1, 2, 0, 1)) c.append(std::move(g));
    c.append(Gate::h(2)); // X-basis readout
    auto dist = oracle::noiseless_distribution(c);
    REQUIRE(dist.count(0) == 1);
    CHECK(dist.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    // Cross-check with the production exact backend.
    const std::vector<double> exact =
        exact_output_distribution(c, NoiseModel::noiseless());
    CHECK(exact[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("teleport of |0> lands in |0>") {
    Circuit c;
    c.num_qubits = 3;
    c.num_clbits = 2;
    c.data_qubits = {2};
    for (Gate &g : teleport_template(0, 1, 2, 0, 1)) c.append(std::move(g));
    ObservableSpec parity;
    CHECK(simulate_exact_expectation(c, NoiseModel::noiseless(), parity) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-cut lowering copies the circuit") {
    Circuit c = make_ghz(4);
    Assignment a{1, {0, 0, 0, 0}};
    for (LowerMode mode : {LowerMode::Roundtrip, LowerMode::Migrate}) {
        DistributedCircuit d = lower(c, a, mode);
        CHECK(d.circuit.gates == c.gates);
        CHECK(d.comm_gate_indices.empty());
        CHECK(d.teleport_count == 0);
        CHECK(d.circuit.num_qubits == 5); // one allocated ancilla
        CHECK(d.circuit.data_qubits == c.data_qubits);
    }
}

TEST_CASE("ghz(4) roundtrip lowering emits two templates around one local cx") {
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};
    DistributedCircuit d = lower(c, a, LowerMode::Roundtrip);
    // 3 retained gates + 2 x 10-gate template + 1 local CX. (The canonical
    // GHZ(4) ladder has 4 gates: H plus 3 CX, of which 1 crosses.)
    CHECK(d.circuit.gates.size() == 24);
    CHECK(d.teleport_count == 2);
    CHECK(d.circuit.num_qubits == 6);
    CHECK(d.ancilla_of == std::vector<int>{4, 5});
    CHECK(d.comm_gate_indices.size() == 4); // 2 per template
    CHECK(d.circuit.data_qubits == std::vector<int>{0, 1, 2, 3}); // residency restored
    check_structure(d);
}

TEST_CASE("ghz(4) migrate lowering teleports once") {
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};
    DistributedCircuit d = lower(c, a, LowerMode::Migrate);
    CHECK(d.teleport_count == 1);
    CHECK(d.circuit.gates.size() == 14); // 3 retained + template + local CX
    CHECK(d.circuit.data_qubits == std::vector<int>{0, 5, 2, 3}); // q1 parked on anc(1)
    check_structure(d);
}

TEST_CASE("lowering requires a decomposed, covered circuit") {
    Circuit c;
    c.num_qubits = 3;
    c.append(Gate::ccx(0, 1, 2));
    CHECK_THROWS_AS(lower(c, Assignment{1, {0, 0, 0}}, LowerMode::Roundtrip), Error);
    Circuit ghz = make_ghz(3);
    CHECK_THROWS_AS(lower(ghz, Assignment{2, {0, 0}}, LowerMode::Roundtrip), Error);
    CHECK_THROWS_AS(lower(ghz, Assignment{2, {0, 0, 0}}, LowerMode::Roundtrip), Error);
}

TEST_CASE("noiseless lowered ghz(4) matches the monolithic distribution") {
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};
    for (LowerMode mode : {LowerMode::Roundtrip, LowerMode::Migrate}) {
        DistributedCircuit d = lower(c, a, mode);
        CHECK(lowering_tvd(c, d) < 1e-9);
        const std::vector<double> dist =
            exact_output_distribution(d.circuit, NoiseModel::noiseless());
        CHECK(dist[0b0000] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(dist[0b1111] == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("noiseless equivalence holds across benchmarks, k and modes") {
    for (Benchmark b : {Benchmark::Ghz, Benchmark::Dj, Benchmark::W}) {
        for (int n : {4, 5}) {
            Circuit mono = decompose_toffoli(generate_benchmark(b, n));
            for (int k : {2, 3}) {
                Assignment a = partition_circuit(mono, k);
                for (LowerMode mode : {LowerMode::Roundtrip, LowerMode::Migrate}) {
                    CAPTURE(benchmark_name(b));
                    CAPTURE(n);
                    CAPTURE(k);
                    DistributedCircuit d = lower(mono, a, mode);
                    check_structure(d);
                    CHECK(lowering_tvd(mono, d) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("migrate mode handles hub circuits by evicting parked qubits") {
    // Every data qubit hits the oracle ancilla, so migrants must be parked
    // and later evicted from the oracle's partition.
    Circuit dj = make_dj(5, DjOracle::Balanced);
    Assignment a = partition_circuit(dj, 2);
    DistributedCircuit d = lower(dj, a, LowerMode::Migrate);
    check_structure(d);
    CHECK(lowering_tvd(dj, d) < 1e-9);
}

TEST_CASE("whole-template scope tags every template gate") {
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};
    DistributedCircuit d = lower(c, a, LowerMode::Roundtrip, CommScope::WholeTemplate);
    CHECK(d.comm_gate_indices.size() == 20); // both 10-gate templates entirely
    DistStats s = distributed_stats(d);
    CHECK(s.comm_gates == 20);
}

TEST_CASE("distributed stats report counts and depths") {
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};

    DistributedCircuit rt = lower(c, a, LowerMode::Roundtrip);
    DistStats srt = distributed_stats(rt);
    CHECK(srt.teleports == 2);
    CHECK(srt.ancillas == 2);
    CHECK(srt.partition_sizes == std::vector<int>{2, 2});
    CHECK(srt.global_depth == depth(rt.circuit));
    REQUIRE(srt.per_partition_depth.size() == 2);
    for (int pd : srt.per_partition_depth) {
        CHECK(pd > 0);
        CHECK(pd <= srt.global_depth);
    }

    DistributedCircuit mig = lower(c, a, LowerMode::Migrate);
    CHECK(distributed_stats(mig).teleports == 1);

    DistributedCircuit none = lower(c, Assignment{1, {0, 0, 0, 0}}, LowerMode::Roundtrip);
    CHECK(distributed_stats(none).teleports == 0);
}
