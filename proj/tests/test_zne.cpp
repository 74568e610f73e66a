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

#include "dqc/density.hpp"
#include "dqc/error.hpp"
#include "dqc/rng.hpp"
#include "dqc/zne.hpp"
#include "oracles.hpp"

using namespace dqc;

namespace {

int count_unitary(const Circuit &c) {
    int n = 0;
    for (const Gate &g : c.gates) n += is_unitary(g.kind);
    return n;
}

int count_kind(const Circuit &c, GateKind k) {
    int n = 0;
    for (const Gate &g : c.gates) n += g.kind == k;
    return n;
}

int count_comm(const Circuit &c) {
    int n = 0;
    for (const Gate &g : c.gates) n += g.comm;
    return n;
}

Circuit strip_measures(Circuit c) {
    Circuit out;
    out.num_qubits = c.num_qubits;
    out.data_qubits = c.data_qubits;
    for (const Gate &g : c.gates)
        if (is_unitary(g.kind)) out.append(g);
    return out;
}

} // namespace

TEST_CASE("folding at lambda 1 is the identity") {
    Circuit c = make_ghz(3);
    CHECK(fold_global(c, 1.0).gates == c.gates);
}

TEST_CASE("folding at lambda 3 triples the unitary count and keeps the unitary") {
    Circuit c = strip_measures(make_w(3));
    const int unitaries = count_unitary(c);
    Circuit folded = fold_global(c, 3.0);
    CHECK(count_unitary(folded) == 3 * unitaries);
    Eigen::MatrixXcd want = oracle::circuit_unitary(c);
    Eigen::MatrixXcd got = oracle::circuit_unitary(folded);
    CHECK((want - got).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fractional folding follows the pair-count formula") {
    // lambda = 1.5 with L = 4: round(0.5 * 4 / 2) = 1 extra pair -> 6 gates.
    Circuit c;
    c.num_qubits = 2;
    c.data_qubits = {0, 1};
    c.append(Gate::h(0));
    c.append(Gate::cx(0, 1));
    c.append(Gate::t(1));
    c.append(Gate::h(1));
    Circuit folded = fold_global(c, 1.5);
    CHECK(folded.gates.size() == 6);
    // The remainder folds from the circuit end: ... t(1), h(1), h(1), h(1).
    CHECK(folded.gates[3] == Gate::h(1));
    CHECK(folded.gates[4] == Gate::h(1));
    CHECK(folded.gates[5] == Gate::h(1));
    Eigen::MatrixXcd want = oracle::circuit_unitary(c);
    Eigen::MatrixXcd got = oracle::circuit_unitary(folded);
    CHECK((want - got).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gate count after folding is L + 2k for the whole schedule") {
    Prng rng(5150);
    for (int trial = 0; trial < 12; ++trial) {
        Circuit c;
        c.num_qubits = 3;
        c.data_qubits = {0, 1, 2};
        const int len = 1 + static_cast<int>(rng.below(10));
        for (int i = 0; i < len; ++i) {
            switch (rng.below(4)) {
                case 0: c.append(Gate::h(static_cast<int>(rng.below(3)))); break;
                case 1: c.append(Gate::t(static_cast<int>(rng.below(3)))); break;
                case 2: c.append(Gate::ry(rng.uniform01(), static_cast<int>(rng.below(3)))); break;
                default: {
                    const int a = static_cast<int>(rng.below(3));
                    c.append(Gate::cx(a, (a + 1) % 3));
                    break;
                }
            }
        }
        const long long L = count_unitary(c);
        for (double lambda : {1.0, 1.5, 2.0, 2.5, 3.0}) {
            const long long k = std::llround((lambda - 1.0) * static_cast<double>(L) / 2.0);
            Circuit folded = fold_global(c, lambda);
            CAPTURE(lambda);
            CHECK(static_cast<long long>(folded.gates.size()) == L + 2 * k);
            Eigen::MatrixXcd want = oracle::circuit_unitary(c);
            Eigen::MatrixXcd got = oracle::circuit_unitary(folded);
            CHECK((want - got).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("measures stay terminal under global folding") {
    Circuit dj = make_dj(3, DjOracle::Balanced);
    Circuit folded = fold_global(dj, 3.0);
    bool seen_measure = false;
    for (const Gate &g : folded.gates) {
        if (g.kind == GateKind::Measure) seen_measure = true;
        if (seen_measure) CHECK(g.kind == GateKind::Measure);
    }
    CHECK(count_kind(folded, GateKind::Measure) == count_kind(dj, GateKind::Measure));
}

TEST_CASE("folding rejects bad inputs") {
    Circuit c = make_ghz(2);
    CHECK_THROWS_AS(fold_global(c, 0.5), Error);
    Circuit no_unitary;
    no_unitary.num_qubits = 1;
    no_unitary.num_clbits = 1;
    no_unitary.append(Gate::measure(0, 0));
    CHECK_THROWS_AS(fold_global(no_unitary, 2.0), Error);
}

TEST_CASE("local folding leaves comm and non-unitary gates alone") {
    Circuit mono = make_dj(4, DjOracle::Balanced);
    Assignment a = partition_circuit(mono, 2);
    DistributedCircuit d = lower(mono, a, LowerMode::Roundtrip);
    for (double lambda : {1.0, 1.5, 2.0, 2.5, 3.0}) {
        DistributedCircuit folded = fold_local(d, lambda);
        CAPTURE(lambda);
        CHECK(count_comm(folded.circuit) == count_comm(d.circuit));
        CHECK(count_kind(folded.circuit, GateKind::Measure) ==
              count_kind(d.circuit, GateKind::Measure));
        CHECK(count_kind(folded.circuit, GateKind::Reset) ==
              count_kind(d.circuit, GateKind::Reset));
        CHECK(count_kind(folded.circuit, GateKind::CondX) ==
              count_kind(d.circuit, GateKind::CondX));
        CHECK(count_kind(folded.circuit, GateKind::CondZ) ==
              count_kind(d.circuit, GateKind::CondZ));
        CHECK(folded.teleport_count == d.teleport_count);
        // comm_gate_indices track the retagged positions.
        int comm_at_indices = 0;
        for (int idx : folded.comm_gate_indices)
            comm_at_indices += folded.circuit.gates[static_cast<size_t>(idx)].comm;
        CHECK(comm_at_indices == static_cast<int>(folded.comm_gate_indices.size()));
    }
    CHECK(fold_local(d, 1.0).circuit.gates == d.circuit.gates);
}

TEST_CASE("local folding at lambda 3 triples each partition's local unitaries") {
    Circuit mono = make_ghz(6);
    Assignment a = partition_circuit(mono, 3);
    DistributedCircuit d = lower(mono, a, LowerMode::Roundtrip);
    DistributedCircuit folded = fold_local(d, 3.0);
    auto local_unitaries = [&](const DistributedCircuit &dc, int p) {
        int n = 0;
        for (const Gate &g : dc.circuit.gates)
            if (is_unitary(g.kind) && !g.comm &&
                dc.assignment.part_of[static_cast<size_t>(g.qubits[0])] == p)
                ++n;
        return n;
    };
    for (int p = 0; p < 3; ++p) CHECK(local_unitaries(folded, p) == 3 * local_unitaries(d, p));
    // Noiseless semantics unchanged by folding.
    const std::vector<double> before =
        exact_output_distribution(d.circuit, NoiseModel::noiseless());
    const std::vector<double> after =
        exact_output_distribution(folded.circuit, NoiseModel::noiseless());
    for (size_t i = 0; i < before.size(); ++i)
        CHECK(before[i] == doctest::Approx(after[i]).epsilon(1e-9));
}

TEST_CASE("depth grows monotonically with the scale factor") {
    for (Benchmark b : {Benchmark::Ghz, Benchmark::W}) {
        Circuit c = generate_benchmark(b, 5);
        int prev = 0;
        for (double lambda : {1.0, 1.5, 2.0, 2.5, 3.0}) {
            const int d = depth(fold_global(c, lambda));
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("linear extrapolation recovers exact lines") {
    CHECK(extrapolate_linear({{1, 0.9}, {2, 0.8}, {3, 0.7}}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(extrapolate_linear({{1, 0.42}, {2, 0.42}, {3.5, 0.42}}) ==
          doctest::Approx(0.42).epsilon(1e-12));
    CHECK(extrapolate_linear({{1, 1}, {2, 0}, {3, 0}}) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    Prng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform01() * 4 - 2;
        const double b = rng.uniform01() * 2 - 1;
        std::vector<std::pair<double, double>> pts;
        for (double lambda : {1.0, 1.5, 2.0, 2.5, 3.0}) pts.emplace_back(lambda, a + b * lambda);
        CHECK(extrapolate_linear(pts) == doctest::Approx(a).epsilon(1e-12));
    }
}

TEST_CASE("extrapolation rejects degenerate inputs") {
    CHECK_THROWS_AS(extrapolate_linear({{1, 1}}), Error);
    CHECK_THROWS_AS(extrapolate_linear({{2, 1}, {2, 3}}), Error);
}

TEST_CASE("noiseless mitigation is flat and exact") {
    Circuit c = make_ghz(4);
    Assignment a = partition_circuit(c, 2);
    MitigateOptions options;
    for (Strategy s : {Strategy::Global, Strategy::Local}) {
        MitigationResult r = mitigate(s, c, a, NoiseModel::noiseless(), options);
        for (const auto &[lambda, y] : r.per_scale)
            CHECK(y == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.zero_noise_estimate == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("local strategy keeps comm counts constant across the schedule") {
    Circuit c = decompose_toffoli(make_dj(4, DjOracle::Balanced));
    Assignment a = partition_circuit(c, 3);
    MitigateOptions options;
    MitigationResult r = mitigate(Strategy::Local, c, a, NoiseModel{0.01, 1.1}, options);
    for (size_t i = 1; i < r.comm_count_per_scale.size(); ++i) {
        CHECK(r.comm_count_per_scale[i] == r.comm_count_per_scale[0]);
        CHECK(r.teleport_count_per_scale[i] == r.teleport_count_per_scale[0]);
    }
}

TEST_CASE("global strategy scales teleports with the folded cut instances") {
    // Whole-circuit folding replicates the cut gates, so their teleports
    // multiply with lambda; the teleport primitives themselves are inserted
    // after folding and are never folded.
    Circuit c = make_ghz(4);
    Assignment a{2, {0, 0, 1, 1}};
    MitigateOptions options;
    MitigationResult r = mitigate(Strategy::Global, c, a, NoiseModel{0.01, 1.0}, options);
    CHECK(r.teleport_count_per_scale.front() == 2); // one roundtrip cut
    CHECK(r.teleport_count_per_scale.back() == 6);  // lambda = 3: three cut instances
}

TEST_CASE("global folding then partitioning reproduces the unfolded assignment") {
    for (Benchmark b : {Benchmark::Ghz, Benchmark::Dj, Benchmark::W}) {
        for (int n : {4, 6, 8}) {
            Circuit c = decompose_toffoli(generate_benchmark(b, n));
            for (int k = 2; k <= 4; ++k) {
                Assignment base = partition_circuit(c, k);
                // Exact at whole folds (uniform weight scaling preserves
                // every CNM decision); fractional folds are recorded only.
                Assignment tripled = partition_circuit(fold_global(c, 3.0), k);
                CHECK(base.part_of == tripled.part_of);
                for (double lambda : {1.5, 2.0, 2.5}) {
                    Assignment frac = partition_circuit(fold_global(c, lambda), k);
                    if (frac.part_of != base.part_of) {
                        MESSAGE("fold-then-partition differs: " << benchmark_name(b) << " n=" << n
                                                                << " k=" << k
                                                                << " lambda=" << lambda);
                    }
                }
            }
        }
    }
}

TEST_CASE("per-scale parity magnitude decays with lambda under noise") {
    ObservableSpec parity;
    Circuit c = make_ghz(4);
    Assignment a = partition_circuit(c, 2);
    MitigateOptions options;
    MitigationResult r = mitigate(Strategy::Global, c, a, NoiseModel{0.02, 1.1}, options);
    for (size_t i = 1; i < r.per_scale.size(); ++i)
        CHECK(std::abs(r.per_scale[i].second) <= std::abs(r.per_scale[i - 1].second) + 1e-9);
}
