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

#include "dqc/zne.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dqc/density.hpp"
#include "dqc/error.hpp"
#include "dqc/rng.hpp"
#include "dqc/trajectory.hpp"

namespace dqc {

void ScaleSchedule::validate() const {
    if (factors.empty()) throw Error("schedule: no scale factors");
    if (factors.front() != 1.0) throw Error("schedule: first factor must be 1.0");
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 1.0) throw Error("schedule: factors must be >= 1");
        if (i > 0 && factors[i] <= factors[i - 1])
            throw Error("schedule: factors must be strictly increasing");
    }
}

const char *strategy_name(Strategy s) { return s == Strategy::Global ? "global" : "local"; }

Circuit fold_global(const Circuit &c, double lambda) {
    if (lambda < 1.0) throw Error("fold: lambda must be >= 1");
    std::vector<size_t> unitary_pos;
    for (size_t i = 0; i < c.gates.size(); ++i)
        if (is_unitary(c.gates[i].kind)) unitary_pos.push_back(i);
    const long long num_unitary = static_cast<long long>(unitary_pos.size());
    if (num_unitary == 0) throw Error("fold: circuit has no unitary gates");

    const long long pairs = std::llround((lambda - 1.0) * static_cast<double>(num_unitary) / 2.0);
    const long long whole = pairs / num_unitary;
    const long long rem = pairs % num_unitary;

    Circuit out;
    out.num_qubits = c.num_qubits;
    out.num_clbits = c.num_clbits;
    out.data_qubits = c.data_qubits;
    const size_t insert_after = unitary_pos.back();
    std::vector<Gate> gates;
    gates.reserve(c.gates.size() + static_cast<size_t>(2 * pairs));
    for (size_t i = 0; i <= insert_after; ++i) gates.push_back(c.gates[i]);
    for (long long f = 0; f < whole; ++f) {
        for (auto it = unitary_pos.rbegin(); it != unitary_pos.rend(); ++it)
            gates.push_back(adjoint(c.gates[*it]));
        for (size_t pos : unitary_pos) gates.push_back(c.gates[pos]);
    }
    for (size_t i = insert_after + 1; i < c.gates.size(); ++i) gates.push_back(c.gates[i]);

    // Fold the last `rem` unitary gates of the assembled sequence in place,
    // inserting from the back so earlier indices stay valid.
    std::vector<size_t> tail;
    for (size_t i = gates.size(); i-- > 0 && static_cast<long long>(tail.size()) < rem;)
        if (is_unitary(gates[i].kind)) tail.push_back(i);
    for (size_t idx : tail) {
        Gate g = gates[idx];
        gates.insert(gates.begin() + static_cast<long>(idx) + 1, {adjoint(g), g});
    }
    for (Gate &g : gates) out.append(std::move(g));
    return out;
}

DistributedCircuit fold_local(const DistributedCircuit &d, double lambda) {
    if (lambda < 1.0) throw Error("fold: lambda must be >= 1");
    const Circuit &c = d.circuit;
    const int k = d.assignment.k;

    auto foldable = [&](const Gate &g) { return is_unitary(g.kind) && !g.comm; };
    auto partition_of = [&](const Gate &g) {
        return d.assignment.part_of[static_cast<size_t>(g.qubits[0])];
    };

    std::vector<long long> count(static_cast<size_t>(k), 0);
    for (const Gate &g : c.gates)
        if (foldable(g)) ++count[static_cast<size_t>(partition_of(g))];
    std::vector<long long> whole(static_cast<size_t>(k), 0), rem(static_cast<size_t>(k), 0);
    for (int p = 0; p < k; ++p) {
        if (count[static_cast<size_t>(p)] == 0) continue;
        const long long pairs =
            std::llround((lambda - 1.0) * static_cast<double>(count[static_cast<size_t>(p)]) / 2.0);
        whole[static_cast<size_t>(p)] = pairs / count[static_cast<size_t>(p)];
        rem[static_cast<size_t>(p)] = pairs % count[static_cast<size_t>(p)];
    }
    // The last `rem[p]` foldable gates of partition p get one extra pair.
    std::vector<long long> seen(static_cast<size_t>(k), 0);
    std::vector<long long> extra_from(static_cast<size_t>(k), 0);
    for (int p = 0; p < k; ++p)
        extra_from[static_cast<size_t>(p)] = count[static_cast<size_t>(p)] - rem[static_cast<size_t>(p)];

    DistributedCircuit out;
    out.assignment = d.assignment;
    out.ancilla_of = d.ancilla_of;
    out.teleport_count = d.teleport_count;
    out.circuit.num_qubits = c.num_qubits;
    out.circuit.num_clbits = c.num_clbits;
    out.circuit.data_qubits = c.data_qubits;
    for (const Gate &g : c.gates) {
        if (g.comm) out.comm_gate_indices.push_back(static_cast<int>(out.circuit.gates.size()));
        out.circuit.append(g);
        if (!foldable(g)) continue;
        const int p = partition_of(g);
        long long pairs = whole[static_cast<size_t>(p)];
        if (seen[static_cast<size_t>(p)]++ >= extra_from[static_cast<size_t>(p)]) ++pairs;
        for (long long i = 0; i < pairs; ++i) {
            out.circuit.append(adjoint(g));
            out.circuit.append(g);
        }
    }
    return out;
}

double extrapolate_linear(const std::vector<std::pair<double, double>> &points) {
    if (points.size() < 2) throw Error("extrapolation: need at least two points");
    bool distinct = false;
    for (const auto &[x, y] : points)
        if (x != points.front().first) distinct = true;
    if (!distinct) throw Error("extrapolation: scales are all identical");
    Eigen::MatrixXd design(points.size(), 2);
    Eigen::VectorXd rhs(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        design(static_cast<long>(i), 0) = 1.0;
        design(static_cast<long>(i), 1) = points[i].first;
        rhs(static_cast<long>(i)) = points[i].second;
    }
    Eigen::Vector2d coeff = design.colPivHouseholderQr().solve(rhs);
    return coeff(0);
}

namespace {

double simulate_distributed(const DistributedCircuit &d, const NoiseModel &noise,
                            const MitigateOptions &options, size_t scale_index) {
    if (options.backend == BackendKind::Exact)
        return simulate_exact_expectation(d.circuit, noise, options.observable,
                                          options.max_qubits);
    ShotResult shots = simulate_shots(d.circuit, noise, options.shots,
                                      mix_seed(options.seed, scale_index), options.max_qubits);
    return expectation_from_shots(shots, options.observable);
}

} // namespace

MitigationResult mitigate(Strategy strategy, const Circuit &c, const Assignment &a,
                          const NoiseModel &noise, const MitigateOptions &options) {
    options.schedule.validate();
    noise.validate();
    MitigationResult result;
    result.strategy = strategy;

    DistributedCircuit base;
    if (strategy == Strategy::Local) base = lower(c, a, options.mode, options.comm_scope);

    for (size_t i = 0; i < options.schedule.factors.size(); ++i) {
        const double lambda = options.schedule.factors[i];
        DistributedCircuit scaled = strategy == Strategy::Global
                                        ? lower(fold_global(c, lambda), a, options.mode,
                                                options.comm_scope)
                                        : fold_local(base, lambda);
        DistStats stats = distributed_stats(scaled);
        result.depth_per_scale.push_back(stats.global_depth);
        result.max_partition_depth_per_scale.push_back(
            *std::max_element(stats.per_partition_depth.begin(), stats.per_partition_depth.end()));
        result.comm_count_per_scale.push_back(stats.comm_gates);
        result.teleport_count_per_scale.push_back(stats.teleports);
        result.per_scale.emplace_back(lambda, simulate_distributed(scaled, noise, options, i));
    }
    result.zero_noise_estimate = extrapolate_linear(result.per_scale);
    return result;
}

} // namespace dqc
