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

#ifndef DQC_ZNE_HPP
#define DQC_ZNE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/distribute.hpp"
#include "dqc/noise.hpp"
#include "dqc/partition.hpp"

namespace dqc {

struct ScaleSchedule {
    std::vector<double> factors = {1.0, 1.5, 2.0, 2.5, 3.0};
    void validate() const;
};

/// Whole-circuit unitary folding to noise-scale factor lambda: append
/// (reversed adjoints + originals) for every full fold, then fold the last
/// remainder gates in place as g -> g g' g. Measure and other non-unitary
/// gates keep their terminal positions.
Circuit fold_global(const Circuit &c, double lambda);

/// Per-partition gate-level folding of a lowered circuit. Comm-tagged,
/// Measure, Reset and Conditioned gates are never folded.
DistributedCircuit fold_local(const DistributedCircuit &d, double lambda);

/// Ordinary least squares y = a + b*lambda; returns a, the zero-noise value.
double extrapolate_linear(const std::vector<std::pair<double, double>> &points);

enum class Strategy { Global, Local };
enum class BackendKind { Exact, Shots };

const char *strategy_name(Strategy s);

struct MitigateOptions {
    ScaleSchedule schedule;
    BackendKind backend = BackendKind::Exact;
    LowerMode mode = LowerMode::Roundtrip;
    CommScope comm_scope = CommScope::BellOnly;
    ObservableSpec observable;
    int shots = 200;
    uint64_t seed = 0;
    int max_qubits = 12;
};

struct MitigationResult {
    Strategy strategy = Strategy::Global;
    std::vector<std::pair<double, double>> per_scale; // (factor, expectation)
    double zero_noise_estimate = 0.0;
    std::vector<int> depth_per_scale;                 // lowered-circuit depth
    std::vector<int> max_partition_depth_per_scale;
    std::vector<int> comm_count_per_scale;
    std::vector<int> teleport_count_per_scale;
};

/// Global: fold the monolithic circuit at each factor, lower, simulate.
/// Local: lower once, fold each partition's local gates, simulate.
MitigationResult mitigate(Strategy strategy, const Circuit &c, const Assignment &a,
                          const NoiseModel &noise, const MitigateOptions &options);

} // namespace dqc

#endif
