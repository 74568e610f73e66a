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

#ifndef DQC_TRAJECTORY_HPP
#define DQC_TRAJECTORY_HPP

#include <cstdint>
#include <map>
#include <string>

#include "dqc/circuit.hpp"
#include "dqc/noise.hpp"

namespace dqc {

inline constexpr int kShotBackendDefaultMaxQubits = 24;

/// Sampled measurement outcomes. Keys are data-qubit bitstrings with
/// character j holding logical data qubit j.
struct ShotResult {
    std::map<std::string, int> counts;
    int shots = 0;
    uint64_t seed = 0;
};

/// Statevector trajectories: per shot, each gate's depolarizing channel is
/// sampled (a uniformly random non-identity Pauli with probability p),
/// measurements collapse by the Born rule, and conditioned gates consult the
/// recorded bits. Deterministic given the seed; shot streams are independent
/// of execution order.
ShotResult simulate_shots(const Circuit &c, const NoiseModel &noise, int shots, uint64_t seed,
                          int max_qubits = kShotBackendDefaultMaxQubits);

double expectation_from_shots(const ShotResult &result, const ObservableSpec &observable);

} // namespace dqc

#endif
