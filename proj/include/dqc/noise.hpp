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

#ifndef DQC_NOISE_HPP
#define DQC_NOISE_HPP

#include <cstdint>
#include <vector>

#include "dqc/error.hpp"

namespace dqc {

/// Depolarizing noise: local gates err with probability p_local, comm-tagged
/// gates with p_comm = alpha * p_local (clamped at 1).
struct NoiseModel {
    double p_local = 0.0;
    double alpha = 1.0;

    double p_comm() const {
        double p = alpha * p_local;
        return p > 1.0 ? 1.0 : p;
    }

    void validate() const {
        if (p_local < 0.0 || p_local > 1.0) throw Error("noise: p_local must be in [0, 1]");
        if (alpha < 0.0) throw Error("noise: alpha must be nonnegative");
    }

    static NoiseModel noiseless() { return {0.0, 1.0}; }
};

enum class ObservableKind { ZParity, IdealProjector };

/// Measured quantity. ZParity is the tensor-Z expectation over the data
/// qubits; IdealProjector is the probability mass on `support`, the
/// noiseless output bitstrings (keys over logical data-qubit order).
struct ObservableSpec {
    ObservableKind kind = ObservableKind::ZParity;
    std::vector<uint64_t> support;
};

} // namespace dqc

#endif
