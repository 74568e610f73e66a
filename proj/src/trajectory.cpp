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

#include "dqc/trajectory.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dqc/error.hpp"
#include "dqc/gates.hpp"
#include "dqc/rng.hpp"

namespace dqc {

namespace {

using C = std::complex<double>;

class StateVector {
  public:
    explicit StateVector(int n) : n_(n), v_(Eigen::VectorXcd::Zero(int64_t{1} << n)) { v_[0] = 1.0; }

    void apply1(int q, const std::array<C, 4> &u) {
        const uint64_t d = uint64_t{1} << n_;
        const uint64_t mask = uint64_t{1} << q;
        C *a = v_.data();
        for (uint64_t i = 0; i < d; ++i) {
            if (i & mask) continue;
            const C x = a[i], y = a[i | mask];
            a[i] = u[0] * x + u[1] * y;
            a[i | mask] = u[2] * x + u[3] * y;
        }
    }

    void apply_cx(int ctl, int tgt) {
        const uint64_t d = uint64_t{1} << n_;
        const uint64_t mc = uint64_t{1} << ctl;
        const uint64_t mt = uint64_t{1} << tgt;
        C *a = v_.data();
        for (uint64_t i = 0; i < d; ++i)
            if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
    }

    double prob_one(int q) const {
        const uint64_t d = uint64_t{1} << n_;
        const uint64_t mask = uint64_t{1} << q;
        double p = 0.0;
        const C *a = v_.data();
        for (uint64_t i = 0; i < d; ++i)
            if (i & mask) p += std::norm(a[i]);
        return p;
    }

    void collapse(int q, int outcome, double prob) {
        const uint64_t d = uint64_t{1} << n_;
        const uint64_t mask = uint64_t{1} << q;
        const double scale = 1.0 / std::sqrt(prob);
        C *a = v_.data();
        for (uint64_t i = 0; i < d; ++i) {
            const bool one = (i & mask) != 0;
            if (one == (outcome == 1))
                a[i] *= scale;
            else
                a[i] = 0.0;
        }
    }

    int measure(int q, Prng &rng) {
        const double p1 = prob_one(q);
        const int outcome = rng.uniform01() < p1 ? 1 : 0;
        collapse(q, outcome, outcome ? p1 : 1.0 - p1);
        return outcome;
    }

    /// Born-rule draw of a full basis state.
    uint64_t sample(Prng &rng) const {
        const uint64_t d = uint64_t{1} << n_;
        double u = rng.uniform01();
        const C *a = v_.data();
        for (uint64_t i = 0; i < d; ++i) {
            u -= std::norm(a[i]);
            if (u <= 0.0) return i;
        }
        return d - 1;
    }

  private:
    int n_;
    Eigen::VectorXcd v_;
};

void apply_pauli(StateVector &sv, int q, int which) {
    switch (which) {
        case 0: sv.apply1(q, kPauliX); break;
        case 1: sv.apply1(q, kPauliY); break;
        default: sv.apply1(q, kPauliZ); break;
    }
}

} // namespace

ShotResult simulate_shots(const Circuit &c, const NoiseModel &noise, int shots, uint64_t seed,
                          int max_qubits) {
    noise.validate();
    validate(c);
    if (shots < 1) throw Error("shot backend: shots must be positive");
    if (c.num_qubits > max_qubits) throw Error("shot backend: circuit exceeds the qubit cap");

    ShotResult result;
    result.shots = shots;
    result.seed = seed;
    for (int shot = 0; shot < shots; ++shot) {
        Prng rng(mix_seed(seed, static_cast<uint64_t>(shot)));
        StateVector sv(c.num_qubits);
        std::vector<int> bits(static_cast<size_t>(c.num_clbits), -1);
        for (const Gate &g : c.gates) {
            const double p = g.comm ? noise.p_comm() : noise.p_local;
            switch (g.kind) {
                case GateKind::Cx: sv.apply_cx(g.qubits[0], g.qubits[1]); break;
                case GateKind::Ccx: throw Error("shot backend: decompose Toffoli gates first");
                case GateKind::Measure:
                    bits[static_cast<size_t>(g.clbit)] = sv.measure(g.qubits[0], rng);
                    break;
                case GateKind::Reset:
                    if (sv.measure(g.qubits[0], rng)) sv.apply1(g.qubits[0], kPauliX);
                    break;
                case GateKind::CondX:
                case GateKind::CondZ: {
                    const int bit = bits[static_cast<size_t>(g.clbit)];
                    if (bit < 0) throw Error("shot backend: conditioned on an unwritten bit");
                    if (bit)
                        sv.apply1(g.qubits[0], g.kind == GateKind::CondX ? kPauliX : kPauliZ);
                    break;
                }
                default: sv.apply1(g.qubits[0], gate_matrix1(g.kind, g.angle)); break;
            }
            if (is_unitary(g.kind) && p > 0.0 && rng.uniform01() < p) {
                if (g.qubits.size() == 1) {
                    apply_pauli(sv, g.qubits[0], static_cast<int>(rng.below(3)));
                } else {
                    // One of the 15 non-identity two-qubit Pauli products.
                    const int idx = static_cast<int>(rng.below(15)) + 1;
                    const int pa = idx & 3, pb = idx >> 2;
                    if (pa) apply_pauli(sv, g.qubits[0], pa - 1);
                    if (pb) apply_pauli(sv, g.qubits[1], pb - 1);
                }
            }
        }
        const uint64_t basis = sv.sample(rng);
        std::string key(c.data_qubits.size(), '0');
        for (size_t j = 0; j < c.data_qubits.size(); ++j)
            if ((basis >> c.data_qubits[j]) & 1) key[j] = '1';
        ++result.counts[key];
    }
    return result;
}

double expectation_from_shots(const ShotResult &result, const ObservableSpec &observable) {
    if (result.shots == 0) throw Error("shot expectation: empty result");
    double acc = 0.0;
    for (const auto &[key, count] : result.counts) {
        if (observable.kind == ObservableKind::ZParity) {
            int ones = 0;
            for (char ch : key) ones += ch == '1';
            acc += (ones & 1) ? -static_cast<double>(count) : static_cast<double>(count);
        } else {
            uint64_t bits = 0;
            for (size_t j = 0; j < key.size(); ++j)
                if (key[j] == '1') bits |= uint64_t{1} << j;
            for (uint64_t s : observable.support)
                if (s == bits) {
                    acc += static_cast<double>(count);
                    break;
                }
        }
    }
    return acc / static_cast<double>(result.shots);
}

} // namespace dqc
