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

#include "dqc/density.hpp"

#include <cmath>

#include "dqc/error.hpp"
#include "dqc/gates.hpp"

namespace dqc {

namespace {

// Re-insert a zero bit at position q: maps [0, 2^(n-1)) onto the indices
// whose q-th bit is clear.
inline uint64_t expand_bit(uint64_t packed, uint64_t mask) {
    return ((packed & ~(mask - 1)) << 1) | (packed & (mask - 1));
}

} // namespace

DensityState::DensityState(int n) : n_(n) {
    if (n < 1) throw Error("density state: need at least one qubit");
    if (n > 15) throw Error("density state: too many qubits for a dense matrix");
    m_ = Eigen::VectorXcd::Zero(static_cast<long>(dim() * dim()));
    m_[0] = 1.0;
}

void DensityState::apply_unitary1(int q, const std::array<Complex, 4> &u, double p) {
    const uint64_t d = dim();
    const uint64_t mask = uint64_t{1} << q;
    const uint64_t half = d >> 1;
    const double gamma = 4.0 * p / 3.0;
    const double keep = 1.0 - gamma;
    Complex *a = m_.data();
    for (uint64_t cp = 0; cp < half; ++cp) {
        const uint64_t c0 = expand_bit(cp, mask);
        const uint64_t c1 = c0 | mask;
        Complex *col0 = a + (c0 << n_);
        Complex *col1 = a + (c1 << n_);
        for (uint64_t rp = 0; rp < half; ++rp) {
            const uint64_t r0 = expand_bit(rp, mask);
            const uint64_t r1 = r0 | mask;
            const Complex b00 = col0[r0], b10 = col0[r1];
            const Complex b01 = col1[r0], b11 = col1[r1];
            // Left-multiply by U.
            const Complex l00 = u[0] * b00 + u[1] * b10;
            const Complex l10 = u[2] * b00 + u[3] * b10;
            const Complex l01 = u[0] * b01 + u[1] * b11;
            const Complex l11 = u[2] * b01 + u[3] * b11;
            // Right-multiply by U^dag.
            Complex n00 = l00 * std::conj(u[0]) + l01 * std::conj(u[1]);
            Complex n01 = l00 * std::conj(u[2]) + l01 * std::conj(u[3]);
            Complex n10 = l10 * std::conj(u[0]) + l11 * std::conj(u[1]);
            Complex n11 = l10 * std::conj(u[2]) + l11 * std::conj(u[3]);
            if (gamma != 0.0) {
                const Complex mixed = 0.5 * gamma * (n00 + n11);
                n00 = keep * n00 + mixed;
                n11 = keep * n11 + mixed;
                n01 *= keep;
                n10 *= keep;
            }
            col0[r0] = n00;
            col0[r1] = n10;
            col1[r0] = n01;
            col1[r1] = n11;
        }
    }
}

void DensityState::apply_cx(int ctl, int tgt, double p) {
    const uint64_t d = dim();
    const uint64_t mc = uint64_t{1} << ctl;
    const uint64_t mt = uint64_t{1} << tgt;
    const uint64_t lo = std::min(mc, mt), hi = std::max(mc, mt);
    const uint64_t quarter = d >> 2;
    const double gamma = 16.0 * p / 15.0;
    const double keep = 1.0 - gamma;
    Complex *a = m_.data();
    // Expand two zero bits at the ctl/tgt positions.
    auto expand2 = [&](uint64_t packed) {
        uint64_t x = expand_bit(packed, lo);
        return expand_bit(x, hi);
    };
    for (uint64_t cp = 0; cp < quarter; ++cp) {
        const uint64_t cbase = expand2(cp);
        uint64_t cols[4] = {cbase, cbase | mc, cbase | mt, cbase | mc | mt};
        for (uint64_t rp = 0; rp < quarter; ++rp) {
            const uint64_t rbase = expand2(rp);
            uint64_t rows[4] = {rbase, rbase | mc, rbase | mt, rbase | mc | mt};
            Complex block[4][4];
            for (int cc = 0; cc < 4; ++cc)
                for (int rr = 0; rr < 4; ++rr) block[rr][cc] = a[rows[rr] + (cols[cc] << n_)];
            // CX permutation: |ctl=1, tgt> -> |ctl=1, tgt^1>, i.e. swap
            // local states 1 and 3 on rows and columns.
            for (int cc = 0; cc < 4; ++cc) std::swap(block[1][cc], block[3][cc]);
            for (int rr = 0; rr < 4; ++rr) std::swap(block[rr][1], block[rr][3]);
            if (gamma != 0.0) {
                const Complex tr = block[0][0] + block[1][1] + block[2][2] + block[3][3];
                const Complex mixed = 0.25 * gamma * tr;
                for (int rr = 0; rr < 4; ++rr)
                    for (int cc = 0; cc < 4; ++cc) {
                        block[rr][cc] *= keep;
                        if (rr == cc) block[rr][cc] += mixed;
                    }
            }
            for (int cc = 0; cc < 4; ++cc)
                for (int rr = 0; rr < 4; ++rr) a[rows[rr] + (cols[cc] << n_)] = block[rr][cc];
        }
    }
}

void DensityState::apply_controlled1(int ctl, int tgt, const std::array<Complex, 4> &u) {
    const uint64_t d = dim();
    const uint64_t mc = uint64_t{1} << ctl;
    const uint64_t mt = uint64_t{1} << tgt;
    const uint64_t half = d >> 1;
    Complex *a = m_.data();
    // Left-multiply rows with ctl bit set.
    for (uint64_t c = 0; c < d; ++c) {
        Complex *col = a + (c << n_);
        for (uint64_t rp = 0; rp < half; ++rp) {
            uint64_t r0 = expand_bit(rp, mt);
            if (!(r0 & mc)) continue;
            uint64_t r1 = r0 | mt;
            const Complex x = col[r0], y = col[r1];
            col[r0] = u[0] * x + u[1] * y;
            col[r1] = u[2] * x + u[3] * y;
        }
    }
    // Right-multiply columns with ctl bit set.
    for (uint64_t cp = 0; cp < half; ++cp) {
        uint64_t c0 = expand_bit(cp, mt);
        if (!(c0 & mc)) continue;
        uint64_t c1 = c0 | mt;
        Complex *col0 = a + (c0 << n_);
        Complex *col1 = a + (c1 << n_);
        for (uint64_t r = 0; r < d; ++r) {
            const Complex x = col0[r], y = col1[r];
            col0[r] = x * std::conj(u[0]) + y * std::conj(u[1]);
            col1[r] = x * std::conj(u[2]) + y * std::conj(u[3]);
        }
    }
}

void DensityState::apply_depolarizing1(int q, double p) {
    if (p == 0.0) return;
    const uint64_t d = dim();
    const uint64_t mask = uint64_t{1} << q;
    const uint64_t half = d >> 1;
    const double gamma = 4.0 * p / 3.0;
    const double keep = 1.0 - gamma;
    Complex *a = m_.data();
    for (uint64_t cp = 0; cp < half; ++cp) {
        const uint64_t c0 = expand_bit(cp, mask);
        const uint64_t c1 = c0 | mask;
        Complex *col0 = a + (c0 << n_);
        Complex *col1 = a + (c1 << n_);
        for (uint64_t rp = 0; rp < half; ++rp) {
            const uint64_t r0 = expand_bit(rp, mask);
            const uint64_t r1 = r0 | mask;
            const Complex mixed = 0.5 * gamma * (col0[r0] + col1[r1]);
            col0[r0] = keep * col0[r0] + mixed;
            col1[r1] = keep * col1[r1] + mixed;
            col0[r1] *= keep;
            col1[r0] *= keep;
        }
    }
}

void DensityState::apply_depolarizing2(int qa, int qb, double p) {
    if (p == 0.0) return;
    const uint64_t d = dim();
    const uint64_t ma = uint64_t{1} << qa;
    const uint64_t mb = uint64_t{1} << qb;
    const uint64_t lo = std::min(ma, mb), hi = std::max(ma, mb);
    const uint64_t quarter = d >> 2;
    const double gamma = 16.0 * p / 15.0;
    const double keep = 1.0 - gamma;
    Complex *a = m_.data();
    auto expand2 = [&](uint64_t packed) {
        uint64_t x = expand_bit(packed, lo);
        return expand_bit(x, hi);
    };
    for (uint64_t cp = 0; cp < quarter; ++cp) {
        const uint64_t cbase = expand2(cp);
        uint64_t cols[4] = {cbase, cbase | ma, cbase | mb, cbase | ma | mb};
        for (uint64_t rp = 0; rp < quarter; ++rp) {
            const uint64_t rbase = expand2(rp);
            uint64_t rows[4] = {rbase, rbase | ma, rbase | mb, rbase | ma | mb};
            Complex tr = 0.0;
            for (int i = 0; i < 4; ++i) tr += a[rows[i] + (cols[i] << n_)];
            const Complex mixed = 0.25 * gamma * tr;
            for (int rr = 0; rr < 4; ++rr)
                for (int cc = 0; cc < 4; ++cc) {
                    Complex &e = a[rows[rr] + (cols[cc] << n_)];
                    e *= keep;
                    if (rr == cc) e += mixed;
                }
        }
    }
}

void DensityState::dephase(int q) {
    const uint64_t d = dim();
    const uint64_t mask = uint64_t{1} << q;
    Complex *a = m_.data();
    for (uint64_t c = 0; c < d; ++c) {
        Complex *col = a + (c << n_);
        for (uint64_t r = 0; r < d; ++r)
            if ((r ^ c) & mask) col[r] = 0.0;
    }
}

void DensityState::reset(int q) {
    const uint64_t d = dim();
    const uint64_t mask = uint64_t{1} << q;
    const uint64_t half = d >> 1;
    Complex *a = m_.data();
    for (uint64_t cp = 0; cp < half; ++cp) {
        const uint64_t c0 = expand_bit(cp, mask);
        const uint64_t c1 = c0 | mask;
        Complex *col0 = a + (c0 << n_);
        Complex *col1 = a + (c1 << n_);
        for (uint64_t rp = 0; rp < half; ++rp) {
            const uint64_t r0 = expand_bit(rp, mask);
            const uint64_t r1 = r0 | mask;
            col0[r0] += col1[r1];
            col0[r1] = 0.0;
            col1[r0] = 0.0;
            col1[r1] = 0.0;
        }
    }
}

double DensityState::trace_real() const {
    const uint64_t d = dim();
    double t = 0.0;
    for (uint64_t i = 0; i < d; ++i) t += m_[static_cast<long>(i + (i << n_))].real();
    return t;
}

std::vector<double> DensityState::diagonal() const {
    const uint64_t d = dim();
    std::vector<double> out(d);
    for (uint64_t i = 0; i < d; ++i) out[i] = m_[static_cast<long>(i + (i << n_))].real();
    return out;
}

void apply_depolarizing(DensityState &state, const std::vector<int> &qubits, double p) {
    if (p < 0.0 || p > 1.0) throw Error("depolarizing: p must be in [0, 1]");
    if (qubits.size() == 1) {
        state.apply_depolarizing1(qubits[0], p);
    } else if (qubits.size() == 2) {
        state.apply_depolarizing2(qubits[0], qubits[1], p);
    } else {
        throw Error("depolarizing: channel defined for 1 or 2 qubits");
    }
}

DensityState run_density(const Circuit &c, const NoiseModel &noise, int max_qubits) {
    noise.validate();
    validate(c);
    if (c.num_qubits > max_qubits) throw Error("exact backend: circuit exceeds the qubit cap");
    DensityState state(c.num_qubits);
    // Classical bit -> source qubit; -2 marks a source invalidated by reset.
    std::vector<int> source(static_cast<size_t>(c.num_clbits), -1);
    for (const Gate &g : c.gates) {
        const double p = g.comm ? noise.p_comm() : noise.p_local;
        switch (g.kind) {
            case GateKind::Cx: state.apply_cx(g.qubits[0], g.qubits[1], p); break;
            case GateKind::Ccx: throw Error("exact backend: decompose Toffoli gates first");
            case GateKind::Measure: {
                state.dephase(g.qubits[0]);
                int &src = source[static_cast<size_t>(g.clbit)];
                if (src != -1) throw Error("exact backend: classical bit written twice");
                src = g.qubits[0];
                break;
            }
            case GateKind::Reset: {
                state.reset(g.qubits[0]);
                for (int &src : source)
                    if (src == g.qubits[0]) src = -2;
                break;
            }
            case GateKind::CondX:
            case GateKind::CondZ: {
                const int src = source[static_cast<size_t>(g.clbit)];
                if (src == -1) throw Error("exact backend: conditioned on an unwritten bit");
                if (src == -2) throw Error("exact backend: conditioned on an expired bit");
                const auto &u = g.kind == GateKind::CondX ? kPauliX : kPauliZ;
                state.apply_controlled1(src, g.qubits[0], u);
                break;
            }
            default: state.apply_unitary1(g.qubits[0], gate_matrix1(g.kind, g.angle), p); break;
        }
    }
    return state;
}

double expectation_from_density(const DensityState &state, const Circuit &c,
                                const ObservableSpec &observable) {
    const std::vector<double> diag = state.diagonal();
    if (observable.kind == ObservableKind::ZParity) {
        uint64_t mask = 0;
        for (int q : c.data_qubits) mask |= uint64_t{1} << q;
        double e = 0.0;
        for (uint64_t i = 0; i < diag.size(); ++i)
            e += (__builtin_popcountll(i & mask) & 1) ? -diag[i] : diag[i];
        return e;
    }
    // Probability mass on the ideal support, marginalized over data qubits.
    double e = 0.0;
    for (uint64_t i = 0; i < diag.size(); ++i) {
        uint64_t key = 0;
        for (size_t j = 0; j < c.data_qubits.size(); ++j)
            key |= ((i >> c.data_qubits[j]) & 1) << j;
        for (uint64_t s : observable.support)
            if (s == key) {
                e += diag[i];
                break;
            }
    }
    return e;
}

double simulate_exact_expectation(const Circuit &c, const NoiseModel &noise,
                                  const ObservableSpec &observable, int max_qubits) {
    DensityState state = run_density(c, noise, max_qubits);
    return expectation_from_density(state, c, observable);
}

std::vector<double> exact_output_distribution(const Circuit &c, const NoiseModel &noise,
                                              int max_qubits) {
    DensityState state = run_density(c, noise, max_qubits);
    const std::vector<double> diag = state.diagonal();
    std::vector<double> out(uint64_t{1} << c.data_qubits.size(), 0.0);
    for (uint64_t i = 0; i < diag.size(); ++i) {
        uint64_t key = 0;
        for (size_t j = 0; j < c.data_qubits.size(); ++j)
            key |= ((i >> c.data_qubits[j]) & 1) << j;
        out[key] += diag[i];
    }
    return out;
}

} // namespace dqc
