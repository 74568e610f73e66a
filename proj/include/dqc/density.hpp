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

#ifndef DQC_DENSITY_HPP
#define DQC_DENSITY_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/noise.hpp"

namespace dqc {

using Complex = std::complex<double>;

/// Dense 2^n x 2^n density matrix. Gates, channels and measurements are
/// applied in place through single-pass block kernels, so even 12-qubit
/// states stay memory-bound rather than BLAS-bound.
class DensityState {
  public:
    /// |0...0><0...0| on n qubits.
    explicit DensityState(int n);

    int num_qubits() const { return n_; }
    uint64_t dim() const { return uint64_t{1} << n_; }

    const Eigen::VectorXcd &raw() const { return m_; }
    Complex entry(uint64_t row, uint64_t col) const { return m_[static_cast<long>(row + (col << n_))]; }

    /// U rho U^dag followed by a depolarizing channel of strength p on the
    /// same qubit (u row-major).
    void apply_unitary1(int q, const std::array<Complex, 4> &u, double p = 0.0);
    void apply_cx(int ctl, int tgt, double p = 0.0);
    /// Controlled-u with no noise; realizes classically conditioned gates
    /// after the control has been dephased by its measurement.
    void apply_controlled1(int ctl, int tgt, const std::array<Complex, 4> &u);

    void apply_depolarizing1(int q, double p);
    void apply_depolarizing2(int a, int b, double p);

    /// Complete dephasing in the computational basis of q (measurement
    /// without readout).
    void dephase(int q);
    /// Trace out q and reinitialize it to |0>.
    void reset(int q);

    double trace_real() const;
    std::vector<double> diagonal() const;

  private:
    int n_;
    Eigen::VectorXcd m_; // column-major 2^n x 2^n, element (r, c) at r + (c << n)
};

/// Apply the uniform depolarizing channel on 1 or 2 qubits.
void apply_depolarizing(DensityState &state, const std::vector<int> &qubits, double p);

/// Default exact-backend capacity; the simulator mirrors a hard memory cap.
inline constexpr int kExactBackendDefaultMaxQubits = 12;

/// Evolve the circuit under the noise model and return <O>. Unitary gates
/// carry one depolarizing application on their qubits (p_local, or p_comm if
/// comm-tagged); Measure dephases and records the qubit as the bit's source;
/// Conditioned gates become controlled gates from the recorded source.
double simulate_exact_expectation(const Circuit &c, const NoiseModel &noise,
                                  const ObservableSpec &observable,
                                  int max_qubits = kExactBackendDefaultMaxQubits);

/// Probability of each data-qubit bitstring (keys in logical data order).
std::vector<double> exact_output_distribution(const Circuit &c, const NoiseModel &noise,
                                              int max_qubits = kExactBackendDefaultMaxQubits);

/// Evolve and hand the final state to the caller (shared path of the two
/// functions above).
DensityState run_density(const Circuit &c, const NoiseModel &noise,
                         int max_qubits = kExactBackendDefaultMaxQubits);

double expectation_from_density(const DensityState &state, const Circuit &c,
                                const ObservableSpec &observable);

} // namespace dqc

#endif
