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

#ifndef DQC_HARNESS_HPP
#define DQC_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/distribute.hpp"
#include "dqc/noise.hpp"
#include "dqc/zne.hpp"

namespace dqc {

struct ExperimentConfig {
    Benchmark algorithm = Benchmark::Ghz;
    int n = 4;
    int k = 2;
    double p_local = 0.01;
    double alpha = 1.0;
    Strategy strategy = Strategy::Global;
    int shots = 200;
    BackendKind backend = BackendKind::Exact;
    LowerMode mode = LowerMode::Roundtrip;
    CommScope comm_scope = CommScope::BellOnly;
    ObservableKind observable = ObservableKind::ZParity;
    uint64_t seed = 0;
    int max_qubits = 0; // 0 = backend default

    void validate() const;
    int effective_max_qubits() const;
};

/// One sweep row. `backend_used` is "exact" or "shots", or
/// "skipped_capacity" when the point exceeded the qubit cap and never ran.
struct MetricsRecord {
    ExperimentConfig cfg;
    double e_baseline = 0.0;
    double e_zne = 0.0;
    double delta_e = 0.0;
    double error_reduction = 0.0;
    double depth_overhead_max_lambda = 0.0;
    double depth_overhead_total = 0.0;
    int per_partition_depth_max = 0;
    int cut_count = 0;
    int teleport_count = 0;
    int ancilla_count = 0;
    bool excluded = false;
    std::string backend_used;

    bool skipped() const { return backend_used == "skipped_capacity"; }
};

const char *backend_name(BackendKind b);
const char *mode_name(LowerMode m);
const char *scope_name(CommScope s);
const char *observable_name(ObservableKind o);

Benchmark benchmark_from_string(const std::string &s);
Strategy strategy_from_string(const std::string &s);
BackendKind backend_from_string(const std::string &s);
LowerMode mode_from_string(const std::string &s);
CommScope scope_from_string(const std::string &s);
ObservableKind observable_from_string(const std::string &s);

/// Canonical flat key=value encoding of a config (seed excluded), the input
/// of per-experiment seed derivation.
std::string canonical_config_string(const ExperimentConfig &cfg);
uint64_t derive_seed(uint64_t master_seed, const ExperimentConfig &cfg);

MetricsRecord run_experiment(const ExperimentConfig &cfg);

struct SweepGrid {
    std::vector<Benchmark> algorithms = {Benchmark::Ghz};
    std::vector<int> ns = {4};
    std::vector<int> ks = {2};
    std::vector<double> p_locals = {0.01};
    std::vector<double> alphas = {1.0};
    std::vector<Strategy> strategies = {Strategy::Global};
    std::vector<int> shots = {200};
    std::vector<BackendKind> backends = {BackendKind::Exact};
    std::vector<LowerMode> modes = {LowerMode::Roundtrip};
    std::vector<CommScope> comm_scopes = {CommScope::BellOnly};
    std::vector<ObservableKind> observables = {ObservableKind::ZParity};
    std::vector<int> max_qubits = {0};
    uint64_t master_seed = 0;

    /// Cartesian product in declaration order (leftmost axis slowest), with
    /// per-point seeds derived from the master seed.
    std::vector<ExperimentConfig> expand() const;
};

/// Run every grid point and write the CSV (deterministic row order, one row
/// per point including capacity skips). Returns the records.
std::vector<MetricsRecord> sweep(const SweepGrid &grid, const std::string &out_path,
                                 int workers = 1);

std::string csv_header();
std::string csv_row(const MetricsRecord &r);
void write_csv(const std::vector<MetricsRecord> &records, const std::string &path);

/// Parsed CSV table (header + string cells), the summarize input.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string &name) const;
};

CsvTable read_csv(const std::string &path);
CsvTable parse_csv(const std::string &text);

struct SummaryRow {
    std::vector<std::string> key;
    int count = 0;    // rows that actually ran
    int excluded = 0; // among them, outlier-flagged
    double error_reduction_trimmed_mean = 0.0;
    double error_reduction_median = 0.0;
    double depth_overhead_trimmed_mean = 0.0;
    double depth_overhead_median = 0.0;
};

/// Group records by the named columns. Error-reduction aggregates drop
/// excluded rows; depth aggregates keep them. Skipped rows never aggregate.
std::vector<SummaryRow> summarize(const CsvTable &table, const std::vector<std::string> &group_by,
                                  double trim);

std::string summary_to_csv(const std::vector<SummaryRow> &rows,
                           const std::vector<std::string> &group_by);

double trimmed_mean(std::vector<double> values, double trim);
double median(std::vector<double> values);

/// Flat TOML-style config: `key = value` lines, arrays in brackets, strings
/// optionally quoted, # comments.
std::map<std::string, std::vector<std::string>> parse_config_file(const std::string &path);
SweepGrid grid_from_config(const std::map<std::string, std::vector<std::string>> &kv);

std::string format_double(double v);

} // namespace dqc

#endif
