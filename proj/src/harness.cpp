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

#include "dqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "dqc/density.hpp"
#include "dqc/error.hpp"
#include "dqc/rng.hpp"
#include "dqc/trajectory.hpp"

namespace dqc {

const char *backend_name(BackendKind b) { return b == BackendKind::Exact ? "exact" : "shots"; }
const char *mode_name(LowerMode m) { return m == LowerMode::Roundtrip ? "roundtrip" : "migrate"; }
const char *scope_name(CommScope s) {
    return s == CommScope::BellOnly ? "bell_only" : "whole_template";
}
const char *observable_name(ObservableKind o) {
    return o == ObservableKind::ZParity ? "z_parity" : "ideal_projector";
}

Benchmark benchmark_from_string(const std::string &s) {
    if (s == "ghz") return Benchmark::Ghz;
    if (s == "dj") return Benchmark::Dj;
    if (s == "w") return Benchmark::W;
    throw Error("unknown algorithm '" + s + "' (expected ghz, dj or w)");
}

Strategy strategy_from_string(const std::string &s) {
    if (s == "global") return Strategy::Global;
    if (s == "local") return Strategy::Local;
    throw Error("unknown strategy '" + s + "' (expected global or local)");
}

BackendKind backend_from_string(const std::string &s) {
    if (s == "exact") return BackendKind::Exact;
    if (s == "shots") return BackendKind::Shots;
    throw Error("unknown backend '" + s + "' (expected exact or shots)");
}

LowerMode mode_from_string(const std::string &s) {
    if (s == "roundtrip") return LowerMode::Roundtrip;
    if (s == "migrate") return LowerMode::Migrate;
    throw Error("unknown mode '" + s + "' (expected roundtrip or migrate)");
}

CommScope scope_from_string(const std::string &s) {
    if (s == "bell_only") return CommScope::BellOnly;
    if (s == "whole_template") return CommScope::WholeTemplate;
    throw Error("unknown comm_scope '" + s + "' (expected bell_only or whole_template)");
}

ObservableKind observable_from_string(const std::string &s) {
    if (s == "z_parity") return ObservableKind::ZParity;
    if (s == "ideal_projector") return ObservableKind::IdealProjector;
    throw Error("unknown observable '" + s + "' (expected z_parity or ideal_projector)");
}

void ExperimentConfig::validate() const {
    if (n < 2) throw Error("config: n must be at least 2");
    if (k < 1) throw Error("config: k must be at least 1");
    if (k > n) throw Error("config: k must not exceed n (every partition holds a qubit)");
    if (p_local < 0.0 || p_local > 1.0) throw Error("config: p_local must be in [0, 1]");
    if (alpha < 0.0) throw Error("config: alpha must be nonnegative");
    if (shots < 1) throw Error("config: shots must be positive");
    if (max_qubits < 0) throw Error("config: max_qubits must be nonnegative");
}

int ExperimentConfig::effective_max_qubits() const {
    if (max_qubits > 0) return max_qubits;
    return backend == BackendKind::Exact ? kExactBackendDefaultMaxQubits
                                         : kShotBackendDefaultMaxQubits;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string canonical_config_string(const ExperimentConfig &cfg) {
    std::ostringstream s;
    s << "algorithm=" << benchmark_name(cfg.algorithm) << ";n=" << cfg.n << ";k=" << cfg.k
      << ";p_local=" << format_double(cfg.p_local) << ";alpha=" << format_double(cfg.alpha)
      << ";strategy=" << strategy_name(cfg.strategy) << ";shots=" << cfg.shots
      << ";backend=" << backend_name(cfg.backend) << ";mode=" << mode_name(cfg.mode)
      << ";comm_scope=" << scope_name(cfg.comm_scope)
      << ";observable=" << observable_name(cfg.observable) << ";max_qubits=" << cfg.max_qubits;
    return s.str();
}

uint64_t derive_seed(uint64_t master_seed, const ExperimentConfig &cfg) {
    const std::string canon = canonical_config_string(cfg);
    return mix_seed(master_seed, fnv1a(canon.data(), canon.size()));
}

MetricsRecord run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    MetricsRecord rec;
    rec.cfg = cfg;

    Circuit mono = decompose_toffoli(generate_benchmark(cfg.algorithm, cfg.n));
    const int cap = cfg.effective_max_qubits();
    const int total_qubits = mono.num_qubits + cfg.k;
    if (total_qubits > cap || mono.num_qubits > kExactBackendDefaultMaxQubits) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rec.e_baseline = rec.e_zne = rec.delta_e = rec.error_reduction = nan;
        rec.depth_overhead_max_lambda = rec.depth_overhead_total = nan;
        rec.backend_used = "skipped_capacity";
        return rec;
    }

    Assignment assignment = partition_circuit(mono, cfg.k);
    rec.cut_count = cut_edges(mono, assignment);
    rec.ancilla_count = cfg.k;

    const NoiseModel noise{cfg.p_local, cfg.alpha};
    const NoiseModel noiseless = NoiseModel::noiseless();

    ObservableSpec observable;
    observable.kind = cfg.observable;
    double ideal = 0.0;
    if (cfg.observable == ObservableKind::ZParity) {
        ideal = simulate_exact_expectation(mono, noiseless, observable,
                                           kExactBackendDefaultMaxQubits);
    } else {
        const std::vector<double> dist =
            exact_output_distribution(mono, noiseless, kExactBackendDefaultMaxQubits);
        for (uint64_t b = 0; b < dist.size(); ++b)
            if (dist[b] > 1e-9) observable.support.push_back(b);
        for (uint64_t b : observable.support) ideal += dist[b];
    }

    MitigateOptions options;
    options.backend = cfg.backend;
    options.mode = cfg.mode;
    options.comm_scope = cfg.comm_scope;
    options.observable = observable;
    options.shots = cfg.shots;
    options.seed = cfg.seed;
    options.max_qubits = cap;
    MitigationResult mit = mitigate(cfg.strategy, mono, assignment, noise, options);

    rec.e_baseline = std::abs(mit.per_scale.front().second - ideal);
    rec.e_zne = std::abs(mit.zero_noise_estimate - ideal);
    rec.delta_e = rec.e_baseline - rec.e_zne;
    rec.error_reduction = rec.e_baseline > 0.0 ? rec.delta_e / rec.e_baseline
                                               : std::numeric_limits<double>::quiet_NaN();
    rec.excluded = rec.e_baseline < 0.03;
    const double base_depth = static_cast<double>(mit.depth_per_scale.front());
    rec.depth_overhead_max_lambda = static_cast<double>(mit.depth_per_scale.back()) / base_depth;
    double total_depth = 0.0;
    for (int d : mit.depth_per_scale) total_depth += static_cast<double>(d);
    rec.depth_overhead_total = total_depth / base_depth;
    rec.per_partition_depth_max = mit.max_partition_depth_per_scale.back();
    rec.teleport_count = mit.teleport_count_per_scale.front();
    rec.backend_used = backend_name(cfg.backend);
    return rec;
}

std::vector<ExperimentConfig> SweepGrid::expand() const {
    std::vector<ExperimentConfig> out;
    for (Benchmark alg : algorithms)
        for (int n : ns)
            for (int k : ks)
                for (double p : p_locals)
                    for (double a : alphas)
                        for (Strategy st : strategies)
                            for (int sh : shots)
                                for (BackendKind be : backends)
                                    for (LowerMode mo : modes)
                                        for (CommScope sc : comm_scopes)
                                            for (ObservableKind ob : observables)
                                                for (int mq : max_qubits) {
                                                    ExperimentConfig cfg;
                                                    cfg.algorithm = alg;
                                                    cfg.n = n;
                                                    cfg.k = k;
                                                    cfg.p_local = p;
                                                    cfg.alpha = a;
                                                    cfg.strategy = st;
                                                    cfg.shots = sh;
                                                    cfg.backend = be;
                                                    cfg.mode = mo;
                                                    cfg.comm_scope = sc;
                                                    cfg.observable = ob;
                                                    cfg.max_qubits = mq;
                                                    cfg.seed = derive_seed(master_seed, cfg);
                                                    out.push_back(cfg);
                                                }
    return out;
}

std::vector<MetricsRecord> sweep(const SweepGrid &grid, const std::string &out_path, int workers) {
    const std::vector<ExperimentConfig> configs = grid.expand();
    if (configs.empty()) throw Error("sweep: empty grid");
    std::vector<MetricsRecord> records(configs.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= configs.size() || failed.load()) break;
            try {
                records[i] = run_experiment(configs[i]);
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure = e.what();
            }
        }
    };
    workers = std::max(1, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }
    if (failed.load()) throw Error("sweep: experiment failed: " + failure);
    if (!out_path.empty()) write_csv(records, out_path);
    return records;
}

std::string csv_header() {
    return "algorithm,n,k,p_local,alpha,strategy,shots,backend,mode,comm_scope,observable,seed,"
           "max_qubits,e_baseline,e_zne,delta_e,error_reduction,depth_overhead_max_lambda,"
           "depth_overhead_total,per_partition_depth_max,cut_count,teleport_count,ancilla_count,"
           "excluded_flag,backend_used";
}

std::string csv_row(const MetricsRecord &r) {
    std::ostringstream s;
    const ExperimentConfig &c = r.cfg;
    s << benchmark_name(c.algorithm) << ',' << c.n << ',' << c.k << ','
      << format_double(c.p_local) << ',' << format_double(c.alpha) << ','
      << strategy_name(c.strategy) << ',' << c.shots << ',' << backend_name(c.backend) << ','
      << mode_name(c.mode) << ',' << scope_name(c.comm_scope) << ','
      << observable_name(c.observable) << ',' << c.seed << ',' << c.max_qubits << ','
      << format_double(r.e_baseline) << ',' << format_double(r.e_zne) << ','
      << format_double(r.delta_e) << ',' << format_double(r.error_reduction) << ','
      << format_double(r.depth_overhead_max_lambda) << ','
      << format_double(r.depth_overhead_total) << ',' << r.per_partition_depth_max << ','
      << r.cut_count << ',' << r.teleport_count << ',' << r.ancilla_count << ','
      << (r.excluded ? "true" : "false") << ',' << r.backend_used;
    return s.str();
}

void write_csv(const std::vector<MetricsRecord> &records, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << csv_header() << '\n';
    for (const MetricsRecord &r : records) out << csv_row(r) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

int CsvTable::column(const std::string &name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    throw Error("csv: no column named '" + name + "'");
}

CsvTable parse_csv(const std::string &text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

CsvTable read_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

double trimmed_mean(std::vector<double> values, double trim) {
    if (trim < 0.0 || trim >= 0.5) throw Error("trim fraction must be in [0, 0.5)");
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const size_t cut = static_cast<size_t>(std::floor(static_cast<double>(values.size()) * trim));
    double acc = 0.0;
    for (size_t i = cut; i < values.size() - cut; ++i) acc += values[i];
    return acc / static_cast<double>(values.size() - 2 * cut);
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<SummaryRow> summarize(const CsvTable &table, const std::vector<std::string> &group_by,
                                  double trim) {
    if (trim < 0.0 || trim >= 0.5) throw Error("trim fraction must be in [0, 0.5)");
    std::vector<int> key_cols;
    for (const std::string &name : group_by) key_cols.push_back(table.column(name));
    const int col_er = table.column("error_reduction");
    const int col_depth = table.column("depth_overhead_max_lambda");
    const int col_excluded = table.column("excluded_flag");
    const int col_backend = table.column("backend_used");

    std::map<std::vector<std::string>, std::vector<const std::vector<std::string> *>> groups;
    for (const auto &row : table.rows) {
        std::vector<std::string> key;
        for (int c : key_cols) key.push_back(row[static_cast<size_t>(c)]);
        groups[key].push_back(&row);
    }

    std::vector<SummaryRow> out;
    for (const auto &[key, rows] : groups) {
        SummaryRow s;
        s.key = key;
        std::vector<double> ers, depths;
        for (const auto *row : rows) {
            if ((*row)[static_cast<size_t>(col_backend)] == "skipped_capacity") continue;
            ++s.count;
            const bool excluded = (*row)[static_cast<size_t>(col_excluded)] == "true";
            if (excluded) ++s.excluded;
            const double depth = std::atof((*row)[static_cast<size_t>(col_depth)].c_str());
            if (std::isfinite(depth)) depths.push_back(depth);
            if (!excluded) {
                const double er = std::atof((*row)[static_cast<size_t>(col_er)].c_str());
                if (std::isfinite(er)) ers.push_back(er);
            }
        }
        if (s.count == 0) continue; // groups with no executed rows are absent
        s.error_reduction_trimmed_mean = trimmed_mean(ers, trim);
        s.error_reduction_median = median(ers);
        s.depth_overhead_trimmed_mean = trimmed_mean(depths, trim);
        s.depth_overhead_median = median(depths);
        out.push_back(std::move(s));
    }
    return out;
}

std::string summary_to_csv(const std::vector<SummaryRow> &rows,
                           const std::vector<std::string> &group_by) {
    std::ostringstream out;
    for (const std::string &g : group_by) out << g << ',';
    out << "count,excluded_count,error_reduction_trimmed_mean,error_reduction_median,"
           "depth_overhead_max_lambda_trimmed_mean,depth_overhead_max_lambda_median\n";
    for (const SummaryRow &r : rows) {
        for (const std::string &k : r.key) out << k << ',';
        out << r.count << ',' << r.excluded << ',' << format_double(r.error_reduction_trimmed_mean)
            << ',' << format_double(r.error_reduction_median) << ','
            << format_double(r.depth_overhead_trimmed_mean) << ','
            << format_double(r.depth_overhead_median) << '\n';
    }
    return out.str();
}

namespace {

std::string strip(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(std::string s) {
    s = strip(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

} // namespace

std::map<std::string, std::vector<std::string>> parse_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config '" + path + "'");
    std::map<std::string, std::vector<std::string>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw Error("config line " + std::to_string(lineno) + ": empty key or value");
        std::vector<std::string> items;
        if (value.front() == '[') {
            if (value.back() != ']')
                throw Error("config line " + std::to_string(lineno) + ": unterminated array");
            std::string body = value.substr(1, value.size() - 2);
            std::istringstream bs(body);
            std::string item;
            while (std::getline(bs, item, ',')) {
                item = unquote(item);
                if (!item.empty()) items.push_back(item);
            }
            if (items.empty())
                throw Error("config line " + std::to_string(lineno) + ": empty array");
        } else {
            items.push_back(unquote(value));
        }
        if (kv.count(key)) throw Error("config: duplicate key '" + key + "'");
        kv[key] = std::move(items);
    }
    return kv;
}

SweepGrid grid_from_config(const std::map<std::string, std::vector<std::string>> &kv) {
    SweepGrid grid;
    auto to_int = [](const std::string &s) { return std::atoi(s.c_str()); };
    auto to_double = [](const std::string &s) { return std::atof(s.c_str()); };
    for (const auto &[key, values] : kv) {
        if (key == "algorithm") {
            grid.algorithms.clear();
            for (const auto &v : values) grid.algorithms.push_back(benchmark_from_string(v));
        } else if (key == "n") {
            grid.ns.clear();
            for (const auto &v : values) grid.ns.push_back(to_int(v));
        } else if (key == "k") {
            grid.ks.clear();
            for (const auto &v : values) grid.ks.push_back(to_int(v));
        } else if (key == "p_local") {
            grid.p_locals.clear();
            for (const auto &v : values) grid.p_locals.push_back(to_double(v));
        } else if (key == "alpha") {
            grid.alphas.clear();
            for (const auto &v : values) grid.alphas.push_back(to_double(v));
        } else if (key == "strategy") {
            grid.strategies.clear();
            for (const auto &v : values) grid.strategies.push_back(strategy_from_string(v));
        } else if (key == "shots") {
            grid.shots.clear();
            for (const auto &v : values) grid.shots.push_back(to_int(v));
        } else if (key == "backend") {
            grid.backends.clear();
            for (const auto &v : values) grid.backends.push_back(backend_from_string(v));
        } else if (key == "mode") {
            grid.modes.clear();
            for (const auto &v : values) grid.modes.push_back(mode_from_string(v));
        } else if (key == "comm_scope") {
            grid.comm_scopes.clear();
            for (const auto &v : values) grid.comm_scopes.push_back(scope_from_string(v));
        } else if (key == "observable") {
            grid.observables.clear();
            for (const auto &v : values) grid.observables.push_back(observable_from_string(v));
        } else if (key == "max_qubits") {
            grid.max_qubits.clear();
            for (const auto &v : values) grid.max_qubits.push_back(to_int(v));
        } else if (key == "seed") {
            if (values.size() != 1) throw Error("config: seed must be a single value");
            grid.master_seed = std::strtoull(values[0].c_str(), nullptr, 10);
        } else {
            throw Error("config: unknown key '" + key + "'");
        }
    }
    return grid;
}

} // namespace dqc
