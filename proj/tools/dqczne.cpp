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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "dqc/density.hpp"
#include "dqc/error.hpp"
#include "dqc/harness.hpp"
#include "dqc/qasm.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dqc::Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dqc::Circuit load_qasm_or_die(const std::string &path) {
    dqc::ParseResult parsed = dqc::parse_qasm(read_file(path));
    if (!parsed.ok()) {
        for (const auto &d : parsed.diagnostics)
            std::cerr << path << ":" << d.line << ":" << d.column << ": " << d.message << "\n";
        std::exit(1);
    }
    return std::move(*parsed.circuit);
}

json record_to_json(const dqc::MetricsRecord &r) {
    const dqc::ExperimentConfig &c = r.cfg;
    json j;
    j["algorithm"] = dqc::benchmark_name(c.algorithm);
    j["n"] = c.n;
    j["k"] = c.k;
    j["p_local"] = c.p_local;
    j["alpha"] = c.alpha;
    j["strategy"] = dqc::strategy_name(c.strategy);
    j["shots"] = c.shots;
    j["backend"] = dqc::backend_name(c.backend);
    j["mode"] = dqc::mode_name(c.mode);
    j["comm_scope"] = dqc::scope_name(c.comm_scope);
    j["observable"] = dqc::observable_name(c.observable);
    j["seed"] = c.seed;
    j["max_qubits"] = c.max_qubits;
    j["e_baseline"] = r.e_baseline;
    j["e_zne"] = r.e_zne;
    j["delta_e"] = r.delta_e;
    j["error_reduction"] = r.error_reduction;
    j["depth_overhead_max_lambda"] = r.depth_overhead_max_lambda;
    j["depth_overhead_total"] = r.depth_overhead_total;
    j["per_partition_depth_max"] = r.per_partition_depth_max;
    j["cut_count"] = r.cut_count;
    j["teleport_count"] = r.teleport_count;
    j["ancilla_count"] = r.ancilla_count;
    j["excluded_flag"] = r.excluded;
    j["backend_used"] = r.backend_used;
    return j;
}

int default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Distributed-circuit ZNE simulator and experiment harness"};
    app.require_subcommand(1);

    // gen
    auto *gen = app.add_subcommand("gen", "Generate a benchmark circuit");
    std::string gen_alg = "ghz";
    int gen_n = 4;
    std::string gen_oracle = "balanced";
    bool gen_qasm = false;
    gen->add_option("--alg", gen_alg, "Benchmark: ghz, dj or w")->required();
    gen->add_option("--n", gen_n, "Qubit count")->required();
    gen->add_option("--oracle", gen_oracle, "DJ oracle: balanced or constant");
    gen->add_flag("--qasm", gen_qasm, "Emit OpenQASM instead of a summary");

    // partition
    auto *part = app.add_subcommand("partition", "Partition a circuit and report the cut");
    std::string part_qasm;
    int part_k = 2;
    part->add_option("--qasm", part_qasm, "Input OpenQASM file")->required();
    part->add_option("-k,--k", part_k, "Partition count")->required();

    // run
    auto *run = app.add_subcommand("run", "Run a single experiment");
    std::string run_config;
    run->add_option("--config", run_config, "Config file")->required();

    // sweep
    auto *sw = app.add_subcommand("sweep", "Run a config grid and write a CSV");
    std::string sweep_config, sweep_out;
    int sweep_workers = default_workers();
    sw->add_option("--config", sweep_config, "Config file with array-valued axes")->required();
    sw->add_option("--out", sweep_out, "Output CSV path")->required();
    sw->add_option("--workers", sweep_workers, "Concurrent experiments");

    // summarize
    auto *sum = app.add_subcommand("summarize", "Aggregate a sweep CSV");
    std::string sum_in, sum_group;
    double sum_trim = 0.1;
    sum->add_option("--in", sum_in, "Input CSV")->required();
    sum->add_option("--group-by", sum_group, "Comma-separated column names")->required();
    sum->add_option("--trim", sum_trim, "Trimmed-mean tail fraction");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            dqc::Benchmark alg = dqc::benchmark_from_string(gen_alg);
            dqc::DjOracle oracle = gen_oracle == "constant" ? dqc::DjOracle::Constant
                                                            : dqc::DjOracle::Balanced;
            dqc::Circuit c = dqc::generate_benchmark(alg, gen_n, oracle);
            if (gen_qasm) {
                std::cout << dqc::emit_qasm(c);
            } else {
                json j;
                j["algorithm"] = gen_alg;
                j["n"] = gen_n;
                j["num_qubits"] = c.num_qubits;
                j["num_clbits"] = c.num_clbits;
                j["gates"] = c.gates.size();
                j["depth"] = dqc::depth(c);
                std::cout << j.dump() << "\n";
            }
        } else if (*part) {
            dqc::Circuit c = dqc::decompose_toffoli(load_qasm_or_die(part_qasm));
            dqc::Assignment a = dqc::partition_circuit(c, part_k);
            std::vector<int> sizes(static_cast<size_t>(a.k), 0);
            for (int p : a.part_of) ++sizes[static_cast<size_t>(p)];
            json j;
            j["k"] = a.k;
            j["part_of"] = a.part_of;
            j["cut_edges"] = dqc::cut_edges(c, a);
            j["sizes"] = sizes;
            std::cout << j.dump() << "\n";
        } else if (*run) {
            auto kv = dqc::parse_config_file(run_config);
            dqc::SweepGrid grid = dqc::grid_from_config(kv);
            std::vector<dqc::ExperimentConfig> configs = grid.expand();
            if (configs.size() != 1)
                throw dqc::Error("run: config expands to " + std::to_string(configs.size()) +
                                 " experiments; use sweep for grids");
            dqc::MetricsRecord rec = dqc::run_experiment(configs[0]);
            std::cout << record_to_json(rec).dump() << "\n";
        } else if (*sw) {
            auto kv = dqc::parse_config_file(sweep_config);
            dqc::SweepGrid grid = dqc::grid_from_config(kv);
            std::vector<dqc::MetricsRecord> records = dqc::sweep(grid, sweep_out, sweep_workers);
            size_t skipped = 0;
            for (const auto &r : records) skipped += r.skipped();
            std::cerr << "wrote " << records.size() << " rows (" << skipped << " skipped) to "
                      << sweep_out << "\n";
        } else if (*sum) {
            std::vector<std::string> group_by;
            std::istringstream gs(sum_group);
            std::string col;
            while (std::getline(gs, col, ',')) group_by.push_back(col);
            dqc::CsvTable table = dqc::read_csv(sum_in);
            std::cout << dqc::summary_to_csv(dqc::summarize(table, group_by, sum_trim), group_by);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
