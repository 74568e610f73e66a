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

#include "dqc/partition.hpp"

#include <algorithm>

#include "dqc/error.hpp"

namespace dqc {

void InteractionGraph::add_edge(int a, int b, long long w) {
    if (a == b) throw Error("interaction graph: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error("interaction graph: node out of range");
    if (w <= 0) throw Error("interaction graph: nonpositive weight");
    if (a > b) std::swap(a, b);
    weights[{a, b}] += w;
}

long long InteractionGraph::weight(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = weights.find({a, b});
    return it == weights.end() ? 0 : it->second;
}

long long InteractionGraph::total_weight() const {
    long long w = 0;
    for (const auto &[edge, ew] : weights) w += ew;
    return w;
}

std::vector<long long> InteractionGraph::degrees() const {
    std::vector<long long> deg(n, 0);
    for (const auto &[edge, ew] : weights) {
        deg[edge.first] += ew;
        deg[edge.second] += ew;
    }
    return deg;
}

InteractionGraph build_interaction_graph(const Circuit &c) {
    InteractionGraph g;
    g.n = c.num_qubits;
    for (const Gate &gate : c.gates) {
        if (gate.kind == GateKind::Ccx)
            throw Error("interaction graph requires a Toffoli-free circuit; decompose first");
        if (gate.qubits.size() == 2 && is_unitary(gate.kind))
            g.add_edge(gate.qubits[0], gate.qubits[1]);
    }
    return g;
}

namespace {

void check_partition_of_nodes(int n, const Communities &communities) {
    std::vector<int> seen(n, 0);
    for (const auto &c : communities) {
        if (c.empty()) throw Error("communities: empty community");
        for (int v : c) {
            if (v < 0 || v >= n) throw Error("communities: node out of range");
            if (seen[v]++) throw Error("communities: node appears twice");
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw Error("communities: node missing");
}

int min_node(const std::vector<int> &c) { return *std::min_element(c.begin(), c.end()); }

} // namespace

double modularity(const InteractionGraph &g, const Communities &communities) {
    if (!g.has_edges()) throw Error("modularity is undefined on an edgeless graph");
    check_partition_of_nodes(g.n, communities);
    const double W = static_cast<double>(g.total_weight());
    std::vector<long long> deg = g.degrees();
    std::vector<int> comm_of(g.n, -1);
    for (size_t i = 0; i < communities.size(); ++i)
        for (int v : communities[i]) comm_of[v] = static_cast<int>(i);
    std::vector<double> w_in(communities.size(), 0.0), deg_sum(communities.size(), 0.0);
    for (const auto &[edge, ew] : g.weights)
        if (comm_of[edge.first] == comm_of[edge.second])
            w_in[comm_of[edge.first]] += static_cast<double>(ew);
    for (int v = 0; v < g.n; ++v) deg_sum[comm_of[v]] += static_cast<double>(deg[v]);
    double q = 0.0;
    for (size_t i = 0; i < communities.size(); ++i) {
        double frac = deg_sum[i] / (2.0 * W);
        q += w_in[i] / W - frac * frac;
    }
    return q;
}

Communities greedy_communities(const InteractionGraph &g) {
    struct Comm {
        std::vector<int> nodes;
        long long deg = 0;
        int min_id = 0;
    };
    std::vector<Comm> comms(g.n);
    std::vector<long long> deg = g.degrees();
    for (int v = 0; v < g.n; ++v) comms[v] = {{v}, deg[v], v};
    // Inter-community weights, keyed by current community indices (a < b).
    std::map<std::pair<int, int>, long long> between;
    for (const auto &[edge, ew] : g.weights) between[edge] += ew;
    const double W = static_cast<double>(g.total_weight());
    std::vector<bool> alive(comms.size(), true);

    while (W > 0) {
        // Only connected pairs can have positive gain.
        double best_gain = 0.0;
        int best_a = -1, best_b = -1;
        for (const auto &[pair, w] : between) {
            const auto [a, b] = pair;
            double gain = static_cast<double>(w) / W -
                          static_cast<double>(comms[a].deg) * static_cast<double>(comms[b].deg) /
                              (2.0 * W * W);
            if (gain <= 0.0) continue;
            int lo = std::min(comms[a].min_id, comms[b].min_id);
            int hi = std::max(comms[a].min_id, comms[b].min_id);
            if (best_a < 0 || gain > best_gain) {
                best_gain = gain;
                best_a = a;
                best_b = b;
            } else if (gain == best_gain) {
                int cur_lo = std::min(comms[best_a].min_id, comms[best_b].min_id);
                int cur_hi = std::max(comms[best_a].min_id, comms[best_b].min_id);
                if (std::pair(lo, hi) < std::pair(cur_lo, cur_hi)) {
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) break;
        // Merge best_b into best_a.
        Comm &a = comms[best_a];
        Comm &b = comms[best_b];
        a.nodes.insert(a.nodes.end(), b.nodes.begin(), b.nodes.end());
        a.deg += b.deg;
        a.min_id = std::min(a.min_id, b.min_id);
        alive[best_b] = false;
        std::map<std::pair<int, int>, long long> next;
        for (const auto &[pair, w] : between) {
            int x = pair.first == best_b ? best_a : pair.first;
            int y = pair.second == best_b ? best_a : pair.second;
            if (x == y) continue;
            if (x > y) std::swap(x, y);
            next[{x, y}] += w;
        }
        between = std::move(next);
    }

    Communities out;
    for (size_t i = 0; i < comms.size(); ++i)
        if (alive[i]) {
            std::sort(comms[i].nodes.begin(), comms[i].nodes.end());
            out.push_back(std::move(comms[i].nodes));
        }
    std::sort(out.begin(), out.end(),
              [](const auto &x, const auto &y) { return x.front() < y.front(); });
    return out;
}

Communities adjust_to_k(Communities communities, int k) {
    long long total = 0;
    for (const auto &c : communities) {
        if (c.empty()) throw Error("adjust_to_k: empty community");
        total += static_cast<long long>(c.size());
    }
    if (k < 1 || k > total) throw Error("adjust_to_k: k out of range");

    while (static_cast<int>(communities.size()) > k) {
        auto order = [&](size_t i, size_t j) {
            if (communities[i].size() != communities[j].size())
                return communities[i].size() < communities[j].size();
            return min_node(communities[i]) < min_node(communities[j]);
        };
        size_t first = 0;
        for (size_t i = 1; i < communities.size(); ++i)
            if (order(i, first)) first = i;
        size_t second = first == 0 ? 1 : 0;
        for (size_t i = 0; i < communities.size(); ++i)
            if (i != first && order(i, second)) second = i;
        auto &dst = communities[std::min(first, second)];
        auto &src = communities[std::max(first, second)];
        dst.insert(dst.end(), src.begin(), src.end());
        std::sort(dst.begin(), dst.end());
        communities.erase(communities.begin() + static_cast<long>(std::max(first, second)));
    }
    while (static_cast<int>(communities.size()) < k) {
        size_t largest = 0;
        for (size_t i = 1; i < communities.size(); ++i) {
            if (communities[i].size() > communities[largest].size() ||
                (communities[i].size() == communities[largest].size() &&
                 min_node(communities[i]) < min_node(communities[largest])))
                largest = i;
        }
        std::vector<int> nodes = communities[largest];
        std::sort(nodes.begin(), nodes.end());
        size_t half = (nodes.size() + 1) / 2;
        communities[largest].assign(nodes.begin(), nodes.begin() + static_cast<long>(half));
        communities.push_back(std::vector<int>(nodes.begin() + static_cast<long>(half), nodes.end()));
    }
    return communities;
}

Assignment assign(const Communities &communities) {
    if (communities.empty()) throw Error("assign: no communities");
    long long total = 0;
    for (const auto &c : communities) {
        if (c.empty()) throw Error("assign: empty community");
        total += static_cast<long long>(c.size());
    }
    Communities sorted = communities;
    for (auto &c : sorted) std::sort(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &x, const auto &y) { return x.front() < y.front(); });
    Assignment a;
    a.k = static_cast<int>(sorted.size());
    a.part_of.assign(static_cast<size_t>(total), -1);
    for (size_t i = 0; i < sorted.size(); ++i)
        for (int v : sorted[i]) {
            if (v < 0 || v >= total || a.part_of[static_cast<size_t>(v)] != -1)
                throw Error("assign: communities do not partition 0..n-1");
            a.part_of[static_cast<size_t>(v)] = static_cast<int>(i);
        }
    return a;
}

int cut_edges(const Circuit &c, const Assignment &a) {
    if (static_cast<int>(a.part_of.size()) < c.num_qubits)
        throw Error("cut_edges: assignment does not cover the circuit");
    int cuts = 0;
    for (const Gate &g : c.gates)
        if (g.qubits.size() == 2 && is_unitary(g.kind) &&
            a.part_of[static_cast<size_t>(g.qubits[0])] != a.part_of[static_cast<size_t>(g.qubits[1])])
            ++cuts;
    return cuts;
}

Assignment partition_circuit(const Circuit &c, int k) {
    InteractionGraph g = build_interaction_graph(c);
    Communities comms = greedy_communities(g);
    comms = adjust_to_k(std::move(comms), k);
    return assign(comms);
}

} // namespace dqc
