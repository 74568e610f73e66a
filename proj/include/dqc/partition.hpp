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

#ifndef DQC_PARTITION_HPP
#define DQC_PARTITION_HPP

#include <map>
#include <utility>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

/// Weighted undirected qubit-coupling graph. Edge weights count the
/// two-qubit gates on each pair; no self-loops.
struct InteractionGraph {
    int n = 0;
    std::map<std::pair<int, int>, long long> weights; // key (a < b), weight > 0

    void add_edge(int a, int b, long long w = 1);
    long long weight(int a, int b) const;
    long long total_weight() const;
    std::vector<long long> degrees() const;
    bool has_edges() const { return !weights.empty(); }
};

using Communities = std::vector<std::vector<int>>;

/// Surjective qubit -> partition map; every partition holds >= 1 qubit.
struct Assignment {
    int k = 0;
    std::vector<int> part_of;
};

/// Requires a Toffoli-free circuit; run decompose_toffoli first.
InteractionGraph build_interaction_graph(const Circuit &c);

/// Newman modularity Q of a node partition. Undefined on edgeless graphs.
double modularity(const InteractionGraph &g, const Communities &communities);

/// Clauset-Newman-Moore agglomeration from singletons, merging the pair with
/// the largest positive modularity gain. Ties break on the lexicographically
/// lowest (min node id, min node id) community pair.
Communities greedy_communities(const InteractionGraph &g);

/// Merge the two smallest / split the largest community until exactly k
/// remain. Merge ties pick the communities with the lowest min node id;
/// splits cut the sorted node list in half (first half gets the extra node).
Communities adjust_to_k(Communities communities, int k);

/// Label communities by ascending min node id.
Assignment assign(const Communities &communities);

/// Number of two-qubit gates whose operands sit in different partitions.
int cut_edges(const Circuit &c, const Assignment &a);

/// Full pipeline: interaction graph -> CNM -> adjust -> assign.
Assignment partition_circuit(const Circuit &c, int k);

} // namespace dqc

#endif
