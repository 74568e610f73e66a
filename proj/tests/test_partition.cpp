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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "dqc/error.hpp"
#include "dqc/partition.hpp"
#include "dqc/rng.hpp"
#include "oracles.hpp"

using namespace dqc;

namespace {

InteractionGraph triangle_pair() {
    InteractionGraph g;
    g.n = 6;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(3, 5);
    return g;
}

InteractionGraph barbell() {
    InteractionGraph g = triangle_pair();
    g.add_edge(2, 3); // bridge
    return g;
}

InteractionGraph random_graph(Prng &rng, int n, int extra_edges) {
    InteractionGraph g;
    g.n = n;
    for (int e = 0; e < extra_edges; ++e) {
        const int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        const int b = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        if (a != b) g.add_edge(a, b, 1 + static_cast<long long>(rng.below(3)));
    }
    return g;
}

} // namespace

TEST_CASE("interaction graph counts two-qubit gate multiplicities") {
    Circuit ghz = make_ghz(4);
    InteractionGraph g = build_interaction_graph(ghz);
    CHECK(g.n == 4);
    CHECK(g.weights.size() == 3); // path 0-1-2-3
    CHECK(g.weight(0, 1) == 1);
    CHECK(g.weight(1, 2) == 1);
    CHECK(g.weight(2, 3) == 1);
    CHECK(g.weight(0, 2) == 0);

    Circuit multi;
    multi.num_qubits = 2;
    for (int i = 0; i < 3; ++i) multi.append(Gate::cx(0, 1));
    InteractionGraph m = build_interaction_graph(multi);
    CHECK(m.weights.size() == 1);
    CHECK(m.weight(0, 1) == 3);

    Circuit hs;
    hs.num_qubits = 3;
    for (int q = 0; q < 3; ++q) hs.append(Gate::h(q));
    CHECK_FALSE(build_interaction_graph(hs).has_edges());
}

TEST_CASE("interaction graph demands a decomposed circuit") {
    Circuit c;
    c.num_qubits = 3;
    c.append(Gate::ccx(0, 1, 2));
    CHECK_THROWS_AS(build_interaction_graph(c), Error);
    CHECK_NOTHROW(build_interaction_graph(decompose_toffoli(c)));
}

TEST_CASE("modularity of the all-in-one partition is zero") {
    for (const InteractionGraph &g : {triangle_pair(), barbell()}) {
        std::vector<int> all(static_cast<size_t>(g.n));
        for (int i = 0; i < g.n; ++i) all[static_cast<size_t>(i)] = i;
        CHECK(modularity(g, {all}) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("modularity worked examples") {
    CHECK(modularity(triangle_pair(), {{0, 1, 2}, {3, 4, 5}}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(modularity(barbell(), {{0, 1, 2}, {3, 4, 5}}) ==
          doctest::Approx(5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("barbell bridge split is the brute-force optimum") {
    InteractionGraph g = barbell();
    const double best = oracle::best_two_split_modularity(g);
    CHECK(best == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("modularity requires edges and a valid partition") {
    InteractionGraph g;
    g.n = 3;
    CHECK_THROWS_AS(modularity(g, {{0, 1, 2}}), Error);
    InteractionGraph t = triangle_pair();
    CHECK_THROWS_AS(modularity(t, {{0, 1}, {3, 4, 5}}), Error);       // node 2 missing
    CHECK_THROWS_AS(modularity(t, {{0, 1, 2, 2}, {3, 4, 5}}), Error); // duplicate
}

TEST_CASE("cnm finds the two triangles") {
    Communities c = greedy_communities(triangle_pair());
    REQUIRE(c.size() == 2);
    CHECK(c[0] == std::vector<int>{0, 1, 2});
    CHECK(c[1] == std::vector<int>{3, 4, 5});
}

TEST_CASE("cnm merges complete graphs into one community") {
    InteractionGraph k4;
    k4.n = 4;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
    Communities c = greedy_communities(k4);
    REQUIRE(c.size() == 1);
    CHECK(c[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("cnm leaves edgeless nodes as singletons") {
    InteractionGraph g;
    g.n = 5;
    Communities c = greedy_communities(g);
    REQUIRE(c.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(c[static_cast<size_t>(i)] == std::vector<int>{i});

    InteractionGraph mixed = triangle_pair();
    mixed.n = 7; // node 6 isolated
    Communities m = greedy_communities(mixed);
    CHECK(m.size() == 3);
    CHECK(m[2] == std::vector<int>{6});
}

TEST_CASE("cnm output partitions the nodes and beats singletons") {
    Prng rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(7));
        InteractionGraph g = random_graph(rng, n, static_cast<int>(rng.below(12)));
        Communities c = greedy_communities(g);
        std::set<int> seen;
        for (const auto &community : c) {
            CHECK_FALSE(community.empty());
            for (int v : community) CHECK(seen.insert(v).second);
        }
        CHECK(static_cast<int>(seen.size()) == n);
        if (g.has_edges()) {
            Communities singletons;
            for (int v = 0; v < n; ++v) singletons.push_back({v});
            CHECK(modularity(g, c) >= modularity(g, singletons) - 1e-12);
        }
    }
}

TEST_CASE("cnm stays within a bounded gap of the brute-force 2-split optimum") {
    // CNM is greedy, not optimal. Record the worst observed gap against the
    // best two-community split on small graphs and keep it bounded.
    Prng rng(31337);
    double worst_gap = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng.below(6));
        InteractionGraph g = random_graph(rng, n, 4 + static_cast<int>(rng.below(10)));
        if (!g.has_edges()) continue;
        const double cnm_q = modularity(g, greedy_communities(g));
        const double best2 = oracle::best_two_split_modularity(g);
        worst_gap = std::max(worst_gap, best2 - cnm_q);
    }
    MESSAGE("worst CNM gap vs brute-force 2-split: " << worst_gap);
    CHECK(worst_gap <= 0.25);
}

TEST_CASE("adjust_to_k merges the two smallest communities") {
    Communities c = {{0, 1, 2}, {3, 4}, {5}};
    Communities out = adjust_to_k(c, 2);
    REQUIRE(out.size() == 2);
    std::vector<size_t> sizes = {out[0].size(), out[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{3, 3});
}

TEST_CASE("adjust_to_k splits by ascending node id") {
    Communities out = adjust_to_k({{0, 1, 2, 3}}, 2);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == std::vector<int>{0, 1});
    CHECK(out[1] == std::vector<int>{2, 3});
}

TEST_CASE("adjust_to_k with matching k is the identity") {
    Communities c = {{0, 2}, {1, 3}};
    CHECK(adjust_to_k(c, 2) == c);
}

TEST_CASE("adjust_to_k rejects out-of-range k") {
    CHECK_THROWS_AS(adjust_to_k({{0, 1}}, 0), Error);
    CHECK_THROWS_AS(adjust_to_k({{0, 1}}, 3), Error);
}

TEST_CASE("adjust_to_k always yields exactly k nonempty sets") {
    Prng rng(555);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(9));
        InteractionGraph g = random_graph(rng, n, static_cast<int>(rng.below(14)));
        Communities base = greedy_communities(g);
        for (int k = 1; k <= n; ++k) {
            Communities out = adjust_to_k(base, k);
            REQUIRE(static_cast<int>(out.size()) == k);
            std::set<int> seen;
            for (const auto &community : out) {
                CHECK_FALSE(community.empty());
                for (int v : community) CHECK(seen.insert(v).second);
            }
            CHECK(static_cast<int>(seen.size()) == n);
        }
    }
}

TEST_CASE("assign labels communities by ascending min node id") {
    Assignment a = assign({{0, 1}, {2, 3}});
    CHECK(a.k == 2);
    CHECK(a.part_of == std::vector<int>{0, 0, 1, 1});
    Assignment b = assign({{2, 3}, {0, 1}});
    CHECK(b.part_of == std::vector<int>{0, 0, 1, 1});
    Assignment s = assign({{0}, {1}, {2}});
    CHECK(s.part_of == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(assign({{0}, {}}), Error);
}

TEST_CASE("cut_edges counts crossing two-qubit gates") {
    Circuit ghz = make_ghz(4);
    CHECK(cut_edges(ghz, Assignment{2, {0, 0, 1, 1}}) == 1);
    CHECK(cut_edges(ghz, Assignment{1, {0, 0, 0, 0}}) == 0);
    CHECK(cut_edges(ghz, Assignment{4, {0, 1, 2, 3}}) == 3);
}

TEST_CASE("pipeline partitioning is deterministic") {
    for (Benchmark b : {Benchmark::Ghz, Benchmark::Dj, Benchmark::W}) {
        Circuit c = decompose_toffoli(generate_benchmark(b, 6));
        for (int k = 1; k <= 4; ++k) {
            Assignment first = partition_circuit(c, k);
            Assignment second = partition_circuit(c, k);
            CHECK(first.part_of == second.part_of);
            CHECK(first.k == k);
            CHECK(cut_edges(c, partition_circuit(c, 1)) == 0);
        }
    }
}
