// Copyright 2026 The DRPP Authors
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

#include "drpp/graph.h"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

#include "drpp/errors.h"

using namespace drpp;

namespace {

Graph random_graph(size_t n, std::mt19937_64 &rng) {
    Graph g(n);
    std::bernoulli_distribution coin(0.5);
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if (coin(rng)) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

bool is_symmetric_and_loop_free(const Graph &g) {
    for (size_t u = 0; u < g.num_vertices(); u++) {
        if (g.neighbors(u) & bit(u)) {
            return false;
        }
        for (size_t v = 0; v < g.num_vertices(); v++) {
            if (g.has_edge(u, v) != g.has_edge(v, u)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST(graph, path) {
    Graph g = family("path", std::vector<size_t>{3});
    ASSERT_EQ(g.num_vertices(), 3);
    ASSERT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(graph, star) {
    Graph g = family("star", std::vector<size_t>{4});
    ASSERT_EQ(g.degree(0), 3);
    for (size_t leaf = 1; leaf < 4; leaf++) {
        ASSERT_TRUE(g.has_edge(0, leaf));
        ASSERT_EQ(g.degree(leaf), 1);
    }
    ASSERT_EQ(family("ghz", std::vector<size_t>{4}), g);
}

TEST(graph, icosahedron) {
    Graph g = icosahedron_graph();
    ASSERT_EQ(g.num_vertices(), 12);
    ASSERT_EQ(g.num_edges(), 30);
    for (size_t v = 0; v < 12; v++) {
        EXPECT_EQ(g.degree(v), 5) << v;
    }
    ASSERT_TRUE(is_symmetric_and_loop_free(g));
}

TEST(graph, cycle_and_complete) {
    ASSERT_EQ(cycle_graph(5).num_edges(), 5);
    ASSERT_TRUE(cycle_graph(5).has_edge(0, 4));
    ASSERT_EQ(complete_graph(6).num_edges(), 15);
}

TEST(graph, grid_edge_count) {
    for (size_t d = 1; d <= 3; d++) {
        for (size_t n = 2; n <= 4; n++) {
            std::vector<size_t> sides(d, n);
            Graph g = grid_graph(sides);
            size_t expected = d * (n - 1) * static_cast<size_t>(std::pow(n, d - 1));
            EXPECT_EQ(g.num_edges(), expected) << "d=" << d << " n=" << n;
            EXPECT_EQ(g.num_vertices(), static_cast<size_t>(std::pow(n, d)));
        }
    }
}

TEST(graph, grid_uneven_sides) {
    std::vector<size_t> sides{2, 3};
    Graph g = grid_graph(sides);
    ASSERT_EQ(g.num_vertices(), 6);
    // Two rows of three plus three rungs.
    ASSERT_EQ(g.num_edges(), 7);
    ASSERT_TRUE(g.has_edge(0, 1));
    ASSERT_TRUE(g.has_edge(0, 2));
    ASSERT_FALSE(g.has_edge(1, 2));
}

TEST(graph, family_errors) {
    EXPECT_THROW(family("path", std::vector<size_t>{1}), ParameterError);
    EXPECT_THROW(family("cycle", std::vector<size_t>{2}), ParameterError);
    EXPECT_THROW(family("star", std::vector<size_t>{1}), ParameterError);
    EXPECT_THROW(family("complete", std::vector<size_t>{1}), ParameterError);
    EXPECT_THROW(family("grid", std::vector<size_t>{}), ParameterError);
    EXPECT_THROW(family("grid", std::vector<size_t>{3, 1}), ParameterError);
    EXPECT_THROW(family("icosahedron", std::vector<size_t>{3}), ParameterError);
    EXPECT_THROW(family("hypercube", std::vector<size_t>{3}), ParameterError);
    EXPECT_THROW(Graph(65), CapacityError);
}

TEST(graph, toggle_edge) {
    ASSERT_EQ(toggle_edge(path_graph(2), 0, 1), empty_graph(2));
    ASSERT_EQ(toggle_edge(empty_graph(2), 0, 1), path_graph(2));
    EXPECT_THROW(toggle_edge(path_graph(2), 1, 1), ParameterError);
    EXPECT_THROW(toggle_edge(path_graph(2), 0, 2), ParameterError);
}

TEST(graph, delete_vertex) {
    auto d = delete_vertex(path_graph(3), 1);
    ASSERT_EQ(d.graph, empty_graph(2));
    ASSERT_EQ(d.relabel, (std::vector<std::optional<size_t>>{0, std::nullopt, 1}));

    ASSERT_EQ(delete_vertex(star_graph(4), 0).graph, empty_graph(3));
    ASSERT_EQ(delete_vertex(cycle_graph(3), 2).graph, path_graph(2));
}

TEST(graph, local_complement) {
    ASSERT_EQ(local_complement(path_graph(3), 1).edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
    for (size_t n = 2; n <= 7; n++) {
        ASSERT_EQ(local_complement(star_graph(n), 0), complete_graph(n)) << n;
    }
}

TEST(graph, random_involutions_and_deletion_counts) {
    std::mt19937_64 rng(1234);
    for (size_t trial = 0; trial < 400; trial++) {
        size_t n = 2 + trial % 7;
        Graph g = random_graph(n, rng);
        size_t u = rng() % n;
        size_t v = (u + 1 + rng() % (n - 1)) % n;
        Graph t = toggle_edge(g, u, v);
        ASSERT_NE(t, g);
        ASSERT_EQ(t.num_edges() + (g.has_edge(u, v) ? 1 : 0), g.num_edges() + (g.has_edge(u, v) ? 0 : 1));
        ASSERT_EQ(toggle_edge(t, u, v), g);
        ASSERT_TRUE(is_symmetric_and_loop_free(t));

        Graph lc = local_complement(g, u);
        ASSERT_TRUE(is_symmetric_and_loop_free(lc));
        ASSERT_EQ(local_complement(lc, u), g);

        auto del = delete_vertex(g, u);
        ASSERT_EQ(del.graph.num_vertices(), n - 1);
        ASSERT_EQ(del.graph.num_edges(), g.num_edges() - g.degree(u));
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                if (a != u && b != u && a != b) {
                    ASSERT_EQ(g.has_edge(a, b), del.graph.has_edge(*del.relabel[a], *del.relabel[b]));
                }
            }
        }
    }
}

TEST(graph, remap) {
    auto d = delete_vertex(path_graph(4), 1);
    ASSERT_EQ(remap(0b1111, d.relabel), VertexSet{0b111});
    ASSERT_EQ(remap(0b1010, d.relabel), VertexSet{0b100});
}

TEST(graph, parse_family) {
    auto f = parse_family("grid:2x3");
    ASSERT_EQ(f.kind, FamilyKind::Grid);
    ASSERT_EQ(f.params, (std::vector<size_t>{3, 3}));
    ASSERT_EQ(parse_family("grid:2x2x3").params, (std::vector<size_t>{2, 3}));
    ASSERT_EQ(parse_family("ghz:5").str(), "star:5");
    ASSERT_EQ(parse_family("icosahedron").build().num_edges(), 30);
    ASSERT_EQ(parse_family("path:7").build(), path_graph(7));

    EXPECT_THROW(parse_family("grid:3x2x2"), ParameterError);
    EXPECT_THROW(parse_family("path:x"), ParameterError);
    EXPECT_THROW(parse_family("path"), ParameterError);
    EXPECT_THROW(parse_family("path:1"), ParameterError);
    ASSERT_TRUE(looks_like_family("cycle:3"));
    ASSERT_FALSE(looks_like_family("graphs/foo.txt"));
}

TEST(graph, edge_list_round_trip) {
    std::istringstream in("# a triangle with a tail\n4\n0 1\n1 2   # middle\n0 2\n\n2 3\n");
    Graph g = parse_edge_list(in);
    ASSERT_EQ(g.num_vertices(), 4);
    ASSERT_EQ(g.num_edges(), 4);
    std::istringstream again(to_edge_list(g));
    ASSERT_EQ(parse_edge_list(again), g);

    std::istringstream loop("2\n1 1\n");
    EXPECT_THROW(parse_edge_list(loop), ParameterError);
    std::istringstream junk("3\n0 x\n");
    EXPECT_THROW(parse_edge_list(junk), ParameterError);
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(parse_edge_list(empty), ParameterError);
}

TEST(graph, load_graph_from_file) {
    auto path = ::testing::TempDir() + "drpp_graph_test_edges.txt";
    {
        std::ofstream out(path);
        out << to_edge_list(cycle_graph(4));
    }
    ASSERT_EQ(load_graph(path), cycle_graph(4));
    ASSERT_EQ(load_graph("cycle:4"), cycle_graph(4));
    EXPECT_THROW(load_graph("/nonexistent/graph.txt"), ParameterError);
}
