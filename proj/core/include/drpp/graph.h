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

#ifndef DRPP_GRAPH_H
#define DRPP_GRAPH_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drpp {

/// Set of vertex indices packed into a machine word; bit v set <=> v is a member.
using VertexSet = uint64_t;

inline constexpr VertexSet bit(size_t v) {
    return VertexSet{1} << v;
}

inline size_t popcount(VertexSet s) {
    return static_cast<size_t>(std::popcount(s));
}

struct Edge {
    size_t u;
    size_t v;
    bool operator==(const Edge &) const = default;
    auto operator<=>(const Edge &) const = default;
};

/// Undirected simple graph on vertices 0..n-1 stored as per-vertex neighbour bitsets.
///
/// The adjacency is kept symmetric and loop-free by every mutating method, so
/// the neighbour word of v doubles as the Z-support of the stabilizer K_v
/// (minus v itself).
class Graph {
   public:
    static constexpr size_t kMaxVertices = 64;

    Graph() = default;
    explicit Graph(size_t num_vertices);
    static Graph from_edges(size_t num_vertices, std::span<const Edge> edges);

    size_t num_vertices() const {
        return adjacency_.size();
    }
    size_t num_edges() const;
    VertexSet neighbors(size_t v) const {
        return adjacency_[v];
    }
    size_t degree(size_t v) const {
        return popcount(adjacency_[v]);
    }
    bool has_edge(size_t u, size_t v) const;

    /// Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    void add_edge(size_t u, size_t v);
    void remove_edge(size_t u, size_t v);
    void toggle_edge(size_t u, size_t v);

    /// Appends isolated vertices; returns the index of the first new vertex.
    size_t add_vertices(size_t count);

    bool operator==(const Graph &) const = default;

    std::string str() const;

   private:
    void check_pair(size_t u, size_t v) const;
    void check_vertex(size_t v) const;

    std::vector<VertexSet> adjacency_;
};

/// Result of removing a vertex: the smaller graph and old-index -> new-index map.
struct VertexDeletion {
    Graph graph;
    /// relabel[old] is the new index, or nullopt for the deleted vertex.
    std::vector<std::optional<size_t>> relabel;
};

Graph toggle_edge(const Graph &g, size_t u, size_t v);
VertexDeletion delete_vertex(const Graph &g, size_t v);
Graph local_complement(const Graph &g, size_t v);

/// Bits of `set` remapped through a deletion's relabel table; deleted members are dropped.
VertexSet remap(VertexSet set, const std::vector<std::optional<size_t>> &relabel);

// Standard families.
Graph empty_graph(size_t n);
Graph path_graph(size_t n);
Graph cycle_graph(size_t n);
Graph star_graph(size_t n);
Graph complete_graph(size_t n);
Graph grid_graph(std::span<const size_t> side_lengths);
Graph icosahedron_graph();

enum class FamilyKind { Path, Grid, Star, Cycle, Complete, Icosahedron };

/// Parsed family description, e.g. `grid:3x4` -> {Grid, {3, 4}}.
struct GraphFamily {
    FamilyKind kind;
    std::vector<size_t> params;

    Graph build() const;
    std::string str() const;
};

/// Builds the named family. Recognised names: path, grid, star, ghz, cycle,
/// complete, icosahedron. Throws ParameterError naming the violated constraint.
Graph family(std::string_view name, std::span<const size_t> params);

/// Parses `path:N`, `grid:DxN1x...` style strings (see README). Throws ParameterError.
GraphFamily parse_family(std::string_view text);
bool looks_like_family(std::string_view text);

/// Edge-list text: first non-comment line `n`, then `u v` per line; `#` starts a comment.
Graph parse_edge_list(std::istream &in);
std::string to_edge_list(const Graph &g);

/// Family string if it parses as one, otherwise the path of an edge-list file.
Graph load_graph(std::string_view spec);

}  // namespace drpp

#endif  // DRPP_GRAPH_H
