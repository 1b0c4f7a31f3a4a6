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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "drpp/errors.h"

namespace drpp {

Graph::Graph(size_t num_vertices) {
    if (num_vertices > kMaxVertices) {
        throw CapacityError("graph has " + std::to_string(num_vertices) + " vertices; at most " +
                            std::to_string(kMaxVertices) + " are supported");
    }
    adjacency_.assign(num_vertices, 0);
}

Graph Graph::from_edges(size_t num_vertices, std::span<const Edge> edges) {
    Graph g(num_vertices);
    for (const auto &e : edges) {
        g.add_edge(e.u, e.v);
    }
    return g;
}

size_t Graph::num_edges() const {
    size_t twice = 0;
    for (auto a : adjacency_) {
        twice += popcount(a);
    }
    return twice / 2;
}

bool Graph::has_edge(size_t u, size_t v) const {
    check_vertex(u);
    check_vertex(v);
    return (adjacency_[u] >> v) & 1;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (size_t u = 0; u < adjacency_.size(); u++) {
        VertexSet upper = adjacency_[u] & ~((bit(u) << 1) - 1);
        while (upper) {
            size_t v = static_cast<size_t>(std::countr_zero(upper));
            out.push_back({u, v});
            upper &= upper - 1;
        }
    }
    return out;
}

void Graph::check_vertex(size_t v) const {
    if (v >= adjacency_.size()) {
        throw ParameterError("vertex " + std::to_string(v) + " out of range for graph with " +
                             std::to_string(adjacency_.size()) + " vertices");
    }
}

void Graph::check_pair(size_t u, size_t v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) {
        throw ParameterError("self-loop on vertex " + std::to_string(u) + ": endpoints must differ");
    }
}

void Graph::add_edge(size_t u, size_t v) {
    check_pair(u, v);
    adjacency_[u] |= bit(v);
    adjacency_[v] |= bit(u);
}

void Graph::remove_edge(size_t u, size_t v) {
    check_pair(u, v);
    adjacency_[u] &= ~bit(v);
    adjacency_[v] &= ~bit(u);
}

void Graph::toggle_edge(size_t u, size_t v) {
    check_pair(u, v);
    adjacency_[u] ^= bit(v);
    adjacency_[v] ^= bit(u);
}

size_t Graph::add_vertices(size_t count) {
    size_t first = adjacency_.size();
    if (first + count > kMaxVertices) {
        throw CapacityError("graph would exceed " + std::to_string(kMaxVertices) + " vertices");
    }
    adjacency_.resize(first + count, 0);
    return first;
}

std::string Graph::str() const {
    std::ostringstream out;
    out << "Graph(n=" << num_vertices() << ", edges={";
    bool first = true;
    for (const auto &e : edges()) {
        out << (first ? "" : ", ") << e.u << "-" << e.v;
        first = false;
    }
    out << "})";
    return out.str();
}

Graph toggle_edge(const Graph &g, size_t u, size_t v) {
    Graph out = g;
    out.toggle_edge(u, v);
    return out;
}

VertexSet remap(VertexSet set, const std::vector<std::optional<size_t>> &relabel) {
    VertexSet out = 0;
    while (set) {
        size_t v = static_cast<size_t>(std::countr_zero(set));
        set &= set - 1;
        if (v < relabel.size() && relabel[v]) {
            out |= bit(*relabel[v]);
        }
    }
    return out;
}

VertexDeletion delete_vertex(const Graph &g, size_t v) {
    size_t n = g.num_vertices();
    if (v >= n) {
        throw ParameterError("vertex " + std::to_string(v) + " out of range for graph with " +
                             std::to_string(n) + " vertices");
    }
    VertexDeletion result{Graph(n - 1), std::vector<std::optional<size_t>>(n)};
    for (size_t w = 0; w < n; w++) {
        if (w != v) {
            result.relabel[w] = w < v ? w : w - 1;
        }
    }
    for (const auto &e : g.edges()) {
        if (e.u != v && e.v != v) {
            result.graph.add_edge(*result.relabel[e.u], *result.relabel[e.v]);
        }
    }
    return result;
}

Graph local_complement(const Graph &g, size_t v) {
    if (v >= g.num_vertices()) {
        throw ParameterError("vertex " + std::to_string(v) + " out of range");
    }
    Graph out = g;
    VertexSet nbrs = g.neighbors(v);
    for (VertexSet a = nbrs; a; a &= a - 1) {
        size_t x = static_cast<size_t>(std::countr_zero(a));
        for (VertexSet b = a & (a - 1); b; b &= b - 1) {
            size_t y = static_cast<size_t>(std::countr_zero(b));
            out.toggle_edge(x, y);
        }
    }
    return out;
}

Graph empty_graph(size_t n) {
    return Graph(n);
}

Graph path_graph(size_t n) {
    if (n < 2) {
        throw ParameterError("path requires n >= 2");
    }
    Graph g(n);
    for (size_t i = 0; i + 1 < n; i++) {
        g.add_edge(i, i + 1);
    }
    return g;
}

Graph cycle_graph(size_t n) {
    if (n < 3) {
        throw ParameterError("cycle requires n >= 3");
    }
    Graph g(n);
    for (size_t i = 0; i < n; i++) {
        g.add_edge(i, (i + 1) % n);
    }
    return g;
}

Graph star_graph(size_t n) {
    if (n < 2) {
        throw ParameterError("star requires n >= 2");
    }
    Graph g(n);
    for (size_t i = 1; i < n; i++) {
        g.add_edge(0, i);
    }
    return g;
}

Graph complete_graph(size_t n) {
    if (n < 2) {
        throw ParameterError("complete requires n >= 2");
    }
    Graph g(n);
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            g.add_edge(u, v);
        }
    }
    return g;
}

Graph grid_graph(std::span<const size_t> side_lengths) {
    if (side_lengths.empty()) {
        throw ParameterError("grid requires dimension d >= 1");
    }
    size_t total = 1;
    for (auto s : side_lengths) {
        if (s < 2) {
            throw ParameterError("grid requires every side length >= 2");
        }
        total *= s;
        if (total > Graph::kMaxVertices) {
            throw CapacityError("grid exceeds " + std::to_string(Graph::kMaxVertices) + " vertices");
        }
    }
    Graph g(total);
    // Row-major mixed-radix index; dimension 0 varies fastest.
    for (size_t idx = 0; idx < total; idx++) {
        size_t stride = 1;
        size_t rest = idx;
        for (auto s : side_lengths) {
            size_t coord = rest % s;
            rest /= s;
            if (coord + 1 < s) {
                g.add_edge(idx, idx + stride);
            }
            stride *= s;
        }
    }
    return g;
}

Graph icosahedron_graph() {
    // 0 = top, 1..5 upper ring, 6..10 lower ring, 11 = bottom.
    Graph g(12);
    for (size_t i = 0; i < 5; i++) {
        size_t up = 1 + i;
        size_t up_next = 1 + (i + 1) % 5;
        size_t lo = 6 + i;
        size_t lo_next = 6 + (i + 1) % 5;
        g.add_edge(0, up);
        g.add_edge(up, up_next);
        g.add_edge(up, lo);
        g.add_edge(up, lo_next);
        g.add_edge(lo, lo_next);
        g.add_edge(11, lo);
    }
    return g;
}

namespace {

void require_param_count(std::string_view name, std::span<const size_t> params, size_t count) {
    if (params.size() != count) {
        throw ParameterError(std::string(name) + " expects " + std::to_string(count) + " parameter(s), got " +
                             std::to_string(params.size()));
    }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

size_t parse_count(std::string_view text, std::string_view context) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("could not parse '" + std::string(text) + "' as a count in '" + std::string(context) + "'");
    }
    return value;
}

}  // namespace

Graph family(std::string_view name, std::span<const size_t> params) {
    if (name == "path") {
        require_param_count(name, params, 1);
        return path_graph(params[0]);
    }
    if (name == "star" || name == "ghz") {
        require_param_count(name, params, 1);
        return star_graph(params[0]);
    }
    if (name == "cycle") {
        require_param_count(name, params, 1);
        return cycle_graph(params[0]);
    }
    if (name == "complete") {
        require_param_count(name, params, 1);
        return complete_graph(params[0]);
    }
    if (name == "grid") {
        return grid_graph(params);
    }
    if (name == "icosahedron") {
        require_param_count(name, params, 0);
        return icosahedron_graph();
    }
    throw ParameterError("unknown graph family '" + std::string(name) + "'");
}

Graph GraphFamily::build() const {
    switch (kind) {
        case FamilyKind::Path:
            return family("path", params);
        case FamilyKind::Grid:
            return family("grid", params);
        case FamilyKind::Star:
            return family("star", params);
        case FamilyKind::Cycle:
            return family("cycle", params);
        case FamilyKind::Complete:
            return family("complete", params);
        case FamilyKind::Icosahedron:
            return family("icosahedron", params);
    }
    throw ParameterError("unknown family kind");
}

std::string GraphFamily::str() const {
    auto one = [&](const char *name) { return std::string(name) + ":" + std::to_string(params.at(0)); };
    switch (kind) {
        case FamilyKind::Path:
            return one("path");
        case FamilyKind::Star:
            return one("star");
        case FamilyKind::Cycle:
            return one("cycle");
        case FamilyKind::Complete:
            return one("complete");
        case FamilyKind::Icosahedron:
            return "icosahedron";
        case FamilyKind::Grid: {
            std::string out = "grid:" + std::to_string(params.size());
            for (auto s : params) {
                out += "x" + std::to_string(s);
            }
            return out;
        }
    }
    return "?";
}

GraphFamily parse_family(std::string_view text) {
    auto colon = text.find(':');
    std::string_view name = text.substr(0, colon);
    std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    GraphFamily fam{};
    if (name == "icosahedron") {
        if (!arg.empty()) {
            throw ParameterError("icosahedron takes no parameters");
        }
        fam.kind = FamilyKind::Icosahedron;
    } else if (name == "path" || name == "star" || name == "ghz" || name == "cycle" || name == "complete") {
        if (arg.empty()) {
            throw ParameterError(std::string(name) + " requires a vertex count, e.g. '" + std::string(name) + ":5'");
        }
        fam.kind = name == "path"     ? FamilyKind::Path
                   : name == "cycle"  ? FamilyKind::Cycle
                   : name == "complete" ? FamilyKind::Complete
                                        : FamilyKind::Star;
        fam.params = {parse_count(arg, text)};
    } else if (name == "grid") {
        auto parts = split(arg, 'x');
        if (parts.size() < 2) {
            throw ParameterError("grid expects 'grid:DxN1x...xND' (or 'grid:DxN' for equal sides)");
        }
        size_t d = parse_count(parts[0], text);
        if (d < 1) {
            throw ParameterError("grid requires dimension d >= 1");
        }
        std::vector<size_t> sides;
        for (size_t i = 1; i < parts.size(); i++) {
            sides.push_back(parse_count(parts[i], text));
        }
        if (sides.size() == 1 && d > 1) {
            sides.assign(d, sides[0]);
        }
        if (sides.size() != d) {
            throw ParameterError("grid dimension " + std::to_string(d) + " does not match " +
                                 std::to_string(sides.size()) + " side lengths");
        }
        fam.kind = FamilyKind::Grid;
        fam.params = std::move(sides);
    } else {
        throw ParameterError("unknown graph family '" + std::string(name) + "'");
    }
    fam.build();  // validate parameters eagerly
    return fam;
}

bool looks_like_family(std::string_view text) {
    auto name = text.substr(0, text.find(':'));
    return name == "path" || name == "star" || name == "ghz" || name == "cycle" || name == "complete" ||
           name == "grid" || name == "icosahedron";
}

Graph parse_edge_list(std::istream &in) {
    std::optional<Graph> g;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::vector<long long> values;
        long long x;
        while (fields >> x) {
            values.push_back(x);
        }
        if (!fields.eof()) {
            throw ParameterError("edge list line " + std::to_string(line_no) + ": expected integers");
        }
        if (values.empty()) {
            continue;
        }
        if (!g) {
            if (values.size() != 1 || values[0] < 1) {
                throw ParameterError("edge list line " + std::to_string(line_no) +
                                     ": first entry must be the vertex count n >= 1");
            }
            g.emplace(static_cast<size_t>(values[0]));
            continue;
        }
        if (values.size() != 2 || values[0] < 0 || values[1] < 0) {
            throw ParameterError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        g->add_edge(static_cast<size_t>(values[0]), static_cast<size_t>(values[1]));
    }
    if (!g) {
        throw ParameterError("edge list is empty");
    }
    return *g;
}

std::string to_edge_list(const Graph &g) {
    std::ostringstream out;
    out << g.num_vertices() << "\n";
    for (const auto &e : g.edges()) {
        out << e.u << " " << e.v << "\n";
    }
    return out.str();
}

Graph load_graph(std::string_view spec) {
    if (looks_like_family(spec)) {
        return parse_family(spec).build();
    }
    std::ifstream in{std::string(spec)};
    if (!in) {
        throw ParameterError("'" + std::string(spec) + "' is neither a graph family nor a readable edge-list file");
    }
    return parse_edge_list(in);
}

}  // namespace drpp
