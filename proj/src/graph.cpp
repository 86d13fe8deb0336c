#include "ustats/graph.hpp"

#include <algorithm>
#include <string>

#include "ustats/errors.hpp"
#include "ustats/partition.hpp"

namespace ustats {

namespace {
void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}
}  // namespace

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) fail(ErrorCode::InvalidArgument, "vertex count must be >= 0");
    SimpleGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(ErrorCode::InvalidArgument, "edge endpoint outside [0,n)");
        g.add_edge(u, v);
    }
    return g;
}

SimpleGraph SimpleGraph::on_vertices(const std::vector<int>& ids) {
    SimpleGraph g;
    for (int v : ids) g.add_vertex(v);
    return g;
}

SimpleGraph SimpleGraph::complete(int n) {
    SimpleGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

void SimpleGraph::add_vertex(int v) { adjacency_.try_emplace(v); }

void SimpleGraph::add_edge(int u, int v) {
    if (u == v)
        fail(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(u));
    add_vertex(u);
    add_vertex(v);
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
}

bool SimpleGraph::has_vertex(int v) const { return adjacency_.count(v) != 0; }

bool SimpleGraph::has_edge(int u, int v) const {
    auto it = adjacency_.find(u);
    if (it == adjacency_.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), v);
}

int SimpleGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [v, nbrs] : adjacency_) twice += nbrs.size();
    return static_cast<int>(twice / 2);
}

int SimpleGraph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

std::vector<int> SimpleGraph::vertices() const {
    std::vector<int> ids;
    ids.reserve(adjacency_.size());
    for (const auto& [v, nbrs] : adjacency_) ids.push_back(v);
    return ids;
}

const std::vector<int>& SimpleGraph::neighbors(int v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end())
        fail(ErrorCode::VertexAbsent, "vertex " + std::to_string(v) + " is not in the graph");
    return it->second;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [v, nbrs] : adjacency_)
        for (int u : nbrs)
            if (v < u) out.emplace_back(v, u);
    return out;
}

SimpleGraph decomposition_graph(const std::vector<IndexTuple>& signature) {
    SimpleGraph g;
    for (const IndexTuple& tuple : signature) {
        for (int idx : tuple) g.add_vertex(idx);
        for (std::size_t i = 0; i < tuple.size(); ++i)
            for (std::size_t j = i + 1; j < tuple.size(); ++j)
                if (tuple[i] != tuple[j]) g.add_edge(tuple[i], tuple[j]);
    }
    return g;
}

SimpleGraph decomposition_graph(const EinsumNotation& notation) {
    return decomposition_graph(notation.inputs);
}

SimpleGraph eliminate_vertex(const SimpleGraph& g, int v) {
    const std::vector<int> nbrs = g.neighbors(v);  // copy; throws VertexAbsent
    SimpleGraph out;
    for (int u : g.vertices())
        if (u != v) out.add_vertex(u);
    for (auto [a, b] : g.edges())
        if (a != v && b != v) out.add_edge(a, b);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) out.add_edge(nbrs[i], nbrs[j]);
    return out;
}

SimpleGraph quotient_graph(const SimpleGraph& g, const SetPartition& partition) {
    const std::vector<int> ids = g.vertices();
    if (partition.ground_size() != static_cast<int>(ids.size()))
        fail(ErrorCode::GroundSetMismatch,
             "partition of " + std::to_string(partition.ground_size()) +
                 " elements does not cover a graph on " + std::to_string(ids.size()) +
                 " vertices");
    SimpleGraph q;
    for (int b = 0; b < partition.block_count(); ++b) q.add_vertex(b);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        int bu = partition.block_of(static_cast<int>(i));
        for (int u : g.neighbors(ids[i])) {
            auto pos = std::lower_bound(ids.begin(), ids.end(), u) - ids.begin();
            int bv = partition.block_of(static_cast<int>(pos));
            if (bu != bv && !q.has_edge(bu, bv)) q.add_edge(bu, bv);
        }
    }
    return q;
}

}  // namespace ustats
