#pragma once

#include <map>
#include <vector>

#include "ustats/notation.hpp"

namespace ustats {

class SetPartition;

/// Undirected simple graph over integer vertex ids (no self-loops, no parallel
/// edges; isolated vertices are first-class). Vertex ids need not be
/// contiguous, which keeps ids stable across vertex elimination. Equality is
/// canonical-form comparison: same vertex ids, same sorted adjacency.
class SimpleGraph {
  public:
    SimpleGraph() = default;

    /// Graph on vertices {0..n-1} with the given edges (duplicates ignored).
    /// Throws InvalidArgument on a self-loop or an endpoint outside [0,n).
    static SimpleGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    /// Edgeless graph on the given vertex ids (duplicates ignored).
    static SimpleGraph on_vertices(const std::vector<int>& ids);

    /// Complete graph on {0..n-1}.
    static SimpleGraph complete(int n);

    void add_vertex(int v);
    /// Adds an edge, inserting missing endpoints. Throws InvalidArgument on u == v.
    void add_edge(int u, int v);

    bool has_vertex(int v) const;
    bool has_edge(int u, int v) const;

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const;
    int degree(int v) const;

    /// Sorted vertex ids.
    std::vector<int> vertices() const;
    /// Sorted neighbor ids. Throws VertexAbsent.
    const std::vector<int>& neighbors(int v) const;

    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const SimpleGraph& other) const { return adjacency_ == other.adjacency_; }

  private:
    // id -> sorted neighbor ids; map keeps vertex iteration deterministic.
    std::map<int, std::vector<int>> adjacency_;
};

/// Co-occurrence graph of a notation's indices: one vertex per canonical index,
/// an edge wherever two distinct indices share an input tuple.
SimpleGraph decomposition_graph(const EinsumNotation& notation);

/// Same construction from a bare signature (tuples only, no output).
SimpleGraph decomposition_graph(const std::vector<IndexTuple>& signature);

/// Vertex elimination: connects v's neighbors into a clique, then removes v
/// and its incident edges. Remaining vertex ids are unchanged.
/// Throws VertexAbsent.
SimpleGraph eliminate_vertex(const SimpleGraph& g, int v);

/// Quotient of g by a partition of its vertex set: one vertex per block
/// (blocks numbered by smallest member, in that order), an edge between two
/// distinct blocks iff g has any edge across them; intra-block edges vanish.
/// The partition's ground set {0..m-1} maps onto g's sorted vertex ids, so it
/// must have exactly vertex_count() elements (else GroundSetMismatch).
SimpleGraph quotient_graph(const SimpleGraph& g, const SetPartition& partition);

}  // namespace ustats
