#include "ustats/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

using Mask = std::uint64_t;

int popcount(Mask m) { return std::popcount(m); }

/// Exact solver over positions 0..V-1 with bitmask adjacency. The elimination
/// graph after removing a set of vertices does not depend on the removal
/// order, so results memoize on the remaining-set mask.
class ExactSolver {
  public:
    explicit ExactSolver(std::vector<Mask> adjacency)
        : base_adjacency_(std::move(adjacency)),
          vertex_count_(static_cast<int>(base_adjacency_.size())) {}

    /// width + elimination positions for the optimal order (ties: lowest
    /// position first, depth-first), for the subgraph on `remaining`.
    std::pair<int, std::vector<int>> solve() {
        Mask all = vertex_count_ == 64 ? ~Mask{0} : ((Mask{1} << vertex_count_) - 1);
        return best(base_adjacency_, all);
    }

  private:
    struct Entry {
        int width;
        std::vector<int> suffix;
    };

    std::pair<int, std::vector<int>> best(std::vector<Mask> adj, Mask remaining) {
        int reduced_width = 0;
        std::vector<int> reduced_order;
        Mask key = remaining;
        if (auto it = memo_.find(key); it != memo_.end())
            return {it->second.width, it->second.suffix};

        // Simplicial reduction: a vertex whose live neighborhood is a clique
        // can be eliminated first without loss of optimality (its degree is
        // already forced as a lower bound by the clique it completes).
        bool reduced = true;
        while (reduced && remaining) {
            reduced = false;
            for (Mask rest = remaining; rest;) {
                int v = std::countr_zero(rest);
                rest &= rest - 1;
                Mask nbrs = adj[v] & remaining;
                if (!is_clique(adj, nbrs)) continue;
                reduced_width = std::max(reduced_width, popcount(nbrs));
                reduced_order.push_back(v);
                remaining &= ~(Mask{1} << v);
                detach(adj, v, nbrs);
                reduced = true;
                break;  // restart the scan from the lowest position
            }
        }

        if (!remaining) {
            memo_.emplace(key, Entry{reduced_width, reduced_order});
            return {reduced_width, reduced_order};
        }

        int best_width = vertex_count_;  // any order is at most V-1 wide
        std::vector<int> best_suffix;
        for (Mask rest = remaining; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            Mask nbrs = adj[v] & remaining;
            int deg = popcount(nbrs);
            if (deg >= best_width) continue;  // cannot strictly improve
            std::vector<Mask> next = adj;
            eliminate(next, v, nbrs);
            auto [sub_width, sub_suffix] = best(next, remaining & ~(Mask{1} << v));
            int width = std::max(deg, sub_width);
            if (width < best_width) {
                best_width = width;
                best_suffix.clear();
                best_suffix.push_back(v);
                best_suffix.insert(best_suffix.end(), sub_suffix.begin(), sub_suffix.end());
            }
        }

        int total_width = std::max(reduced_width, best_width);
        reduced_order.insert(reduced_order.end(), best_suffix.begin(), best_suffix.end());
        memo_.emplace(key, Entry{total_width, reduced_order});
        return {total_width, reduced_order};
    }

    static bool is_clique(const std::vector<Mask>& adj, Mask verts) {
        for (Mask rest = verts; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            Mask others = verts & ~(Mask{1} << v);
            if ((adj[v] & others) != others) return false;
        }
        return true;
    }

    static void eliminate(std::vector<Mask>& adj, int v, Mask nbrs) {
        for (Mask rest = nbrs; rest;) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            adj[u] |= nbrs & ~(Mask{1} << u);
            adj[u] &= ~(Mask{1} << v);
        }
        adj[v] = 0;
    }

    static void detach(std::vector<Mask>& adj, int v, Mask nbrs) {
        // Simplicial elimination adds no fill; just unlink v.
        for (Mask rest = nbrs; rest;) {
            int u = std::countr_zero(rest);
            rest &= rest - 1;
            adj[u] &= ~(Mask{1} << v);
        }
        adj[v] = 0;
    }

    std::vector<Mask> base_adjacency_;
    int vertex_count_;
    std::unordered_map<Mask, Entry> memo_;
};

std::vector<Mask> to_masks(const SimpleGraph& g, const std::vector<int>& ids) {
    std::vector<Mask> adj(ids.size(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (int u : g.neighbors(ids[i])) {
            auto pos = std::lower_bound(ids.begin(), ids.end(), u) - ids.begin();
            adj[i] |= Mask{1} << pos;
        }
    return adj;
}

}  // namespace

TreewidthResult treewidth_exact(const SimpleGraph& g, const Config& config) {
    const std::vector<int> ids = g.vertices();
    if (static_cast<int>(ids.size()) > config.exact_treewidth_bound)
        fail(ErrorCode::TooLarge, "exact treewidth limited to " +
                                      std::to_string(config.exact_treewidth_bound) +
                                      " vertices, got " + std::to_string(ids.size()));
    if (ids.empty()) return {0, {}};
    ExactSolver solver(to_masks(g, ids));
    auto [width, positions] = solver.solve();
    TreewidthResult result;
    result.width = width;
    result.order.reserve(positions.size());
    for (int pos : positions) result.order.push_back(ids[pos]);
    return result;
}

TreewidthResult treewidth_upper(const SimpleGraph& g, EliminationHeuristic heuristic) {
    SimpleGraph work = g;
    TreewidthResult result;
    while (work.vertex_count() > 0) {
        const std::vector<int> ids = work.vertices();
        int chosen = ids.front();
        long best_score = -1;
        for (int v : ids) {
            long score;
            if (heuristic == EliminationHeuristic::MinDegree) {
                score = work.degree(v);
            } else {
                const std::vector<int>& nbrs = work.neighbors(v);
                long fill = 0;
                for (std::size_t i = 0; i < nbrs.size(); ++i)
                    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                        if (!work.has_edge(nbrs[i], nbrs[j])) ++fill;
                score = fill;
            }
            if (best_score < 0 || score < best_score) {  // ties keep the lowest id
                best_score = score;
                chosen = v;
            }
        }
        result.width = std::max(result.width, work.degree(chosen));
        result.order.push_back(chosen);
        work = eliminate_vertex(work, chosen);
    }
    return result;
}

int degeneracy(const SimpleGraph& g) {
    SimpleGraph work = g;
    int degen = 0;
    while (work.vertex_count() > 0) {
        const std::vector<int> ids = work.vertices();
        int chosen = ids.front();
        int min_deg = work.degree(chosen);
        for (int v : ids) {
            int d = work.degree(v);
            if (d < min_deg) {
                min_deg = d;
                chosen = v;
            }
        }
        degen = std::max(degen, min_deg);
        // Plain removal, no fill: rebuild without `chosen`.
        SimpleGraph next;
        for (int v : ids)
            if (v != chosen) next.add_vertex(v);
        for (auto [a, b] : work.edges())
            if (a != chosen && b != chosen) next.add_edge(a, b);
        work = std::move(next);
    }
    return degen;
}

int max_treewidth_by_edges(int e) {
    static const int table[16] = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 5};
    if (e < 1 || e > 15)
        fail(ErrorCode::OutOfTable,
             "edge-count treewidth table covers 1..15 edges, got " + std::to_string(e));
    return table[e];
}

}  // namespace ustats
