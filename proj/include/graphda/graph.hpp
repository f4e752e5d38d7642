#pragma once

#include <atomic>
#include <cstdint>
#include <limits>

#include "graphda/common.hpp"

namespace graphda {

struct Edge {
    int u = 0;
    int v = 0;
    double cost = 1.0;
};

// Undirected weighted graph. No self-loops, no duplicate pairs, costs >= 0.
class Graph {
public:
    Graph() = default;
    Graph(int node_count, std::vector<Edge> edges)
        : node_count_(node_count), edges_(std::move(edges)) {
        validate();
        build_adjacency();
    }

    int node_count() const { return node_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Incident edge indices of node u.
    const std::vector<int>& incident(int u) const { return adjacency_[u]; }

    int other_endpoint(int edge_index, int u) const {
        const Edge& e = edges_[edge_index];
        return e.u == u ? e.v : e.u;
    }

    int degree(int u) const { return static_cast<int>(adjacency_[u].size()); }

    // Distinct per construction, shared by copies; lets solvers cache
    // per-graph precomputation safely.
    std::uint64_t uid() const { return uid_; }

private:
    static std::uint64_t next_uid() {
        static std::atomic<std::uint64_t> counter{1};
        return counter.fetch_add(1, std::memory_order_relaxed);
    }
    void validate() const {
        if (node_count_ <= 0)
            throw std::invalid_argument("Graph: node_count must be positive");
        std::vector<std::uint64_t> keys;
        keys.reserve(edges_.size());
        for (const Edge& e : edges_) {
            if (e.u < 0 || e.v < 0 || e.u >= node_count_ || e.v >= node_count_)
                throw std::invalid_argument("Graph: edge endpoint out of range");
            if (e.u == e.v)
                throw std::invalid_argument("Graph: self-loop");
            if (e.cost < 0.0)
                throw std::invalid_argument("Graph: negative edge cost");
            const int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
            keys.push_back((std::uint64_t(a) << 32) | std::uint64_t(b));
        }
        std::sort(keys.begin(), keys.end());
        if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
            throw std::invalid_argument("Graph: duplicate edge");
    }

    void build_adjacency() {
        adjacency_.assign(node_count_, {});
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            adjacency_[edges_[i].u].push_back(i);
            adjacency_[edges_[i].v].push_back(i);
        }
    }

    int node_count_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::uint64_t uid_ = next_uid();
};

// Parameters of the (graph, s, g, B) structured-sparsity model: supports of at
// most s nodes whose induced forest has at most g components and edge cost at
// most B.
struct WgmConfig {
    int sparsity = 1;       // s
    int components = 1;     // g
    double budget = 0.0;    // B

    void validate(int node_count) const {
        if (sparsity < 1 || sparsity > node_count)
            throw std::invalid_argument("WgmConfig: need 1 <= s <= p");
        if (components < 1 || components > sparsity)
            throw std::invalid_argument("WgmConfig: need 1 <= g <= s");
        if (budget < 0.0)
            throw std::invalid_argument("WgmConfig: budget must be >= 0");
    }
};

// 4-neighbor lattice with rows*cols nodes, row-major node order.
inline Graph build_grid_graph(int rows, int cols, double unit_cost = 1.0) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("build_grid_graph: rows and cols must be >= 1");
    if (unit_cost < 0.0)
        throw std::invalid_argument("build_grid_graph: cost must be >= 0");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(rows) * (cols - 1) +
                  static_cast<std::size_t>(cols) * (rows - 1));
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), unit_cost});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), unit_cost});
        }
    }
    return Graph(rows * cols, std::move(edges));
}

// Fixed 6-node, 7-edge unit-cost graph used throughout the tests. Nodes 0..5;
// the edge set is the canonical transcription adopted by this library.
inline Graph build_toy_graph() {
    return Graph(6, {{5, 3, 1.0},
                     {3, 4, 1.0},
                     {1, 2, 1.0},
                     {2, 3, 1.0},
                     {4, 0, 1.0},
                     {0, 1, 1.0},
                     {1, 4, 1.0}});
}

// Zero out every coordinate outside S.
inline DenseVector restrict_to(const DenseVector& w, const Support& S) {
    const int p = static_cast<int>(w.size());
    DenseVector out(w.size(), 0.0);
    for (int i : S) {
        if (i < 0 || i >= p)
            throw std::invalid_argument("restrict_to: index out of range");
        out[i] = w[i];
    }
    return out;
}

inline Support support_of(const DenseVector& w, double tolerance = 0.0) {
    if (tolerance < 0.0)
        throw std::invalid_argument("support_of: tolerance must be >= 0");
    Support s;
    for (int i = 0; i < static_cast<int>(w.size()); ++i)
        if (std::abs(w[i]) > tolerance) s.push_back(i);
    return s;
}

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false if already joined.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

namespace detail {

// Edge indices of the subgraph induced by S (both endpoints inside).
inline std::vector<int> induced_edges(const Graph& g, const Support& S) {
    std::vector<char> in(g.node_count(), 0);
    for (int i : S) {
        if (i < 0 || i >= g.node_count())
            throw std::invalid_argument("support index out of range");
        in[i] = 1;
    }
    std::vector<int> out;
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        if (in[e.u] && in[e.v]) out.push_back(i);
    }
    return out;
}

struct InducedForest {
    int component_count = 0;
    double forest_cost = 0.0;         // minimum spanning forest over the induced subgraph
    std::vector<int> forest_edges;    // indices into graph.edges()
};

// Per-component minimum spanning forest of the subgraph induced by S
// (Kruskal; ties by edge index for determinism).
inline InducedForest induced_spanning_forest(const Graph& g, const Support& S) {
    InducedForest result;
    if (S.empty()) return result;
    std::vector<int> edges = induced_edges(g, S);
    std::sort(edges.begin(), edges.end(), [&](int a, int b) {
        if (g.edges()[a].cost != g.edges()[b].cost)
            return g.edges()[a].cost < g.edges()[b].cost;
        return a < b;
    });
    // Compact node ids for the union-find.
    std::vector<int> local(g.node_count(), -1);
    for (int i = 0; i < static_cast<int>(S.size()); ++i) local[S[i]] = i;
    UnionFind uf(static_cast<int>(S.size()));
    int components = static_cast<int>(S.size());
    for (int ei : edges) {
        const Edge& e = g.edges()[ei];
        if (uf.unite(local[e.u], local[e.v])) {
            result.forest_cost += e.cost;
            result.forest_edges.push_back(ei);
            --components;
        }
    }
    result.component_count = components;
    return result;
}

}  // namespace detail

// Membership in the weighted-graph model: |S| <= s, the induced subgraph has
// at most g components, and its minimum spanning forest costs at most B. The
// empty support always belongs.
inline bool is_in_wgm(const Support& S, const Graph& g, const WgmConfig& cfg) {
    cfg.validate(g.node_count());
    if (static_cast<int>(S.size()) > cfg.sparsity) return false;
    if (S.empty()) return true;
    detail::InducedForest f = detail::induced_spanning_forest(g, S);
    if (f.component_count > cfg.components) return false;
    return f.forest_cost <= cfg.budget + 1e-12;
}

// Brute-force enumeration of every model support; guard keeps the 2^p scan
// tractable.
inline std::vector<Support> enumerate_model_supports(const Graph& g,
                                                     const WgmConfig& cfg) {
    const int p = g.node_count();
    if (p > 16)
        throw std::invalid_argument(
            "enumerate_model_supports: refusing graphs with more than 16 nodes");
    cfg.validate(p);
    std::vector<Support> out;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        Support s;
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i)) s.push_back(i);
        if (is_in_wgm(s, g, cfg)) out.push_back(std::move(s));
    }
    return out;
}

// Connected components of the subgraph induced by S.
inline int induced_component_count(const Graph& g, const Support& S) {
    if (S.empty()) return 0;
    return detail::induced_spanning_forest(g, S).component_count;
}

}  // namespace graphda
