#pragma once

#include <cassert>
#include <cstdint>
#include <cstring>

#include "graphda/graph.hpp"

namespace graphda {

// Forest returned by the prize-collecting solvers: node set plus edge indices
// into the host graph. Acyclic, at most the requested number of components,
// |edges| = |nodes| - components.
struct Forest {
    Support nodes;
    std::vector<int> edges;
};

struct PcstInstance {
    Graph graph;
    DenseVector prizes;            // one nonnegative prize per node
    int target_components = 1;     // g
    double cost_scale = 1.0;       // multiplies every edge cost

    void validate() const {
        if (static_cast<int>(prizes.size()) != graph.node_count())
            throw std::invalid_argument("PcstInstance: prize length mismatch");
        for (double p : prizes)
            if (p < 0.0) throw std::invalid_argument("PcstInstance: negative prize");
        if (target_components < 1)
            throw std::invalid_argument("PcstInstance: target_components must be >= 1");
        if (cost_scale < 0.0)
            throw std::invalid_argument("PcstInstance: cost_scale must be >= 0");
    }
};

// Bought edge cost (scaled) plus prizes forgone on nodes outside the forest.
inline double pcst_objective(const Graph& g, const DenseVector& prizes,
                             const Forest& forest, double cost_scale = 1.0) {
    if (static_cast<int>(prizes.size()) != g.node_count())
        throw std::invalid_argument("pcst_objective: prize length mismatch");
    std::vector<char> in(g.node_count(), 0);
    for (int v : forest.nodes) {
        if (v < 0 || v >= g.node_count())
            throw std::invalid_argument("pcst_objective: node out of range");
        if (in[v]) throw std::invalid_argument("pcst_objective: duplicate node");
        in[v] = 1;
    }
    UnionFind uf(g.node_count());
    double edge_cost = 0.0;
    for (int ei : forest.edges) {
        if (ei < 0 || ei >= g.edge_count())
            throw std::invalid_argument("pcst_objective: edge index out of range");
        const Edge& e = g.edges()[ei];
        if (!in[e.u] || !in[e.v])
            throw std::invalid_argument("pcst_objective: edge endpoint not in forest");
        if (!uf.unite(e.u, e.v))
            throw std::invalid_argument("pcst_objective: forest contains a cycle");
        edge_cost += e.cost;
    }
    double forgone = 0.0;
    for (int v = 0; v < g.node_count(); ++v)
        if (!in[v]) forgone += prizes[v];
    return cost_scale * edge_cost + forgone;
}

// Goemans-Williamson moat-growth solver.
//
// Every positive-prize node starts as an active cluster whose moat consumes
// its prize at unit rate. The earliest pending event is either two moats
// meeting across an edge (merge the clusters) or a cluster exhausting its
// potential (deactivate it). Growth stops once at most `target_components`
// clusters remain active; unprofitable leaf subtrees are then peeled off and
// the best components by prize-minus-cost are kept.
//
// Exact per-node dual values are maintained directly (rebasing the smaller
// side at each merge), so edge events carry no state: an event is re-derived
// from the duals when it pops and rescheduled if its clusters changed in the
// meantime. One solver instance holds reusable buffers; repeated solves on
// the same graph reuse its adjacency. A solver must not be shared between
// threads mid-solve.
class PcstSolver {
public:
    Forest solve(const Graph& g, const DenseVector& prizes,
                 int target_components = 1, double cost_scale = 1.0) {
        if (static_cast<int>(prizes.size()) != g.node_count())
            throw std::invalid_argument("solve_pcst: prize length mismatch");
        for (double p : prizes)
            if (p < 0.0) throw std::invalid_argument("solve_pcst: negative prize");
        if (target_components < 1)
            throw std::invalid_argument("solve_pcst: target_components must be >= 1");
        if (cost_scale < 0.0)
            throw std::invalid_argument("solve_pcst: cost_scale must be >= 0");

        bind(g);
        if (identity_usable_ && cost_scale > 0.0) {
            init_identity(prizes, cost_scale);
        } else {
            init_contracted(g, prizes, cost_scale);
        }
        grow(target_components);
        return assemble(g, target_components);
    }

private:
    static constexpr double kTightEps = 1e-12;
    static constexpr std::uint32_t kDeactBit = 1u << 30;

    // ---------------- clusters ----------------
    struct Cluster {
        double formed_at;    // virtual formation time; growth = clock - formed_at
        double stalled_at;   // deactivation time, while inactive
        double deadline;     // formed_at + remaining potential
        double prize;
        double spent;        // moat time consumed by constituents before formation
        std::int32_t parent;
        std::int32_t size;
        std::int32_t node_head, node_tail;
        std::int32_t child1, child2, via_edge;
        bool active;
    };

    // Weighted union-find over cluster ids: off_[c] is the dual correction of
    // c's members relative to c's parent, so a merge adjusts one offset
    // instead of touching every member node.
    int find_base(int c, double& base_out) {
        if (clusters_[c].parent == c) {
            base_out = 0.0;
            return c;
        }
        path_.clear();
        while (clusters_[c].parent != c) {
            path_.push_back(c);
            c = clusters_[c].parent;
        }
        double above = 0.0;
        for (int i = static_cast<int>(path_.size()) - 1; i >= 0; --i) {
            const int x = path_[i];
            const double s = off_[x] + above;
            clusters_[x].parent = c;
            off_[x] = s;
            above = s;
        }
        base_out = above;
        return c;
    }

    int find_cluster(int c) {
        double ignored;
        return find_base(c, ignored);
    }

    double growth(const Cluster& c, double now) const {
        return (c.active ? now : c.stalled_at) - c.formed_at;
    }

    // ---------------- flat 4-ary event heap ----------------
    // Edge events fire no later than scheduled (cluster changes only delay a
    // meeting), so a popped event is either processed or re-derived and
    // pushed again; per-edge stamps retire superseded entries. Ordering is
    // (time, kind: merges first, edge index / cluster id). Keys and payloads
    // live in parallel raw buffers sized up front so the sift loops run on
    // plain pointers.
    struct Event {
        double t;
        std::uint32_t kind_id;  // kDeactBit | cluster, or edge index
        std::uint32_t stamp;
    };

    static bool key_before(double ta, std::uint64_t pa, double tb,
                           std::uint64_t pb) {
        if (ta != tb) return ta < tb;
        return static_cast<std::uint32_t>(pa) < static_cast<std::uint32_t>(pb);
    }

    void heap_reserve(std::size_t cap) {
        if (ev_t_.size() < cap) {
            ev_t_.resize(cap);
            ev_p_.resize(cap);
        }
    }

    void heap_grow_if_full() {
        if (ev_size_ == static_cast<int>(ev_t_.size())) {
            ev_t_.resize(ev_t_.size() * 2 + 64);
            ev_p_.resize(ev_t_.size());
        }
    }

    // Sift entry (t, p) down from the root; the caller has conceptually
    // removed slot 0.
    void heap_place_from_root(double t, std::uint64_t p) {
        double* __restrict kt = ev_t_.data();
        std::uint64_t* __restrict kp = ev_p_.data();
        const int size = ev_size_;
        int slot = 0;
        for (;;) {
            const int first = 4 * slot + 1;
            if (first >= size) break;
            int kid = first;
            const int end = first + 4 < size ? first + 4 : size;
            for (int k = first + 1; k < end; ++k)
                if (key_before(kt[k], kp[k], kt[kid], kp[kid])) kid = k;
            if (!key_before(kt[kid], kp[kid], t, p)) break;
            kt[slot] = kt[kid];
            kp[slot] = kp[kid];
            slot = kid;
        }
        kt[slot] = t;
        kp[slot] = p;
    }

    void heap_push(double t, std::uint32_t kind_id, std::uint32_t stamp) {
        heap_grow_if_full();
        const std::uint64_t payload =
            (std::uint64_t(stamp) << 32) | std::uint64_t(kind_id);
        double* __restrict kt = ev_t_.data();
        std::uint64_t* __restrict kp = ev_p_.data();
        int slot = ev_size_++;
        while (slot > 0) {
            const int up = (slot - 1) >> 2;
            if (!key_before(t, payload, kt[up], kp[up])) break;
            kt[slot] = kt[up];
            kp[slot] = kp[up];
            slot = up;
        }
        kt[slot] = t;
        kp[slot] = payload;
    }

    Event heap_pop() {
        const Event top{ev_t_[0], static_cast<std::uint32_t>(ev_p_[0]),
                        static_cast<std::uint32_t>(ev_p_[0] >> 32)};
        --ev_size_;
        if (ev_size_ > 0)
            heap_place_from_root(ev_t_[ev_size_], ev_p_[ev_size_]);
        return top;
    }

    // Replace the top event in place (reschedule without a separate push).
    void heap_replace_top(double t, std::uint32_t kind_id, std::uint32_t stamp) {
        heap_place_from_root(
            t, (std::uint64_t(stamp) << 32) | std::uint64_t(kind_id));
    }

    // ---------------- graph binding ----------------
    void bind(const Graph& g) {
        if (bound_uid_ == g.uid()) return;
        bound_uid_ = g.uid();
        bound_n_ = g.node_count();
        bound_m_ = g.edge_count();

        identity_usable_ = true;
        for (const Edge& e : g.edges())
            if (e.cost == 0.0) identity_usable_ = false;
        if (!identity_usable_) return;

        const int n = bound_n_, m = bound_m_;
        edge_u_.resize(m);
        edge_v_.resize(m);
        edge_cost_.resize(m);
        for (int i = 0; i < m; ++i) {
            edge_u_[i] = g.edges()[i].u;
            edge_v_[i] = g.edges()[i].v;
            edge_cost_[i] = g.edges()[i].cost;
        }
        // CSR adjacency for the revival walks
        adj_offset_.assign(n + 1, 0);
        for (int i = 0; i < m; ++i) {
            ++adj_offset_[edge_u_[i] + 1];
            ++adj_offset_[edge_v_[i] + 1];
        }
        for (int v = 0; v < n; ++v) adj_offset_[v + 1] += adj_offset_[v];
        adj_edge_.resize(2 * m);
        std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
        for (int i = 0; i < m; ++i) {
            adj_edge_[cursor[edge_u_[i]]++] = i;
            adj_edge_[cursor[edge_v_[i]]++] = i;
        }
    }

    void init_identity(const DenseVector& prizes, double cost_scale) {
        identity_ = true;
        n_ = bound_n_;
        m_ = bound_m_;
        scale_ = cost_scale;
        prize_ = prizes.data();
        su_ = edge_u_.data();
        sv_ = edge_v_.data();
        cost_ = edge_cost_.data();
        aoff_ = adj_offset_.data();
        aedge_ = adj_edge_.data();
        init_state();
    }

    void init_contracted(const Graph& g, const DenseVector& prizes,
                         double cost_scale) {
        identity_ = false;
        scale_ = 1.0;  // costs are pre-scaled below
        const int p = g.node_count();
        UnionFind uf(p);
        group_tree_edges_.clear();
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.edges()[ei];
            if (cost_scale * e.cost == 0.0 && uf.unite(e.u, e.v))
                group_tree_edges_.push_back(ei);
        }
        super_of_.assign(p, -1);
        int n = 0;
        for (int v = 0; v < p; ++v)
            if (uf.find(v) == v) super_of_[v] = n++;
        for (int v = 0; v < p; ++v) super_of_[v] = super_of_[uf.find(v)];

        super_prize_store_.assign(n, 0.0);
        for (int v = 0; v < p; ++v) super_prize_store_[super_of_[v]] += prizes[v];
        prize_ = super_prize_store_.data();

        cedge_u_.clear();
        cedge_v_.clear();
        cedge_cost_.clear();
        cedge_orig_.clear();
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.edges()[ei];
            const double c = cost_scale * e.cost;
            if (c == 0.0) continue;
            const int su = super_of_[e.u], sv = super_of_[e.v];
            if (su == sv) continue;
            cedge_u_.push_back(su);
            cedge_v_.push_back(sv);
            cedge_cost_.push_back(c);
            cedge_orig_.push_back(ei);
        }
        const int m = static_cast<int>(cedge_u_.size());
        n_ = n;
        m_ = m;
        su_ = cedge_u_.data();
        sv_ = cedge_v_.data();
        cost_ = cedge_cost_.data();

        cadj_offset_.assign(n + 1, 0);
        for (int i = 0; i < m; ++i) {
            ++cadj_offset_[cedge_u_[i] + 1];
            ++cadj_offset_[cedge_v_[i] + 1];
        }
        for (int v = 0; v < n; ++v) cadj_offset_[v + 1] += cadj_offset_[v];
        cadj_edge_.resize(2 * m);
        std::vector<int> cursor(cadj_offset_.begin(), cadj_offset_.end() - 1);
        for (int i = 0; i < m; ++i) {
            cadj_edge_[cursor[cedge_u_[i]]++] = i;
            cadj_edge_[cursor[cedge_v_[i]]++] = i;
        }
        aoff_ = cadj_offset_.data();
        aedge_ = cadj_edge_.data();
        init_state();
    }

    double scaled_cost(int e) const { return identity_ ? cost_[e] * scale_ : cost_[e]; }

    int edge_orig(int e) const { return identity_ ? e : cedge_orig_[e]; }

    void init_state() {
        const int n = n_, m = m_;
        clusters_.clear();
        clusters_.reserve(2 * n);
        off_.assign(2 * n, 0.0);
        node_next_.assign(n, -1);
        if (static_cast<int>(stamp_.size()) < m) stamp_.assign(m, 0);
        heap_reserve(static_cast<std::size_t>(n) + 2 * m + 64);
        ev_size_ = 0;
        active_count_ = 0;
        for (int v = 0; v < n; ++v) {
            Cluster c;
            c.formed_at = 0.0;
            c.stalled_at = 0.0;
            c.prize = prize_[v];
            c.deadline = c.prize;
            c.spent = 0.0;
            c.parent = v;
            c.size = 1;
            c.node_head = c.node_tail = v;
            c.child1 = c.child2 = c.via_edge = -1;
            // zero-prize clusters can never grow; skipping their zero-length
            // active phase changes no event outcome
            c.active = c.prize > 0.0;
            clusters_.push_back(c);
            if (c.active) {
                ++active_count_;
                ev_t_[ev_size_] = c.deadline;
                ev_p_[ev_size_++] = std::uint64_t(kDeactBit | std::uint32_t(v));
            }
        }
        for (int e = 0; e < m; ++e) {
            const int rate = (clusters_[su_[e]].active ? 1 : 0) +
                             (clusters_[sv_[e]].active ? 1 : 0);
            if (rate == 0) continue;  // rediscovered if an endpoint revives
            ev_t_[ev_size_] = scaled_cost(e) / rate;
            ev_p_[ev_size_++] =
                (std::uint64_t(++stamp_[e]) << 32) | std::uint64_t(e);
        }
        // heapify
        double* __restrict kt = ev_t_.data();
        std::uint64_t* __restrict kp = ev_p_.data();
        const int size = ev_size_;
        for (int i = (size - 2) / 4; i >= 0; --i) {
            const double t = kt[i];
            const std::uint64_t p = kp[i];
            int slot = i;
            for (;;) {
                const int first = 4 * slot + 1;
                if (first >= size) break;
                int kid = first;
                const int end = first + 4 < size ? first + 4 : size;
                for (int k = first + 1; k < end; ++k)
                    if (key_before(kt[k], kp[k], kt[kid], kp[kid])) kid = k;
                if (!key_before(kt[kid], kp[kid], t, p)) break;
                kt[slot] = kt[kid];
                kp[slot] = kp[kid];
                slot = kid;
            }
            kt[slot] = t;
            kp[slot] = p;
        }
    }

    // Schedule edge e as seen at time t; no entry when the edge is internal
    // or neither side grows.
    void schedule_edge(int e, double t) {
        double bu, bv;
        const int ru = find_base(su_[e], bu);
        const int rv = find_base(sv_[e], bv);
        if (ru == rv) return;
        const int rate =
            (clusters_[ru].active ? 1 : 0) + (clusters_[rv].active ? 1 : 0);
        if (rate == 0) return;
        const double slack = scaled_cost(e) - (bu + growth(clusters_[ru], t)) -
                             (bv + growth(clusters_[rv], t));
        heap_push(t + std::max(0.0, slack) / rate, std::uint32_t(e), ++stamp_[e]);
    }

    // ---------------- moat growth ----------------
    void drop_top() {
        --ev_size_;
        if (ev_size_ > 0) heap_place_from_root(ev_t_[ev_size_], ev_p_[ev_size_]);
    }

    void grow(int target_components) {
        while (active_count_ > target_components && ev_size_ > 0) {
            const double t = ev_t_[0];
            const std::uint64_t p = ev_p_[0];
            const std::uint32_t kind_id = static_cast<std::uint32_t>(p);
            if (kind_id & kDeactBit) {
                drop_top();
                const int c = static_cast<int>(kind_id & ~kDeactBit);
                Cluster& cl = clusters_[c];
                if (cl.parent != c || !cl.active || cl.deadline != t) continue;
                cl.active = false;
                cl.stalled_at = t;
                --active_count_;
                continue;
            }
            const int e = static_cast<int>(kind_id);
            if (static_cast<std::uint32_t>(p >> 32) != stamp_[e]) {
                drop_top();
                continue;
            }
            double bu, bv;
            const int ru = find_base(su_[e], bu);
            const int rv = find_base(sv_[e], bv);
            if (ru == rv) {
                drop_top();
                continue;
            }
            const double slack = scaled_cost(e) -
                                 (bu + growth(clusters_[ru], t)) -
                                 (bv + growth(clusters_[rv], t));
            if (slack <= kTightEps) {
                drop_top();
                merge(ru, rv, t, e);
            } else {
                // a deactivation stretched the meeting time; re-derive in place
                const int rate = (clusters_[ru].active ? 1 : 0) +
                                 (clusters_[rv].active ? 1 : 0);
                if (rate > 0)
                    heap_replace_top(t + slack / rate, std::uint32_t(e),
                                     ++stamp_[e]);
                else
                    drop_top();
            }
        }
    }

    void merge(int a, int b, double t, int via_edge) {
        // keeper: the side whose per-node duals stay untouched
        int keep = a, drop = b;
        if (clusters_[b].size > clusters_[a].size ||
            (clusters_[b].size == clusters_[a].size && b < a))
            std::swap(keep, drop);
        Cluster& ck = clusters_[keep];
        Cluster& cd = clusters_[drop];
        const double growth_k = growth(ck, t);
        const double growth_d = growth(cd, t);
        const bool revived_keep = !ck.active;
        const bool revived_drop = !cd.active;

        Cluster merged;
        merged.formed_at = t - growth_k;
        merged.stalled_at = 0.0;
        merged.prize = ck.prize + cd.prize;
        merged.spent = ck.spent + cd.spent + growth_k + growth_d;
        merged.deadline = t + std::max(0.0, merged.prize - merged.spent);
        merged.size = ck.size + cd.size;
        merged.child1 = a;
        merged.child2 = b;
        merged.via_edge = via_edge;
        merged.active = true;

        merged.node_head = ck.node_head;
        node_next_[ck.node_tail] = cd.node_head;
        merged.node_tail = cd.node_tail;

        const int id = static_cast<int>(clusters_.size());
        merged.parent = id;
        if (ck.active && cd.active) --active_count_;
        const int revived_head = revived_keep ? ck.node_head
                                : revived_drop ? cd.node_head
                                               : -1;
        const int revived_tail = revived_keep ? ck.node_tail
                                : revived_drop ? cd.node_tail
                                               : -1;
        ck.parent = id;
        cd.parent = id;
        if (static_cast<int>(off_.size()) <= id) off_.resize(id + 1, 0.0);
        off_[keep] = 0.0;
        off_[drop] = growth_d - growth_k;  // dropped side joins the keeper clock
        off_[id] = 0.0;
        clusters_.push_back(merged);
        heap_push(merged.deadline, kDeactBit | std::uint32_t(id), 0);

        // a revived side resumes growing, so the meetings frozen on its
        // boundary move earlier; re-derive them now
        if (revived_head >= 0) {
            int x = revived_head;
            for (;;) {
                for (int s = aoff_[x]; s < aoff_[x + 1]; ++s)
                    schedule_edge(aedge_[s], t);
                if (x == revived_tail) break;
                x = node_next_[x];
            }
        }
    }

    // ---------------- pruning and output assembly ----------------
    struct Candidate {
        double net;
        int min_node;
        int root;
    };

    struct AdjSlot {
        int to;
        int edge_slot;
        int next;
    };

    // Collect the merge-tree leaves (supernodes) and edges under root c into
    // comp_nodes_ / comp_edges_.
    void walk_component(int c) {
        comp_nodes_.clear();
        comp_edges_.clear();
        walk_stack_.clear();
        walk_stack_.push_back(c);
        while (!walk_stack_.empty()) {
            const int x = walk_stack_.back();
            walk_stack_.pop_back();
            if (clusters_[x].via_edge >= 0) {
                comp_edges_.push_back(clusters_[x].via_edge);
                walk_stack_.push_back(clusters_[x].child1);
                walk_stack_.push_back(clusters_[x].child2);
            } else {
                comp_nodes_.push_back(x);  // singleton cluster id == supernode
            }
        }
    }

    Forest assemble(const Graph& g, int target_components) {
        candidates_.clear();
        for (int c = 0; c < static_cast<int>(clusters_.size()); ++c) {
            if (clusters_[c].parent != c) continue;
            if (clusters_[c].via_edge < 0) {
                // singleton component: nothing to peel
                candidates_.push_back({prize_[c], c, c});
                continue;
            }
            walk_component(c);
            peel();
            double net = 0.0;
            int min_node = n_;
            for (int v : comp_nodes_)
                if (!peel_removed_[v]) {
                    net += prize_[v];
                    min_node = std::min(min_node, v);
                }
            for (int i = 0; i < static_cast<int>(comp_edges_.size()); ++i)
                if (!edge_removed_[i]) net -= scaled_cost(comp_edges_[i]);
            candidates_.push_back({net, min_node, c});
        }

        const auto better = [](const Candidate& a, const Candidate& b) {
            if (a.net != b.net) return a.net > b.net;
            return a.min_node < b.min_node;
        };
        const int want = std::min<int>(target_components,
                                       static_cast<int>(candidates_.size()));
        if (want == 1) {
            Candidate best = candidates_[0];
            for (const Candidate& cand : candidates_)
                if (better(cand, best)) best = cand;
            candidates_.assign(1, best);
        } else {
            if (want < static_cast<int>(candidates_.size())) {
                std::nth_element(candidates_.begin(),
                                 candidates_.begin() + (want - 1),
                                 candidates_.end(), better);
                candidates_.resize(want);
            }
            std::sort(candidates_.begin(), candidates_.end(), better);
        }

        Forest out;
        keep_super_.assign(n_, 0);
        for (const Candidate& cand : candidates_) {
            if (cand.net <= kTightEps) break;
            if (clusters_[cand.root].via_edge < 0) {
                keep_super_[cand.root] = 1;
                continue;
            }
            walk_component(cand.root);
            peel();
            for (int v : comp_nodes_)
                if (!peel_removed_[v]) keep_super_[v] = 1;
            for (int i = 0; i < static_cast<int>(comp_edges_.size()); ++i)
                if (!edge_removed_[i])
                    out.edges.push_back(edge_orig(comp_edges_[i]));
        }

        if (identity_) {
            for (int v = 0; v < n_; ++v)
                if (keep_super_[v]) out.nodes.push_back(v);
        } else {
            // expand contracted supernodes and re-add the zero-cost spanning
            // edges inside each kept group
            for (int v = 0; v < g.node_count(); ++v)
                if (keep_super_[super_of_[v]]) out.nodes.push_back(v);
            for (int ei : group_tree_edges_) {
                const Edge& e = g.edges()[ei];
                if (keep_super_[super_of_[e.u]]) out.edges.push_back(ei);
            }
        }
        std::sort(out.edges.begin(), out.edges.end());
        return out;
    }

    // Iteratively delete leaf subtrees that cost more than the prize they
    // keep. Marks peel_removed_ over comp_nodes_ and edge_removed_ over
    // comp_edges_ slots.
    void peel() {
        if (static_cast<int>(peel_degree_.size()) < n_) {
            peel_degree_.assign(n_, 0);
            peel_removed_.assign(n_, 0);
            peel_adj_head_.assign(n_, -1);
        }
        for (int v : comp_nodes_) {
            peel_degree_[v] = 0;
            peel_removed_[v] = 0;
            peel_adj_head_[v] = -1;
        }
        peel_adj_.clear();
        edge_removed_.assign(comp_edges_.size(), 0);
        for (int i = 0; i < static_cast<int>(comp_edges_.size()); ++i) {
            const int e = comp_edges_[i];
            const int u = su_[e], v = sv_[e];
            peel_adj_.push_back({v, i, peel_adj_head_[u]});
            peel_adj_head_[u] = static_cast<int>(peel_adj_.size()) - 1;
            peel_adj_.push_back({u, i, peel_adj_head_[v]});
            peel_adj_head_[v] = static_cast<int>(peel_adj_.size()) - 1;
            ++peel_degree_[u];
            ++peel_degree_[v];
        }
        peel_frontier_.clear();
        for (int v : comp_nodes_)
            if (peel_degree_[v] == 1) peel_frontier_.push_back(v);
        while (!peel_frontier_.empty()) {
            const int v = peel_frontier_.back();
            peel_frontier_.pop_back();
            if (peel_removed_[v] || peel_degree_[v] != 1) continue;
            int live_slot = -1;
            for (int s = peel_adj_head_[v]; s >= 0; s = peel_adj_[s].next) {
                if (!edge_removed_[peel_adj_[s].edge_slot] &&
                    !peel_removed_[peel_adj_[s].to]) {
                    live_slot = s;
                    break;
                }
            }
            if (live_slot < 0) continue;
            const int edge_slot = peel_adj_[live_slot].edge_slot;
            const double cost = scaled_cost(comp_edges_[edge_slot]);
            if (prize_[v] < cost - kTightEps) {
                peel_removed_[v] = 1;
                peel_degree_[v] = 0;
                edge_removed_[edge_slot] = 1;
                const int to = peel_adj_[live_slot].to;
                if (--peel_degree_[to] == 1) peel_frontier_.push_back(to);
            }
        }
    }

    // graph binding
    std::uint64_t bound_uid_ = 0;
    int bound_n_ = 0, bound_m_ = 0;
    bool identity_usable_ = false;
    std::vector<int> edge_u_, edge_v_;
    std::vector<double> edge_cost_;
    std::vector<int> adj_offset_, adj_edge_;

    // per-solve instance view
    bool identity_ = true;
    int n_ = 0, m_ = 0;
    double scale_ = 1.0;
    const double* prize_ = nullptr;
    const int* su_ = nullptr;
    const int* sv_ = nullptr;
    const double* cost_ = nullptr;
    const int* aoff_ = nullptr;
    const int* aedge_ = nullptr;
    std::vector<double> super_prize_store_;
    std::vector<int> super_of_, group_tree_edges_;
    std::vector<int> cedge_u_, cedge_v_, cedge_orig_;
    std::vector<double> cedge_cost_;
    std::vector<int> cadj_offset_, cadj_edge_;

    // growth state
    std::vector<Cluster> clusters_;
    std::vector<double> off_;
    std::vector<int> path_;
    std::vector<int> node_next_;
    std::vector<std::uint32_t> stamp_;
    std::vector<double> ev_t_;
    std::vector<std::uint64_t> ev_p_;
    int ev_size_ = 0;
    int active_count_ = 0;

    // pruning buffers
    std::vector<int> comp_nodes_, comp_edges_, walk_stack_;
    std::vector<Candidate> candidates_;
    std::vector<int> peel_degree_, peel_adj_head_, peel_frontier_;
    std::vector<char> peel_removed_, edge_removed_;
    std::vector<AdjSlot> peel_adj_;
    std::vector<char> keep_super_;
};

inline Forest solve_pcst(const Graph& g, const DenseVector& prizes,
                         int target_components = 1, double cost_scale = 1.0) {
    PcstSolver solver;
    return solver.solve(g, prizes, target_components, cost_scale);
}

inline Forest solve_pcst(const PcstInstance& instance) {
    instance.validate();
    PcstSolver solver;
    return solver.solve(instance.graph, instance.prizes,
                        instance.target_components, instance.cost_scale);
}

// Exact minimizer by exhaustive subset enumeration; ties prefer smaller then
// lexicographically earlier node sets.
inline Forest brute_force_pcst(const Graph& g, const DenseVector& prizes,
                               int target_components, double cost_scale = 1.0) {
    const int p = g.node_count();
    if (p > 12)
        throw std::invalid_argument(
            "brute_force_pcst: refusing graphs with more than 12 nodes");
    if (static_cast<int>(prizes.size()) != p)
        throw std::invalid_argument("brute_force_pcst: prize length mismatch");
    if (target_components < 1)
        throw std::invalid_argument("brute_force_pcst: target_components must be >= 1");

    double total_prize = 0.0;
    for (double z : prizes) total_prize += z;

    Forest best;                       // empty forest
    double best_obj = total_prize;
    int best_size = 0;

    for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
        Support s;
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i)) s.push_back(i);
        detail::InducedForest f = detail::induced_spanning_forest(g, s);
        if (f.component_count > target_components) continue;
        double obj = cost_scale * f.forest_cost;
        for (int i = 0; i < p; ++i)
            if (!(mask & (1u << i))) obj += prizes[i];
        const int size = static_cast<int>(s.size());
        const bool better =
            obj < best_obj ||
            (obj == best_obj &&
             (size < best_size || (size == best_size && s < best.nodes)));
        if (better) {
            best_obj = obj;
            best_size = size;
            best.nodes = std::move(s);
            best.edges = std::move(f.forest_edges);
        }
    }
    return best;
}

}  // namespace graphda
