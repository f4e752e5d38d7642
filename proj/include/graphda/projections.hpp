#pragma once

#include "graphda/pcst.hpp"

namespace graphda {

// Window and iteration budget for the cost-scaling binary search.
struct ProjectionConfig {
    int sparsity_low = 1;     // s_l
    int sparsity_high = 1;    // s_h
    int components = 1;       // g
    int max_iter = 20;
    double tolerance = 0.1;   // omega, used when deriving windows

    void validate(int node_count) const {
        if (sparsity_low < 1 || sparsity_low > sparsity_high ||
            sparsity_high > node_count)
            throw std::invalid_argument(
                "ProjectionConfig: need 1 <= s_l <= s_h <= p");
        if (components < 1)
            throw std::invalid_argument("ProjectionConfig: components must be >= 1");
        if (max_iter < 1)
            throw std::invalid_argument("ProjectionConfig: max_iter must be >= 1");
        if (tolerance < 0.0)
            throw std::invalid_argument("ProjectionConfig: tolerance must be >= 0");
    }

    // Head window: s_l = floor(p/2), s_h = ceil(s_l*(1+omega)).
    static ProjectionConfig head_defaults(int node_count, int components = 1,
                                          double omega = 0.1, int max_iter = 20) {
        ProjectionConfig cfg;
        cfg.sparsity_low = std::max(1, node_count / 2);
        cfg.sparsity_high = std::min(
            node_count,
            static_cast<int>(std::ceil(cfg.sparsity_low * (1.0 + omega))));
        cfg.sparsity_high = std::max(cfg.sparsity_high, cfg.sparsity_low);
        cfg.components = components;
        cfg.max_iter = max_iter;
        cfg.tolerance = omega;
        return cfg;
    }

    // Tail window: s_l = s, s_h = ceil(s*(1+omega)).
    static ProjectionConfig tail_defaults(int sparsity, int node_count,
                                          int components = 1, double omega = 0.1,
                                          int max_iter = 20) {
        ProjectionConfig cfg;
        cfg.sparsity_low = sparsity;
        cfg.sparsity_high = std::min(
            node_count, static_cast<int>(std::ceil(sparsity * (1.0 + omega))));
        cfg.sparsity_high = std::max(cfg.sparsity_high, cfg.sparsity_low);
        cfg.components = components;
        cfg.max_iter = max_iter;
        cfg.tolerance = omega;
        return cfg;
    }
};

struct Projection {
    Support support;
    DenseVector vector;
};

// Binary search over the edge-cost multiplier: prizes are the squared entries
// of w; each probe solves a prize-collecting forest and the search narrows
// until the forest size lands strictly inside (s_l, s_h) or the budget is
// spent, in which case the high-multiplier forest is returned.
inline Projection model_project(const DenseVector& w, const Graph& graph,
                                const ProjectionConfig& cfg,
                                PcstSolver* solver = nullptr) {
    const int p = graph.node_count();
    if (static_cast<int>(w.size()) != p)
        throw std::invalid_argument("model_project: vector length mismatch");
    cfg.validate(p);

    DenseVector prizes(w.size());
    double max_prize = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        prizes[i] = w[i] * w[i];
        max_prize = std::max(max_prize, prizes[i]);
    }
    if (max_prize == 0.0) return {Support{}, DenseVector(w.size(), 0.0)};

    PcstSolver local;
    PcstSolver& pcst = solver ? *solver : local;

    double lambda_low = 0.0;
    double lambda_high = max_prize;
    Forest at_lambda_high;          // forest from the probe that set lambda_high
    bool have_lambda_high = false;
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double lambda_mid = (lambda_low + lambda_high) / 2.0;
        Forest f = pcst.solve(graph, prizes, cfg.components, lambda_mid);
        const int size = static_cast<int>(f.nodes.size());
        if (cfg.sparsity_low < size && size < cfg.sparsity_high)
            return {f.nodes, restrict_to(w, f.nodes)};
        if (size > cfg.sparsity_high) {
            lambda_low = lambda_mid;
        } else {
            lambda_high = lambda_mid;
            at_lambda_high = std::move(f);
            have_lambda_high = true;
        }
    }
    if (!have_lambda_high)
        at_lambda_high = pcst.solve(graph, prizes, cfg.components, lambda_high);
    return {at_lambda_high.nodes, restrict_to(w, at_lambda_high.nodes)};
}

inline Projection head_project(const DenseVector& w, const Graph& graph,
                               int sparsity, int components = 1,
                               double omega = 0.1, int max_iter = 20,
                               PcstSolver* solver = nullptr) {
    if (sparsity < 1 || sparsity > graph.node_count())
        throw std::invalid_argument("head_project: need 1 <= s <= p");
    return model_project(
        w, graph,
        ProjectionConfig::head_defaults(graph.node_count(), components, omega,
                                        max_iter),
        solver);
}

inline Projection tail_project(const DenseVector& w, const Graph& graph,
                               int sparsity, int components = 1,
                               double omega = 0.1, int max_iter = 20,
                               PcstSolver* solver = nullptr) {
    if (sparsity < 1 || sparsity > graph.node_count())
        throw std::invalid_argument("tail_project: need 1 <= s <= p");
    return model_project(
        w, graph,
        ProjectionConfig::tail_defaults(sparsity, graph.node_count(), components,
                                        omega, max_iter),
        solver);
}

// The s indices of largest magnitude, ties to the lowest index. Exact head
// and tail projection for the model of all supports of size at most s.
inline Support exact_top_s(const DenseVector& w, int sparsity) {
    const int p = static_cast<int>(w.size());
    if (sparsity < 1 || sparsity > p)
        throw std::invalid_argument("exact_top_s: need 1 <= s <= p");
    Support idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    std::nth_element(idx.begin(), idx.begin() + (sparsity - 1), idx.end(),
                     [&](int a, int b) {
                         const double ma = std::abs(w[a]), mb = std::abs(w[b]);
                         if (ma != mb) return ma > mb;
                         return a < b;
                     });
    idx.resize(sparsity);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace graphda
