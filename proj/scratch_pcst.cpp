// throwaway dev harness: GW vs brute force + timing; not part of the build
#include <chrono>
#include <iostream>
#include <random>

#include "graphda/graphda.hpp"

using namespace graphda;

int main(int argc, char** argv) {
    const int instances = argc > 1 ? std::atoi(argv[1]) : 2000;
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    int violations = 0, worst_idx = -1;
    double worst_ratio = 0.0;
    PcstSolver solver;
    for (int it = 0; it < instances; ++it) {
        const int p = 2 + static_cast<int>(unif(rng) * 9);  // 2..10
        std::vector<Edge> edges;
        for (int u = 0; u < p; ++u)
            for (int v = u + 1; v < p; ++v)
                if (unif(rng) < 0.45)
                    edges.push_back({u, v, 1.0 + 4.0 * unif(rng)});
        Graph g(p, edges);
        DenseVector prizes(p);
        for (double& z : prizes) z = unif(rng) < 0.2 ? 0.0 : 4.0 * unif(rng);
        const int target_g = 1 + (it % 3);

        Forest f = solver.solve(g, prizes, target_g, 1.0);
        // validity
        UnionFind uf(p);
        int comps = static_cast<int>(f.nodes.size());
        std::vector<char> in(p, 0);
        for (int v : f.nodes) in[v] = 1;
        for (int ei : f.edges) {
            const Edge& e = g.edges()[ei];
            if (!in[e.u] || !in[e.v]) { std::cout << "BAD endpoint\n"; return 1; }
            if (!uf.unite(e.u, e.v)) { std::cout << "CYCLE\n"; return 1; }
            --comps;
        }
        if (!f.nodes.empty() && comps > target_g) {
            std::cout << "TOO MANY COMPONENTS: " << comps << " > " << target_g << "\n";
            return 1;
        }
        if (target_g == 1) {
            Forest opt = brute_force_pcst(g, prizes, 1, 1.0);
            const double got = pcst_objective(g, prizes, f, 1.0);
            const double best = pcst_objective(g, prizes, opt, 1.0);
            const double ratio = best > 1e-12 ? got / best : (got > 1e-9 ? 1e9 : 1.0);
            if (got > 2.0 * best + 1e-9) {
                ++violations;
                if (ratio > worst_ratio) { worst_ratio = ratio; worst_idx = it; }
            } else if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst_idx = it;
            }
        }
        // determinism
        Forest f2 = solver.solve(g, prizes, target_g, 1.0);
        if (f2.nodes != f.nodes || f2.edges != f.edges) {
            std::cout << "NONDETERMINISTIC at " << it << "\n";
            return 1;
        }
    }
    std::cout << "violations(>2x): " << violations << "  worst ratio: " << worst_ratio
              << " at " << worst_idx << "\n";

    // spec examples
    {
        Graph g2(2, {{0, 1, 1.0}});
        Forest f = solve_pcst(g2, {10.0, 10.0}, 1, 1.0);
        std::cout << "two-node cheap edge: nodes=" << f.nodes.size()
                  << " edges=" << f.edges.size() << "\n";
        Graph g3(3, {{0, 1, 1.0}, {1, 2, 1.0}});
        Forest fp = solve_pcst(g3, {5.0, 0.0, 5.0}, 1, 1.0);
        std::cout << "path g=1: nodes=" << fp.nodes.size()
                  << " edges=" << fp.edges.size()
                  << " obj=" << pcst_objective(g3, {5.0, 0.0, 5.0}, fp, 1.0) << "\n";
        Forest fp2 = solve_pcst(g3, {5.0, 0.0, 5.0}, 2, 1.0);
        std::cout << "path g=2: nodes=" << fp2.nodes.size()
                  << " edges=" << fp2.edges.size()
                  << " obj=" << pcst_objective(g3, {5.0, 0.0, 5.0}, fp2, 1.0) << "\n";
        Forest fz = solve_pcst(g3, {0.0, 0.0, 0.0}, 1, 1.0);
        std::cout << "zero prizes: nodes=" << fz.nodes.size() << "\n";
    }

    // timing on the experiment-scale grid
    {
        Graph grid = build_grid_graph(33, 33, 1.0);
        std::mt19937_64 r2(99);
        std::normal_distribution<double> nd(0.0, 1.0);
        DenseVector prizes(grid.node_count());
        double maxp = 0;
        for (double& z : prizes) { const double x = nd(r2); z = x * x; maxp = std::max(maxp, z); }
        PcstSolver s2;
        // warm
        for (int i = 0; i < 3; ++i) s2.solve(grid, prizes, 1, maxp / 8);
        const int reps = 400;
        auto t0 = std::chrono::steady_clock::now();
        std::size_t acc = 0;
        for (int i = 0; i < reps; ++i) {
            const double lam = maxp * std::pow(0.5, 1 + (i % 20));
            Forest f = s2.solve(grid, prizes, 1, lam);
            acc += f.nodes.size();
        }
        const double us = std::chrono::duration<double, std::micro>(
                              std::chrono::steady_clock::now() - t0)
                              .count() /
                          reps;
        std::cout << "grid33 PCST mean: " << us << " us (acc " << acc << ")\n";

        Graph grid64 = build_grid_graph(64, 64, 1.0);
        DenseVector prizes64(grid64.node_count());
        double maxp64 = 0;
        for (double& z : prizes64) { const double x = nd(r2); z = x * x; maxp64 = std::max(maxp64, z); }
        for (int i = 0; i < 3; ++i) s2.solve(grid64, prizes64, 1, maxp64 / 8);
        auto t1 = std::chrono::steady_clock::now();
        for (int i = 0; i < reps; ++i) {
            const double lam = maxp64 * std::pow(0.5, 1 + (i % 20));
            Forest f = s2.solve(grid64, prizes64, 1, lam);
            acc += f.nodes.size();
        }
        const double us64 = std::chrono::duration<double, std::micro>(
                                std::chrono::steady_clock::now() - t1)
                                .count() /
                            reps;
        std::cout << "grid64 PCST mean: " << us64 << " us (acc " << acc << ")\n";
    }
    return 0;
}
