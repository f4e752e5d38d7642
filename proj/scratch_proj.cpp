// throwaway dev harness: projection-level timing on realistic inputs
#include <chrono>
#include <iostream>
#include <random>

#include "graphda/graphda.hpp"

using namespace graphda;

int main() {
    Graph grid = build_grid_graph(33, 33, 1.0);
    const int p = grid.node_count();
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd(0.0, 1.0);

    // s-bar-like input: noise ~ N(0, 0.05^2) everywhere, signal -0.075 on a
    // connected 26-node blob (mu/4 scale after ~400 averaged gradients)
    Support f = gen_connected_subgraph(grid, 26, 42);
    DenseVector sbar(p);
    for (double& v : sbar) v = 0.05 * nd(rng);
    for (int i : f) sbar[i] -= 0.075;

    PcstSolver solver;
    // head timing
    {
        auto cfg = ProjectionConfig::head_defaults(p);
        auto t0 = std::chrono::steady_clock::now();
        const int reps = 50;
        std::size_t acc = 0;
        for (int i = 0; i < reps; ++i) {
            Projection h = model_project(sbar, grid, cfg, &solver);
            acc += h.support.size();
        }
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count() / reps;
        std::cout << "head: " << ms << " ms/projection, |H| = " << acc / reps << "\n";
    }
    // tail timing (input = head output scaled)
    {
        auto hcfg = ProjectionConfig::head_defaults(p);
        Projection h = model_project(sbar, grid, hcfg, &solver);
        DenseVector target = scaled(h.vector, -20.0 / 100.0);
        auto cfg = ProjectionConfig::tail_defaults(26, p);
        auto t0 = std::chrono::steady_clock::now();
        const int reps = 50;
        std::size_t acc = 0;
        for (int i = 0; i < reps; ++i) {
            Projection t = model_project(target, grid, cfg, &solver);
            acc += t.support.size();
        }
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count() / reps;
        std::cout << "tail: " << ms << " ms/projection, |T| = " << acc / reps << "\n";
    }
    // one full graphda step timing over a short stream
    {
        HyperParams hp;
        hp.sparsity = 26;
        hp.gamma = 100.0;
        hp.budget = 25;
        GroundTruth truth;
        truth.support = f;
        truth.wstar.assign(p, 0.0);
        for (int i : f) truth.wstar[i] = 0.3;
        auto samples = gen_classification_set(truth, 0.3, 100, 99);
        auto t0 = std::chrono::steady_clock::now();
        StreamTrajectory traj = run_stream(LearnerKind::graphda, hp, &grid,
                                           std::span<const Sample>(samples),
                                           LossKind::logistic);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count();
        std::cout << "graphda 100 steps: " << ms << " ms (" << ms / 100
                  << " ms/step), F1 = "
                  << feature_metrics(traj.w_final, truth.wstar).f1 << "\n";
    }
    return 0;
}
