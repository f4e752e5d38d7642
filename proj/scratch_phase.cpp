// throwaway dev harness: phase cost isolation
#include <chrono>
#include <iostream>
#include <random>

#include "graphda/graphda.hpp"

using namespace graphda;

template <typename F>
double time_us(F&& f, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0)
               .count() / reps;
}

int main() {
    Graph grid = build_grid_graph(33, 33, 1.0);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd(0.0, 1.0);
    DenseVector prizes(grid.node_count());
    double maxp = 0;
    for (double& z : prizes) { double x = nd(rng); z = x * x; maxp = std::max(maxp, z); }

    PcstSolver s;
    s.solve(grid, prizes, 1, 1.0);  // warm/bind

    // init-only (g >= n: growth exits immediately; assemble over singletons)
    std::cout << "init+assemble(singletons): "
              << time_us([&] { s.solve(grid, prizes, 2000, maxp / 64); }, 2000) << " us\n";
    // cheap regime: huge lambda, everything deactivates, few fires
    std::cout << "large-lambda (tiny forest): "
              << time_us([&] { s.solve(grid, prizes, 1, maxp); }, 2000) << " us\n";
    // dense regime: tiny lambda, full merge cascade
    std::cout << "small-lambda (full merge): "
              << time_us([&] { s.solve(grid, prizes, 1, maxp / (1 << 20)); }, 2000)
              << " us\n";
    // middle
    std::cout << "mid-lambda: "
              << time_us([&] { s.solve(grid, prizes, 1, maxp / 256); }, 2000) << " us\n";
    for (int k : {2, 6, 10, 14, 18}) {
        const double lam = maxp * std::pow(0.5, k);
        Forest f = s.solve(grid, prizes, 1, lam);
        std::cout << "  lambda=maxp/2^" << k << " -> |F|=" << f.nodes.size() << "  "
                  << time_us([&] { s.solve(grid, prizes, 1, lam); }, 1000) << " us\n";
    }
    return 0;
}
