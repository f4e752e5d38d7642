// throwaway dev harness: find and dump the first invalid forest
#include <iostream>
#include <random>

#include "graphda/graphda.hpp"

using namespace graphda;

int main() {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    PcstSolver solver;
    for (int it = 0; it < 5000; ++it) {
        const int p = 2 + static_cast<int>(unif(rng) * 9);
        std::vector<Edge> edges;
        for (int u = 0; u < p; ++u)
            for (int v = u + 1; v < p; ++v)
                if (unif(rng) < 0.45) edges.push_back({u, v, 1.0 + 4.0 * unif(rng)});
        Graph g(p, edges);
        DenseVector prizes(p);
        for (double& z : prizes) z = unif(rng) < 0.2 ? 0.0 : 4.0 * unif(rng);
        const int target_g = 1 + (it % 3);

        Forest f = solver.solve(g, prizes, target_g, 1.0);
        std::vector<char> in(p, 0);
        for (int v : f.nodes) in[v] = 1;
        bool bad = false;
        for (int ei : f.edges) {
            const Edge& e = g.edges()[ei];
            if (!in[e.u] || !in[e.v]) bad = true;
        }
        if (bad) {
            std::cout << "FAIL at it=" << it << " p=" << p << " g=" << target_g << "\n";
            std::cout << "edges:";
            for (const Edge& e : g.edges())
                std::cout << " (" << e.u << "," << e.v << "," << e.cost << ")";
            std::cout << "\nprizes:";
            for (double z : prizes) std::cout << " " << z;
            std::cout << "\nforest nodes:";
            for (int v : f.nodes) std::cout << " " << v;
            std::cout << "\nforest edges:";
            for (int ei : f.edges)
                std::cout << " (" << g.edges()[ei].u << "," << g.edges()[ei].v << ")";
            std::cout << "\n";
            return 1;
        }
    }
    std::cout << "no failures\n";
    return 0;
}
