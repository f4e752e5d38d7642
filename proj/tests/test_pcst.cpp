#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "graphda/pcst.hpp"

using namespace graphda;

namespace {

Graph random_graph(std::mt19937_64& rng, int p, double edge_prob,
                   double max_cost) {
    std::uniform_real_distribution<double> unif;
    std::vector<Edge> edges;
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v)
            if (unif(rng) < edge_prob)
                edges.push_back({u, v, 1.0 + (max_cost - 1.0) * unif(rng)});
    return Graph(p, edges);
}

DenseVector random_prizes(std::mt19937_64& rng, int p) {
    std::uniform_real_distribution<double> unif;
    DenseVector prizes(p);
    for (double& z : prizes) z = unif(rng) < 0.2 ? 0.0 : 4.0 * unif(rng);
    return prizes;
}

void check_forest_valid(const Graph& g, const Forest& f, int target_components) {
    std::vector<char> in(g.node_count(), 0);
    for (int v : f.nodes) {
        REQUIRE(v >= 0);
        REQUIRE(v < g.node_count());
        REQUIRE(!in[v]);
        in[v] = 1;
    }
    UnionFind uf(g.node_count());
    int components = static_cast<int>(f.nodes.size());
    for (int ei : f.edges) {
        const Edge& e = g.edges()[ei];
        REQUIRE(in[e.u]);
        REQUIRE(in[e.v]);
        REQUIRE(uf.unite(e.u, e.v));  // acyclic
        --components;
    }
    if (!f.nodes.empty()) REQUIRE(components <= target_components);
    REQUIRE(static_cast<int>(f.edges.size()) ==
            static_cast<int>(f.nodes.size()) - components);
}

}  // namespace

TEST_CASE("pcst objective") {
    Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    DenseVector prizes{2.0, 3.0, 4.0};

    Forest empty;
    CHECK(pcst_objective(g, prizes, empty) == 9.0);

    Forest all{{0, 1, 2}, {0, 1}};
    CHECK(pcst_objective(g, prizes, all) == 2.0);
    CHECK(pcst_objective(g, prizes, all, 3.0) == 6.0);

    Graph pair(2, {{0, 1, 1.0}});
    Forest span{{0, 1}, {0}};
    CHECK(pcst_objective(pair, {10.0, 10.0}, span, 1.0) == 1.0);

    Forest bad{{0}, {0}};
    CHECK_THROWS_AS(pcst_objective(pair, {1.0, 1.0}, bad), std::invalid_argument);
    Forest cyclic{{0, 1, 2}, {0, 0}};
    CHECK_THROWS_AS(pcst_objective(g, prizes, cyclic), std::invalid_argument);
}

TEST_CASE("solver spec examples") {
    SECTION("zero prizes yield the empty forest") {
        Graph g = build_grid_graph(3, 3, 1.0);
        Forest f = solve_pcst(g, DenseVector(9, 0.0), 1, 1.0);
        CHECK(f.nodes.empty());
        CHECK(f.edges.empty());
    }
    SECTION("cheap edge joins two heavy prizes") {
        Graph g(2, {{0, 1, 1.0}});
        Forest f = solve_pcst(g, {10.0, 10.0}, 1, 1.0);
        CHECK(f.nodes == Support{0, 1});
        CHECK(f.edges.size() == 1);
    }
    SECTION("expensive edge stays within twice the optimum") {
        Graph g(2, {{0, 1, 5.0}});
        DenseVector prizes{1.0, 1.0};
        Forest f = solve_pcst(g, prizes, 1, 1.0);
        Forest opt = brute_force_pcst(g, prizes, 1);
        CHECK(pcst_objective(g, prizes, f) <=
              2.0 * pcst_objective(g, prizes, opt) + 1e-9);
    }
    SECTION("path with a free middle node") {
        Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
        DenseVector prizes{5.0, 0.0, 5.0};
        Forest f1 = solve_pcst(g, prizes, 1, 1.0);
        CHECK(f1.nodes == Support{0, 1, 2});
        CHECK(f1.edges.size() == 2);
        CHECK(pcst_objective(g, prizes, f1) == 2.0);

        Forest f2 = solve_pcst(g, prizes, 2, 1.0);
        CHECK(f2.nodes == Support{0, 2});
        CHECK(f2.edges.empty());
        CHECK(pcst_objective(g, prizes, f2) == 0.0);
    }
}

TEST_CASE("brute force oracle") {
    Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    SECTION("zero prizes") {
        Forest f = brute_force_pcst(g, DenseVector(3, 0.0), 1);
        CHECK(f.nodes.empty());
        CHECK(pcst_objective(g, DenseVector(3, 0.0), f) == 0.0);
    }
    SECTION("path") {
        Forest f = brute_force_pcst(g, {5.0, 0.0, 5.0}, 1);
        CHECK(f.nodes == Support{0, 1, 2});
        CHECK(pcst_objective(g, {5.0, 0.0, 5.0}, f) == 2.0);
        Forest f2 = brute_force_pcst(g, {5.0, 0.0, 5.0}, 2);
        CHECK(pcst_objective(g, {5.0, 0.0, 5.0}, f2) == 0.0);
    }
    SECTION("size guard") {
        CHECK_THROWS_AS(brute_force_pcst(build_grid_graph(4, 4), DenseVector(16, 1.0), 1),
                        std::invalid_argument);
    }
    SECTION("scale equivariance of the minimizer") {
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 30; ++trial) {
            Graph h = random_graph(rng, 7, 0.5, 5.0);
            DenseVector prizes = random_prizes(rng, 7);
            Forest a = brute_force_pcst(h, prizes, 1, 1.0);
            // scale costs and prizes by the same power of two
            std::vector<Edge> scaled_edges = h.edges();
            for (Edge& e : scaled_edges) e.cost *= 4.0;
            Graph h4(7, scaled_edges);
            DenseVector prizes4 = prizes;
            scale_in_place(prizes4, 4.0);
            Forest b = brute_force_pcst(h4, prizes4, 1, 1.0);
            CHECK(a.nodes == b.nodes);
        }
    }
}

TEST_CASE("solver output is always a valid forest") {
    std::mt19937_64 rng(37);
    PcstSolver solver;
    for (int trial = 0; trial < 150; ++trial) {
        const int p = 2 + static_cast<int>(rng() % 29);
        Graph g = random_graph(rng, p, 0.2, 5.0);
        DenseVector prizes = random_prizes(rng, p);
        const int target = 1 + static_cast<int>(trial % 3);
        Forest f = solver.solve(g, prizes, target, 1.0);
        check_forest_valid(g, f, target);
    }
}

TEST_CASE("growth and pruning stay within twice the optimum") {
    std::mt19937_64 rng(41);
    PcstSolver solver;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 2 + static_cast<int>(rng() % 9);
        Graph g = random_graph(rng, p, 0.45, 5.0);
        DenseVector prizes = random_prizes(rng, p);
        Forest f = solver.solve(g, prizes, 1, 1.0);
        Forest opt = brute_force_pcst(g, prizes, 1);
        CHECK(pcst_objective(g, prizes, f) <=
              2.0 * pcst_objective(g, prizes, opt) + 1e-9);
    }
}

TEST_CASE("solver is deterministic") {
    std::mt19937_64 rng(43);
    PcstSolver solver;
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 4 + static_cast<int>(rng() % 12);
        Graph g = random_graph(rng, p, 0.3, 3.0);
        DenseVector prizes = random_prizes(rng, p);
        Forest a = solver.solve(g, prizes, 1, 0.7);
        Forest b = solver.solve(g, prizes, 1, 0.7);
        PcstSolver fresh;
        Forest c = fresh.solve(g, prizes, 1, 0.7);
        CHECK(a.nodes == b.nodes);
        CHECK(a.edges == b.edges);
        CHECK(a.nodes == c.nodes);
        CHECK(a.edges == c.edges);
    }
}

TEST_CASE("zero-cost edges are contracted") {
    // 0 -(0)- 1 -(1)- 2 with a prize only on node 0: picking node 0 always
    // brings node 1 along for free
    Graph g(3, {{0, 1, 0.0}, {1, 2, 1.0}});
    Forest f = solve_pcst(g, {5.0, 0.0, 0.0}, 1, 1.0);
    CHECK(f.nodes == Support{0, 1});
    CHECK(f.edges == std::vector<int>{0});

    // cost_scale zero makes the whole graph free: one component spans
    Forest all = solve_pcst(g, {5.0, 0.0, 1.0}, 1, 0.0);
    CHECK(all.nodes == Support{0, 1, 2});
    CHECK(all.edges.size() == 2);
}

TEST_CASE("instance validation") {
    Graph g(2, {{0, 1, 1.0}});
    CHECK_THROWS_AS(solve_pcst(g, {1.0}, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_pcst(g, {1.0, -1.0}, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_pcst(g, {1.0, 1.0}, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_pcst(g, {1.0, 1.0}, 1, -2.0), std::invalid_argument);
}
