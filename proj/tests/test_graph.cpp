#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "graphda/graph.hpp"

using namespace graphda;

TEST_CASE("grid graph construction") {
    Graph g = build_grid_graph(33, 33, 1.0);
    CHECK(g.node_count() == 1089);
    CHECK(g.edge_count() == 2112);

    Graph one = build_grid_graph(1, 1, 1.0);
    CHECK(one.node_count() == 1);
    CHECK(one.edge_count() == 0);

    Graph sq = build_grid_graph(2, 2, 1.0);
    CHECK(sq.node_count() == 4);
    CHECK(sq.edge_count() == 4);

    Graph rect = build_grid_graph(3, 5, 0.5);
    CHECK(rect.edge_count() == 3 * 4 + 5 * 2);
    for (const Edge& e : rect.edges()) CHECK(e.cost == 0.5);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(2, {{0, 0, 1.0}}), std::invalid_argument);  // self-loop
    CHECK_THROWS_AS(Graph(2, {{0, 2, 1.0}}), std::invalid_argument);  // range
    CHECK_THROWS_AS(Graph(2, {{0, 1, -1.0}}), std::invalid_argument); // cost
    CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}),
                    std::invalid_argument);  // duplicate pair
}

TEST_CASE("toy graph shape") {
    Graph g = build_toy_graph();
    CHECK(g.node_count() == 6);
    CHECK(g.edge_count() == 7);
    for (const Edge& e : g.edges()) CHECK(e.cost == 1.0);
    CHECK(g.degree(3) == 3);

    // every node reachable from node 0
    std::vector<char> seen(6, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int ei : g.incident(v)) {
            const int n = g.other_endpoint(ei, v);
            if (!seen[n]) {
                seen[n] = 1;
                stack.push_back(n);
            }
        }
    }
    for (int v = 0; v < 6; ++v) CHECK(seen[v] == 1);
}

TEST_CASE("restrict_to") {
    CHECK(restrict_to({0.0, 0.0, 0.0}, {0, 2}) == DenseVector{0.0, 0.0, 0.0});
    CHECK(restrict_to({1.0, 2.0, 3.0}, {0, 2}) == DenseVector{1.0, 0.0, 3.0});
    CHECK(restrict_to({1.0, 2.0, 3.0}, {0, 1, 2}) == DenseVector{1.0, 2.0, 3.0});
    CHECK_THROWS_AS(restrict_to({1.0}, {3}), std::invalid_argument);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 50; ++trial) {
        DenseVector w(8);
        for (double& x : w) x = nd(rng);
        Support s;
        for (int i = 0; i < 8; ++i)
            if (rng() & 1) s.push_back(i);
        const DenseVector once = restrict_to(w, s);
        CHECK(restrict_to(once, s) == once);  // idempotent
    }
}

TEST_CASE("projection theorem identity") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 100; ++trial) {
        DenseVector w(10);
        for (double& x : w) x = nd(rng);
        Support s;
        for (int i = 0; i < 10; ++i)
            if (rng() & 1) s.push_back(i);
        const DenseVector pw = restrict_to(w, s);
        DenseVector residual = w;
        axpy(residual, -1.0, pw);
        const double lhs = squared_norm(w) - squared_norm(pw);
        const double rhs = squared_norm(residual);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("support_of") {
    CHECK(support_of({0.0, 0.5, 0.0, -0.1}) == Support{1, 3});
    CHECK(support_of({0.0, 0.0}).empty());
    CHECK(support_of({1e-12, 1.0}, 1e-9) == Support{1});
    CHECK_THROWS_AS(support_of({1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("weighted graph model membership") {
    Graph toy = build_toy_graph();
    WgmConfig cfg{3, 1, 3.0};
    CHECK(is_in_wgm({0, 1, 4}, toy, cfg));
    CHECK_FALSE(is_in_wgm({1, 4, 5}, toy, cfg));      // two components
    CHECK_FALSE(is_in_wgm({2, 3, 4, 5}, toy, cfg));   // too many nodes
    CHECK(is_in_wgm({}, toy, cfg));                    // empty support

    // budget binds: a 3-node path costs 2
    CHECK(is_in_wgm({0, 1, 2}, toy, WgmConfig{3, 1, 2.0}));
    CHECK_FALSE(is_in_wgm({0, 1, 2}, toy, WgmConfig{3, 1, 1.0}));
}

TEST_CASE("membership is monotone in sparsity and budget") {
    Graph toy = build_toy_graph();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Support s;
        for (int i = 0; i < 6; ++i)
            if (rng() & 1) s.push_back(i);
        const int sp = 1 + static_cast<int>(rng() % 6);
        const int comps = 1 + static_cast<int>(rng() % sp);
        const double budget = static_cast<double>(rng() % 5);
        WgmConfig cfg{sp, comps, budget};
        if (is_in_wgm(s, toy, cfg)) {
            CHECK(is_in_wgm(s, toy, WgmConfig{std::min(6, sp + 1), comps, budget}));
            CHECK(is_in_wgm(s, toy, WgmConfig{sp, comps, budget + 1.0}));
        }
    }
}

TEST_CASE("support enumeration") {
    Graph toy = build_toy_graph();
    const auto model = enumerate_model_supports(toy, WgmConfig{3, 1, 3.0});
    CHECK(std::find(model.begin(), model.end(), Support{0, 1, 4}) != model.end());

    // all singletons belong whenever s >= 1 and B >= 0
    for (int v = 0; v < 6; ++v)
        CHECK(std::find(model.begin(), model.end(), Support{v}) != model.end());

    const auto sparse1 = enumerate_model_supports(toy, WgmConfig{1, 1, 0.0});
    std::vector<Support> expected{{}, {0}, {1}, {2}, {3}, {4}, {5}};
    CHECK(sparse1.size() == expected.size());
    for (const Support& s : expected)
        CHECK(std::find(sparse1.begin(), sparse1.end(), s) != sparse1.end());

    CHECK_THROWS_AS(enumerate_model_supports(build_grid_graph(5, 5), WgmConfig{3, 1, 3.0}),
                    std::invalid_argument);
}

TEST_CASE("enumeration agrees with membership on every subset") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif;
    const int p = 8;
    std::vector<Edge> edges;
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v)
            if (unif(rng) < 0.4) edges.push_back({u, v, 1.0 + unif(rng)});
    Graph g(p, edges);
    WgmConfig cfg{4, 2, 3.5};
    const auto model = enumerate_model_supports(g, cfg);
    std::vector<char> in_model(1 << p, 0);
    for (const Support& s : model) {
        std::uint32_t mask = 0;
        for (int i : s) mask |= 1u << i;
        in_model[mask] = 1;
    }
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        Support s;
        for (int i = 0; i < p; ++i)
            if (mask & (1u << i)) s.push_back(i);
        CHECK(static_cast<bool>(in_model[mask]) == is_in_wgm(s, g, cfg));
    }
}
