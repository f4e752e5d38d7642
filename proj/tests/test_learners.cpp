#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "graphda/learners.hpp"

using namespace graphda;

namespace {

DenseVector random_vector(std::mt19937_64& rng, int p, double sigma = 1.0) {
    std::normal_distribution<double> nd(0.0, sigma);
    DenseVector w(p);
    for (double& x : w) x = nd(rng);
    return w;
}

// central finite differences of the loss, the independent gradient oracle
DenseVector numeric_gradient(LossKind kind, const DenseVector& w,
                             const Sample& sample, double h = 1e-6) {
    DenseVector g(w.size());
    DenseVector probe = w;
    for (std::size_t i = 0; i < w.size(); ++i) {
        probe[i] = w[i] + h;
        const double up = loss_grad(kind, probe, sample).loss;
        probe[i] = w[i] - h;
        const double down = loss_grad(kind, probe, sample).loss;
        probe[i] = w[i];
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

double relative_error(const DenseVector& a, const DenseVector& b) {
    DenseVector d = a;
    axpy(d, -1.0, b);
    return norm(d) / std::max(1e-12, norm(b));
}

Graph cycle_graph(int p) {
    std::vector<Edge> edges;
    for (int i = 0; i < p; ++i) edges.push_back({i, (i + 1) % p, 1.0});
    return Graph(p, edges);
}

}  // namespace

TEST_CASE("logistic loss and gradient") {
    std::mt19937_64 rng(201);

    SECTION("zero model") {
        Sample s{{1.0, -2.0, 0.5}, 1.0};
        LossGrad lg = logistic_loss_grad(DenseVector(3, 0.0), s);
        CHECK(lg.loss == Catch::Approx(std::log(2.0)));
        CHECK(lg.grad[0] == Catch::Approx(-0.5 * 1.0));
        CHECK(lg.grad[1] == Catch::Approx(-0.5 * -2.0));
        CHECK(lg.grad[2] == Catch::Approx(-0.5 * 0.5));
    }
    SECTION("saturation does not overflow") {
        Sample s{{50.0}, 1.0};
        LossGrad lg = logistic_loss_grad({1.0}, s);
        CHECK(lg.loss < 1e-20);
        CHECK(std::abs(lg.grad[0]) < 1e-18);
        Sample neg{{50.0}, -1.0};
        LossGrad lg2 = logistic_loss_grad({1.0}, neg);
        CHECK(std::isfinite(lg2.loss));
        CHECK(lg2.loss == Catch::Approx(50.0));
    }
    SECTION("label validation") {
        CHECK_THROWS_AS(logistic_loss_grad({0.0}, Sample{{1.0}, 0.5}),
                        std::invalid_argument);
    }
    SECTION("finite differences") {
        for (int trial = 0; trial < 100; ++trial) {
            const int p = 5;
            DenseVector w = random_vector(rng, p, 0.4);
            Sample s{random_vector(rng, p), (rng() & 1) ? 1.0 : -1.0};
            LossGrad lg = logistic_loss_grad(w, s);
            CHECK(relative_error(numeric_gradient(LossKind::logistic, w, s),
                                 lg.grad) < 1e-6);
        }
    }
}

TEST_CASE("least squares loss and gradient") {
    std::mt19937_64 rng(203);
    SECTION("zero residual") {
        Sample s{{1.0, 2.0}, 5.0};
        LossGrad lg = least_squares_loss_grad({1.0, 2.0}, s);
        CHECK(lg.loss == 0.0);
        CHECK(lg.grad == DenseVector{0.0, 0.0});
    }
    SECTION("zero model") {
        Sample s{{1.0, -1.0}, 3.0};
        LossGrad lg = least_squares_loss_grad(DenseVector(2, 0.0), s);
        CHECK(lg.loss == 9.0);
        CHECK(lg.grad == DenseVector{-6.0, 6.0});
    }
    SECTION("finite differences") {
        for (int trial = 0; trial < 100; ++trial) {
            const int p = 5;
            DenseVector w = random_vector(rng, p, 0.4);
            Sample s{random_vector(rng, p), 2.0 * random_vector(rng, 1)[0]};
            LossGrad lg = least_squares_loss_grad(w, s);
            CHECK(relative_error(numeric_gradient(LossKind::least_squares, w, s),
                                 lg.grad) < 1e-6);
        }
    }
}

TEST_CASE("dual-averaging steps on the toy graph") {
    Graph toy = build_toy_graph();
    const ProjectionConfig head_cfg = ProjectionConfig::head_defaults(6);
    const ProjectionConfig tail_cfg = ProjectionConfig::tail_defaults(3, 6);
    DenseVector grad(6, 0.0);
    grad[0] = grad[1] = grad[4] = -1.0;  // connected triple {0,1,4}

    LearnerState state = LearnerState::zeros(6);
    graphda_step(state, grad, toy, head_cfg, tail_cfg, 1.0);
    CHECK(state.w == DenseVector(6, 0.0));  // first update stays at zero
    CHECK(state.t == 1);

    graphda_step(state, grad, toy, head_cfg, tail_cfg, 1.0);
    graphda_step(state, grad, toy, head_cfg, tail_cfg, 1.0);
    CHECK(support_of(state.w) == Support{0, 1, 4});
    for (int i : {0, 1, 4}) {
        CHECK(state.w[i] > 0.0);  // sign opposite to the averaged gradient
    }
}

TEST_CASE("da-iht steps") {
    SECTION("first update is zero, supports stay small") {
        std::mt19937_64 rng(207);
        LearnerState state = LearnerState::zeros(10);
        da_iht_step(state, random_vector(rng, 10), 3, 1.0);
        CHECK(state.w == DenseVector(10, 0.0));
        for (int k = 0; k < 10; ++k) {
            da_iht_step(state, random_vector(rng, 10), 3, 1.0);
            CHECK(support_of(state.w).size() <= 3);
        }
    }
    SECTION("stationary mean gradient recovers the enumeration argmax") {
        std::mt19937_64 rng(209);
        const Support truth{1, 3, 7};
        LearnerState state = LearnerState::zeros(10);
        for (int k = 0; k < 60; ++k) {
            DenseVector g = random_vector(rng, 10, 0.05);
            for (int i : truth) g[i] -= 1.0;
            da_iht_step(state, g, 3, 1.0);
        }
        DenseVector sbar = state.dual_sum;
        scale_in_place(sbar, 1.0 / static_cast<double>(state.t));
        // brute force over all 3-subsets of 10 coordinates
        double best = -1.0;
        Support best_support;
        for (int a = 0; a < 10; ++a)
            for (int b = a + 1; b < 10; ++b)
                for (int c = b + 1; c < 10; ++c) {
                    const double e = sbar[a] * sbar[a] + sbar[b] * sbar[b] +
                                     sbar[c] * sbar[c];
                    if (e > best) {
                        best = e;
                        best_support = {a, b, c};
                    }
                }
        CHECK(best_support == truth);
        CHECK(support_of(state.w) == truth);
    }
}

TEST_CASE("l1-rda steps") {
    SECTION("full shrinkage") {
        LearnerState state = LearnerState::zeros(3);
        l1_rda_step(state, {0.1, -0.2, 0.05}, 1.0, 1.0, 0.0);
        CHECK(state.w == DenseVector(3, 0.0));
    }
    SECTION("lambda = rho = 0 is plain dual averaging") {
        LearnerState state = LearnerState::zeros(2);
        l1_rda_step(state, {0.5, -1.0}, 0.0, 2.0, 0.0);
        // w = -(sqrt(1)/2) * gbar
        CHECK(state.w[0] == Catch::Approx(-0.25));
        CHECK(state.w[1] == Catch::Approx(0.5));
    }
    SECTION("worked shrinkage example") {
        LearnerState state = LearnerState::zeros(2);
        state.t = 3;
        state.dual_sum = {1.5, -0.3};
        // after the update: t = 4, gbar = (0.5, -0.1), lambda_t = 0.1 + 0.2/2 = 0.2
        l1_rda_step(state, {0.5, -0.1}, 0.1, 1.0, 0.2);
        CHECK(state.w[0] == Catch::Approx(-0.6));
        CHECK(state.w[1] == 0.0);
    }
}

TEST_CASE("adagrad steps") {
    SECTION("single unregularized step") {
        LearnerState state = LearnerState::zeros(2);
        adagrad_step(state, {2.0, -0.5}, 0.1, 0.0, 1e-8);
        CHECK(state.w[0] == Catch::Approx(-0.1 * 2.0 / (1e-8 + 2.0)));
        CHECK(state.w[1] == Catch::Approx(0.1 * 0.5 / (1e-8 + 0.5)));
    }
    SECTION("huge shrinkage zeroes the iterate") {
        LearnerState state = LearnerState::zeros(2);
        adagrad_step(state, {2.0, -0.5}, 0.1, 1e9, 1e-8);
        CHECK(state.w == DenseVector(2, 0.0));
    }
    SECTION("step magnitude shrinks as squared gradients accumulate") {
        LearnerState state = LearnerState::zeros(2);
        DenseVector g{0.7, -0.3};
        DenseVector prev = state.w;
        double last_step = std::numeric_limits<double>::max();
        for (int k = 0; k < 20; ++k) {
            adagrad_step(state, g, 0.05, 0.0, 1e-8);
            DenseVector delta = state.w;
            axpy(delta, -1.0, prev);
            const double step = std::abs(delta[0]);
            CHECK(step <= last_step + 1e-15);
            last_step = step;
            prev = state.w;
        }
    }
}

TEST_CASE("adam steps") {
    SECTION("zero gradients keep the model at zero") {
        LearnerState state = LearnerState::zeros(3);
        for (int k = 0; k < 5; ++k)
            adam_step(state, DenseVector(3, 0.0), 0.01, 0.9, 0.999, 1e-8);
        CHECK(state.w == DenseVector(3, 0.0));
    }
    SECTION("bias correction cancels on the first step") {
        LearnerState state = LearnerState::zeros(2);
        adam_step(state, {1.0, 0.0}, 0.25, 0.9, 0.999, 1e-8);
        CHECK(state.w[0] == Catch::Approx(-0.25).epsilon(1e-7));
        CHECK(state.w[1] == 0.0);
    }
    SECTION("constant gradient drives unit-rate steps") {
        LearnerState state = LearnerState::zeros(1);
        DenseVector g{0.5};
        DenseVector prev = state.w;
        double last_delta = 0.0;
        for (int k = 0; k < 1000; ++k) {
            adam_step(state, g, 0.01, 0.9, 0.999, 1e-8);
            last_delta = std::abs(state.w[0] - prev[0]);
            prev = state.w;
        }
        CHECK(last_delta == Catch::Approx(0.01).epsilon(1e-4));
    }
}

TEST_CASE("stoiht steps") {
    SECTION("zero gradient keeps a sparse iterate") {
        LearnerState state = LearnerState::zeros(4);
        state.w = {0.0, 2.0, 0.0, -1.0};
        stoiht_step(state, DenseVector(4, 0.0), 2, 0.5);
        CHECK(state.w == DenseVector{0.0, 2.0, 0.0, -1.0});
    }
    SECTION("support size is bounded and matches enumeration") {
        std::mt19937_64 rng(211);
        LearnerState state = LearnerState::zeros(10);
        for (int k = 0; k < 15; ++k) {
            DenseVector g = random_vector(rng, 10);
            DenseVector u = state.w;
            axpy(u, -0.3, g);
            stoiht_step(state, g, 4, 0.3);
            CHECK(support_of(state.w).size() <= 4);
            // best 4-sparse approximation of u by enumeration over magnitudes
            Support top = exact_top_s(u, 4);
            CHECK(state.w == restrict_to(u, top));
        }
    }
}

TEST_CASE("graphstoiht steps") {
    Graph toy = build_toy_graph();
    const ProjectionConfig head_cfg = ProjectionConfig::head_defaults(6);
    const ProjectionConfig tail_cfg = ProjectionConfig::tail_defaults(3, 6);

    SECTION("zero gradient and zero model stay at zero") {
        LearnerState state = LearnerState::zeros(6);
        graphstoiht_step(state, DenseVector(6, 0.0), toy, head_cfg, tail_cfg, 0.5);
        CHECK(state.w == DenseVector(6, 0.0));
    }
    SECTION("one step toward a connected signal") {
        LearnerState state = LearnerState::zeros(6);
        DenseVector g(6, 0.0);
        g[0] = g[1] = g[4] = -1.0;
        graphstoiht_step(state, g, toy, head_cfg, tail_cfg, 0.5);
        CHECK(support_of(state.w) == Support{0, 1, 4});
        CHECK(induced_component_count(toy, support_of(state.w)) == 1);
    }
}

TEST_CASE("iterates remain in the relaxed model") {
    Graph grid = build_grid_graph(5, 5, 1.0);
    const int s = 4;
    const ProjectionConfig head_cfg = ProjectionConfig::head_defaults(25);
    const ProjectionConfig tail_cfg = ProjectionConfig::tail_defaults(s, 25);
    WgmConfig relaxed{tail_cfg.sparsity_high, 1, 1e9};
    std::mt19937_64 rng(213);

    LearnerState da = LearnerState::zeros(25);
    LearnerState pgd = LearnerState::zeros(25);
    for (int k = 0; k < 8; ++k) {
        DenseVector g = random_vector(rng, 25);
        graphda_step(da, g, grid, head_cfg, tail_cfg, 10.0);
        graphstoiht_step(pgd, g, grid, head_cfg, tail_cfg, 0.2);
        CHECK(is_in_wgm(support_of(da.w), grid, relaxed));
        CHECK(is_in_wgm(support_of(pgd.w), grid, relaxed));
    }
}

TEST_CASE("dual-averaging supports are permutation covariant") {
    // rotation automorphism of the 6-cycle; sample entries are small integers,
    // so every inner product is exact and the two runs see identical floats
    const int p = 6;
    Graph cyc = cycle_graph(p);
    std::mt19937_64 rng(217);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::vector<Sample> stream;
    for (int k = 0; k < 12; ++k) {
        Sample s;
        s.x.resize(p);
        for (double& x : s.x) x = static_cast<double>(entry(rng));
        s.y = (rng() & 1) ? 1.0 : -1.0;
        stream.push_back(s);
    }
    auto rotate = [p](int i) { return (i + 1) % p; };
    std::vector<Sample> rotated = stream;
    for (Sample& s : rotated) {
        DenseVector x(p);
        for (int i = 0; i < p; ++i) x[rotate(i)] = s.x[i];
        s.x = x;
    }

    HyperParams hp;
    hp.sparsity = 3;
    hp.gamma = 5.0;
    for (LearnerKind kind :
         {LearnerKind::graphda, LearnerKind::da_iht, LearnerKind::l1_rda}) {
        const Graph* gptr = learner_needs_graph(kind) ? &cyc : nullptr;
        HyperParams local = hp;
        if (kind == LearnerKind::l1_rda) local.lambda = 0.05;
        StreamTrajectory base = run_stream(
            kind, local, gptr, std::span<const Sample>(stream), LossKind::logistic);
        StreamTrajectory rot = run_stream(kind, local, gptr,
                                          std::span<const Sample>(rotated),
                                          LossKind::logistic);
        Support expected;
        for (int i : support_of(base.w_final)) expected.push_back(rotate(i));
        std::sort(expected.begin(), expected.end());
        CHECK(support_of(rot.w_final) == expected);
    }
}

TEST_CASE("run_stream bookkeeping") {
    SECTION("empty stream") {
        HyperParams hp;
        StreamTrajectory traj =
            run_stream(LearnerKind::adam, hp, nullptr,
                       std::span<const Sample>(), LossKind::logistic);
        CHECK(traj.w_final.empty());
        CHECK(traj.miss_curve.empty());
    }
    SECTION("miss counts are cumulative and non-decreasing") {
        std::mt19937_64 rng(219);
        std::vector<Sample> stream;
        for (int k = 0; k < 30; ++k)
            stream.push_back({random_vector(rng, 4), (rng() & 1) ? 1.0 : -1.0});
        HyperParams hp;
        hp.alpha = 0.05;
        StreamTrajectory traj =
            run_stream(LearnerKind::adam, hp, nullptr,
                       std::span<const Sample>(stream), LossKind::logistic);
        REQUIRE(traj.miss_curve.size() == stream.size());
        for (std::size_t i = 1; i < traj.miss_curve.size(); ++i) {
            CHECK(traj.miss_curve[i] >= traj.miss_curve[i - 1]);
            CHECK(traj.miss_curve[i] <= traj.miss_curve[i - 1] + 1);
        }
    }
    SECTION("dimension mismatch") {
        std::vector<Sample> stream{{{1.0, 2.0}, 1.0}, {{1.0}, -1.0}};
        HyperParams hp;
        CHECK_THROWS_AS(run_stream(LearnerKind::adam, hp, nullptr,
                                   std::span<const Sample>(stream),
                                   LossKind::logistic),
                        std::invalid_argument);
    }
    SECTION("checkpoints capture the running average") {
        std::mt19937_64 rng(223);
        std::vector<Sample> stream;
        for (int k = 0; k < 10; ++k)
            stream.push_back({random_vector(rng, 3), (rng() & 1) ? 1.0 : -1.0});
        HyperParams hp;
        StreamTrajectory traj =
            run_stream(LearnerKind::adam, hp, nullptr,
                       std::span<const Sample>(stream), LossKind::logistic,
                       {5, 10});
        REQUIRE(traj.checkpoint_steps == std::vector<long>{5, 10});
        CHECK(traj.checkpoints_w.back() == traj.w_final);
        CHECK(traj.checkpoints_avg.back() == traj.w_avg);
    }
}
