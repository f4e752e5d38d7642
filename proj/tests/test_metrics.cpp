#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "graphda/metrics.hpp"

using namespace graphda;

TEST_CASE("feature metrics") {
    SECTION("identical supports") {
        DenseVector wstar{0.0, 1.0, 2.0, 0.0};
        FeatureReport r = feature_metrics(wstar, wstar);
        CHECK(r.precision == 1.0);
        CHECK(r.recall == 1.0);
        CHECK(r.f1 == 1.0);
        CHECK(r.nonzero_ratio == 0.5);
    }
    SECTION("worked example") {
        const int p = 8;
        DenseVector wstar(p, 0.0), w(p, 0.0);
        for (int i : {1, 2, 3}) wstar[i] = 1.0;
        for (int i : {2, 3, 4, 5}) w[i] = 1.0;
        FeatureReport r = feature_metrics(w, wstar);
        CHECK(r.precision == Catch::Approx(0.5));
        CHECK(r.recall == Catch::Approx(2.0 / 3.0));
        CHECK(r.f1 == Catch::Approx(4.0 / 7.0));
        CHECK(r.nonzero_ratio == Catch::Approx(4.0 / 8.0));
    }
    SECTION("empty learned support") {
        DenseVector wstar{1.0, 0.0};
        FeatureReport r = feature_metrics(DenseVector(2, 0.0), wstar);
        CHECK(r.precision == 0.0);
        CHECK(r.recall == 0.0);
        CHECK(r.f1 == 0.0);
        CHECK(r.nonzero_ratio == 0.0);
    }
    SECTION("length mismatch") {
        CHECK_THROWS_AS(feature_metrics({1.0}, {1.0, 2.0}), std::invalid_argument);
    }
    SECTION("f1 is the harmonic mean when both parts are positive") {
        std::mt19937_64 rng(301);
        for (int trial = 0; trial < 100; ++trial) {
            const int p = 12;
            DenseVector a(p, 0.0), b(p, 0.0);
            for (int i = 0; i < p; ++i) {
                if (rng() & 1) a[i] = 1.0;
                if (rng() & 1) b[i] = 1.0;
            }
            FeatureReport r = feature_metrics(b, a);
            if (r.precision > 0.0 && r.recall > 0.0) {
                const double harmonic =
                    2.0 * r.precision * r.recall / (r.precision + r.recall);
                CHECK(r.f1 == Catch::Approx(harmonic).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("classification metrics") {
    SECTION("perfect separation") {
        ClassReport r = classification_metrics({2.0, -1.0, 3.0, -0.5},
                                               {1.0, -1.0, 1.0, -1.0});
        CHECK(r.accuracy == 1.0);
        CHECK(r.miss == 0);
        REQUIRE(r.auc.has_value());
        CHECK(*r.auc == 1.0);
    }
    SECTION("all-equal scores give midrank auc one half") {
        ClassReport r = classification_metrics({0.5, 0.5, 0.5, 0.5},
                                               {1.0, -1.0, 1.0, -1.0});
        REQUIRE(r.auc.has_value());
        CHECK(*r.auc == 0.5);
        // sign rule: all scores positive, predicted +1
        CHECK(r.miss == 2);
    }
    SECTION("four point hand count") {
        const std::vector<double> raw{0.9, 0.1, 0.8, 0.3};
        const std::vector<double> labels{1.0, -1.0, 1.0, -1.0};
        std::vector<double> shifted;
        for (double s : raw) shifted.push_back(s - 0.5);
        ClassReport r = classification_metrics(shifted, labels);
        CHECK(r.accuracy == 1.0);
        REQUIRE(r.auc.has_value());
        CHECK(*r.auc == 1.0);  // every positive outranks every negative
    }
    SECTION("sign of zero counts as negative") {
        ClassReport r = classification_metrics({0.0, 0.0}, {1.0, -1.0});
        CHECK(r.accuracy == 0.5);
        CHECK(r.miss == 1);
    }
    SECTION("accuracy and miss are complementary") {
        std::mt19937_64 rng(303);
        std::normal_distribution<double> nd;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 40;
            std::vector<double> scores, labels;
            for (int i = 0; i < n; ++i) {
                scores.push_back(nd(rng));
                labels.push_back((rng() & 1) ? 1.0 : -1.0);
            }
            ClassReport r = classification_metrics(scores, labels);
            CHECK(r.accuracy + static_cast<double>(r.miss) / n == Catch::Approx(1.0));
        }
    }
    SECTION("auc is invariant under strictly monotone transforms") {
        std::mt19937_64 rng(307);
        std::normal_distribution<double> nd;
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 25;
            std::vector<double> scores, labels;
            labels.push_back(1.0);
            labels.push_back(-1.0);
            scores.push_back(nd(rng));
            scores.push_back(nd(rng));
            for (int i = 2; i < n; ++i) {
                scores.push_back(nd(rng));
                labels.push_back((rng() & 1) ? 1.0 : -1.0);
            }
            const double base = *classification_metrics(scores, labels).auc;
            std::vector<double> mapped;
            for (double s : scores) mapped.push_back(2.0 * std::atan(s) + 7.0);
            CHECK(*classification_metrics(mapped, labels).auc ==
                  Catch::Approx(base).epsilon(1e-12));
            mapped.clear();
            for (double s : scores) mapped.push_back(std::exp(0.5 * s));
            CHECK(*classification_metrics(mapped, labels).auc ==
                  Catch::Approx(base).epsilon(1e-12));
        }
    }
    SECTION("single class leaves auc empty") {
        ClassReport r = classification_metrics({1.0, -2.0}, {1.0, 1.0});
        CHECK_FALSE(r.auc.has_value());
        CHECK(r.miss == 1);
    }
    SECTION("validation") {
        CHECK_THROWS_AS(classification_metrics({1.0}, {0.3}), std::invalid_argument);
        CHECK_THROWS_AS(classification_metrics({}, {}), std::invalid_argument);
        CHECK_THROWS_AS(classification_metrics({1.0}, {1.0, -1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("trial aggregation") {
    MeanStd ms = aggregate_trials({0.8, 1.0});
    CHECK(ms.mean == Catch::Approx(0.9));
    CHECK(ms.std == Catch::Approx(0.1));

    MeanStd single = aggregate_trials({0.42});
    CHECK(single.mean == 0.42);
    CHECK(single.std == 0.0);

    MeanStd twenty = aggregate_trials(std::vector<double>(20, 0.7));
    CHECK(twenty.mean == Catch::Approx(0.7));
    CHECK(twenty.std == 0.0);

    CHECK_THROWS_AS(aggregate_trials({}), std::invalid_argument);
}
