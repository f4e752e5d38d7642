#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

#include "graphda/datagen.hpp"
#include "graphda/io.hpp"
#include "graphda/learners.hpp"
#include "graphda/metrics.hpp"

namespace graphda {

// ------------------------------ parameter grids ------------------------------

namespace grids {

inline const std::vector<double>& lambda_values() {
    static const std::vector<double> v = {0.0001, 0.0005, 0.001, 0.005, 0.01,
                                          0.03,   0.05,   0.1,   0.3,   0.5,
                                          1.0,    3.0,    5.0,   10.0};
    return v;
}

inline const std::vector<double>& gamma_values() {
    static const std::vector<double> v = {1.0,   5.0,    10.0,   50.0,  100.0,
                                          500.0, 1000.0, 5000.0, 10000.0};
    return v;
}

inline const std::vector<double>& rho_values() {
    static const std::vector<double> v = {0.0,    0.00001, 0.000005, 0.0001,
                                          0.0005, 0.001,   0.005,    0.01,
                                          0.05,   0.1,     0.5,      1.0};
    return v;
}

inline const std::vector<double>& adam_alpha_values() {
    static const std::vector<double> v = {0.0001, 0.0005, 0.001, 0.005,
                                          0.01,   0.05,   0.1,   0.5};
    return v;
}

inline const std::vector<double>& adagrad_eta_values() {
    static const std::vector<double> v = {0.0001, 0.0005, 0.001,  0.005, 0.01,
                                          0.05,   0.1,    0.5,    1.0,   5.0,
                                          10.0,   50.0,   100.0,  500.0,
                                          1000.0, 5000.0};
    return v;
}

inline const std::vector<int>& benchmark_sparsity_values() {
    static const std::vector<int> v = {5,   10,  15,  20,  25,  26,  30,  35,
                                       40,  45,  46,  50,  55,  60,  65,  70,
                                       75,  80,  85,  90,  92,  95,  100, 105,
                                       110, 115, 120, 125, 130, 132, 135, 140,
                                       145, 150};
    return v;
}

inline const std::vector<int>& mnist_sparsity_values() {
    static const std::vector<int> v = [] {
        std::vector<int> out;
        for (int s = 30; s <= 100; s += 2) out.push_back(s);
        return out;
    }();
    return v;
}

}  // namespace grids

// Cartesian hyperparameter grid for one learner; dual-averaging and IHT
// learners pair the given sparsity list with the shared gamma set.
inline std::vector<HyperParams> make_grid(LearnerKind kind,
                                          const std::vector<int>& sparsity_values,
                                          int dim, int components = 1) {
    std::vector<HyperParams> out;
    switch (kind) {
        case LearnerKind::graphda:
        case LearnerKind::graphstoiht:
        case LearnerKind::da_iht:
        case LearnerKind::stoiht:
            for (int s : sparsity_values) {
                if (s > dim) continue;
                for (double gamma : grids::gamma_values()) {
                    HyperParams hp;
                    hp.sparsity = s;
                    hp.gamma = gamma;
                    hp.components = components;
                    hp.budget = static_cast<double>(s - components);
                    out.push_back(hp);
                }
            }
            break;
        case LearnerKind::l1_rda:
            for (double lambda : grids::lambda_values())
                for (double gamma : grids::gamma_values())
                    for (double rho : grids::rho_values()) {
                        HyperParams hp;
                        hp.lambda = lambda;
                        hp.gamma = gamma;
                        hp.rho = rho;
                        out.push_back(hp);
                    }
            break;
        case LearnerKind::adagrad:
            for (double lambda : grids::lambda_values())
                for (double eta : grids::adagrad_eta_values()) {
                    HyperParams hp;
                    hp.lambda = lambda;
                    hp.eta = eta;
                    out.push_back(hp);
                }
            break;
        case LearnerKind::adam:
            for (double alpha : grids::adam_alpha_values()) {
                HyperParams hp;
                hp.alpha = alpha;
                out.push_back(hp);
            }
            break;
    }
    if (out.empty()) throw std::invalid_argument("make_grid: empty grid");
    return out;
}

// ------------------------------ data plumbing ------------------------------

// Sample container with an optional access log so tests can audit which
// splits an operation touched.
class SampleSet {
public:
    SampleSet() = default;
    explicit SampleSet(std::vector<Sample> samples) : samples_(std::move(samples)) {}

    std::size_t size() const { return samples_.size(); }

    const std::vector<Sample>& samples() const {
        if (log_) log_->fetch_add(1);
        return samples_;
    }

    void attach_access_log(std::shared_ptr<std::atomic<long>> log) {
        log_ = std::move(log);
    }

private:
    std::vector<Sample> samples_;
    std::shared_ptr<std::atomic<long>> log_;
};

struct TrialData {
    GroundTruth truth;
    SampleSet train;
    SampleSet validation;
    SampleSet test;
};

// ------------------------------ worker pool ------------------------------

// Runs fn(0..count-1) across up to `threads` workers. Units write only their
// own slots, so scheduling cannot change the result.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const int n = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (n == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ------------------------------ tuning ------------------------------

// Classification: accuracy of w on the held-out set. Regression: negative
// mean squared error. Higher is better.
inline double validation_score(const DenseVector& w, const SampleSet& validation,
                               LossKind loss) {
    const auto& samples = validation.samples();
    if (samples.empty()) throw std::invalid_argument("empty validation set");
    if (loss == LossKind::logistic) {
        long correct = 0;
        for (const Sample& s : samples) {
            const double pred = dot(w, s.x) > 0.0 ? 1.0 : -1.0;
            if (pred == s.y) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(samples.size());
    }
    double sse = 0.0;
    for (const Sample& s : samples) {
        const double r = s.y - dot(w, s.x);
        sse += r * r;
    }
    const double mse = sse / static_cast<double>(samples.size());
    return std::isfinite(mse) ? -mse : -std::numeric_limits<double>::infinity();
}

// One full training pass with the candidate parameters, scored on validation.
inline double run_grid_point(LearnerKind kind, const HyperParams& hp,
                             const Graph* graph, const SampleSet& train,
                             const SampleSet& validation, LossKind loss) {
    StreamTrajectory traj = run_stream(
        kind, hp, graph, std::span<const Sample>(train.samples()), loss);
    const double score = validation_score(traj.w_final, validation, loss);
    return std::isfinite(score) ? score
                                : -std::numeric_limits<double>::infinity();
}

struct TuneResult {
    HyperParams best;
    int best_index = 0;
    double best_score = 0.0;
    std::vector<double> scores;
};

// Ties keep the earliest grid point.
inline TuneResult select_best(const std::vector<HyperParams>& grid,
                              std::vector<double> scores) {
    if (grid.empty()) throw std::invalid_argument("tune: empty grid");
    int best = 0;
    for (int i = 1; i < static_cast<int>(scores.size()); ++i)
        if (scores[i] > scores[best]) best = i;
    return {grid[best], best, scores[best], std::move(scores)};
}

inline TuneResult tune(LearnerKind kind, const std::vector<HyperParams>& grid,
                       const Graph* graph, const SampleSet& train,
                       const SampleSet& validation, LossKind loss,
                       int threads = 1) {
    std::vector<double> scores(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        scores[i] = run_grid_point(kind, grid[i], graph, train, validation, loss);
    });
    return select_best(grid, std::move(scores));
}

// ------------------------------ experiments ------------------------------

struct ExperimentConfig {
    std::string dataset = "benchmark";  // benchmark | mnist-regression
    BenchmarkSpec bench;
    int trials = 20;
    std::uint64_t seed = 7;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::vector<LearnerKind> methods = {
        LearnerKind::adam,        LearnerKind::l1_rda, LearnerKind::adagrad,
        LearnerKind::stoiht,      LearnerKind::graphstoiht,
        LearnerKind::da_iht,      LearnerKind::graphda};
    int components = 1;
    // mnist-regression settings
    WStarStrategy strategy = WStarStrategy::constant;
    int digit = 0;
    double binarize_threshold = 0.0;
    std::string idx_images_path;  // optional real IDX images; fallback is synthetic
};

struct ResultRow {
    LearnerKind method;
    int trial = 0;
    HyperParams hp;
    FeatureReport feat_w, feat_avg;
    ClassReport class_w, class_avg;    // on the test split
    long online_miss_w = 0;            // cumulative training misses, w_t predictions
    long online_miss_avg = 0;          // same with the running average
    double seconds = 0.0;              // wall clock; not part of the CSV
};

namespace detail {

inline std::vector<double> test_scores(const DenseVector& w,
                                       const std::vector<Sample>& samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(dot(w, s.x));
    return out;
}

inline std::vector<double> test_labels(const std::vector<Sample>& samples) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(s.y);
    return out;
}

}  // namespace detail

inline TrialData make_benchmark_trial(const Graph& grid, BenchmarkSpec spec,
                                      std::uint64_t base_seed, int trial) {
    spec.seed = derive_seed(base_seed, static_cast<std::uint64_t>(trial), 1);
    TrialData data;
    data.truth = make_benchmark_truth(grid, spec);
    data.train = SampleSet(gen_classification_set(
        data.truth, spec.mu, spec.n_train,
        derive_seed(base_seed, static_cast<std::uint64_t>(trial), 2)));
    data.validation = SampleSet(gen_classification_set(
        data.truth, spec.mu, spec.n_validate,
        derive_seed(base_seed, static_cast<std::uint64_t>(trial), 3)));
    data.test = SampleSet(gen_classification_set(
        data.truth, spec.mu, spec.n_test,
        derive_seed(base_seed, static_cast<std::uint64_t>(trial), 4)));
    return data;
}

// Ground truth for the regression experiment: digit mask on the pixel grid.
inline GroundTruth make_mnist_truth(const ExperimentConfig& cfg, const Graph& grid,
                                    int trial) {
    Image img;
    if (!cfg.idx_images_path.empty()) {
        auto images = load_idx_images(cfg.idx_images_path);
        if (images.empty()) throw std::runtime_error("idx file holds no images");
        img = images[static_cast<std::size_t>(cfg.digit) % images.size()];
    } else {
        img = synthetic_digit_image(cfg.digit, cfg.bench.rows, cfg.bench.cols);
    }
    if (img.rows != cfg.bench.rows || img.cols != cfg.bench.cols)
        throw std::runtime_error("image dimensions do not match the pixel grid");
    const Support mask = image_mask(img, cfg.binarize_threshold);
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 5));
    DenseVector intensities(img.pixels.begin(), img.pixels.end());
    return make_wstar(cfg.strategy, mask, &intensities,
                      static_cast<std::size_t>(grid.node_count()), rng);
}

inline TrialData make_mnist_trial(const ExperimentConfig& cfg, const Graph& grid,
                                  int trial) {
    TrialData data;
    data.truth = make_mnist_truth(cfg, grid, trial);
    data.train = SampleSet(gen_regression_set(
        data.truth, cfg.bench.n_train,
        derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 2)));
    data.validation = SampleSet(gen_regression_set(
        data.truth, cfg.bench.n_validate,
        derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 3)));
    data.test = SampleSet(gen_regression_set(
        data.truth, cfg.bench.n_test,
        derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), 4)));
    return data;
}

namespace detail {

// Full per-trial pipeline: tune every method on the validation split, train
// once with the winner, evaluate both iterates on the test split. Parallelism
// is across (trial x method x grid point) units; every unit writes its own
// slot, so results do not depend on the thread count.
inline std::vector<ResultRow> run_experiment_core(
    const ExperimentConfig& cfg, const std::vector<int>* sparsity_override) {
    const Graph grid = build_grid_graph(cfg.bench.rows, cfg.bench.cols, 1.0);
    const bool mnist = cfg.dataset == "mnist-regression";
    const LossKind loss = mnist ? LossKind::least_squares : LossKind::logistic;
    const std::vector<int>& s_values =
        sparsity_override != nullptr
            ? *sparsity_override
            : (mnist ? grids::mnist_sparsity_values()
                     : grids::benchmark_sparsity_values());

    std::vector<TrialData> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        trials[t] = mnist ? make_mnist_trial(cfg, grid, static_cast<int>(t))
                          : make_benchmark_trial(grid, cfg.bench, cfg.seed,
                                                 static_cast<int>(t));
    });

    std::vector<std::vector<HyperParams>> method_grids;
    method_grids.reserve(cfg.methods.size());
    for (LearnerKind kind : cfg.methods)
        method_grids.push_back(
            make_grid(kind, s_values, grid.node_count(), cfg.components));

    struct Unit {
        int trial, method, grid_index;
    };
    std::vector<Unit> units;
    for (int t = 0; t < cfg.trials; ++t)
        for (int m = 0; m < static_cast<int>(cfg.methods.size()); ++m)
            for (int i = 0; i < static_cast<int>(method_grids[m].size()); ++i)
                units.push_back({t, m, i});
    std::vector<std::vector<std::vector<double>>> scores(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
        scores[t].resize(cfg.methods.size());
        for (std::size_t m = 0; m < cfg.methods.size(); ++m)
            scores[t][m].assign(method_grids[m].size(), 0.0);
    }
    parallel_for(units.size(), cfg.threads, [&](std::size_t i) {
        const Unit& u = units[i];
        const LearnerKind kind = cfg.methods[u.method];
        const Graph* gptr = learner_needs_graph(kind) ? &grid : nullptr;
        scores[u.trial][u.method][u.grid_index] = run_grid_point(
            kind, method_grids[u.method][u.grid_index], gptr,
            trials[u.trial].train, trials[u.trial].validation, loss);
    });

    std::vector<ResultRow> rows(static_cast<std::size_t>(cfg.trials) *
                                cfg.methods.size());
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        const int m = static_cast<int>(i) / cfg.trials;  // method-major output
        const int t = static_cast<int>(i) % cfg.trials;
        const LearnerKind kind = cfg.methods[m];
        const Graph* gptr = learner_needs_graph(kind) ? &grid : nullptr;
        const auto t0 = std::chrono::steady_clock::now();
        TuneResult tuned = select_best(method_grids[m], scores[t][m]);
        const TrialData& data = trials[t];
        StreamTrajectory traj =
            run_stream(kind, tuned.best, gptr,
                       std::span<const Sample>(data.train.samples()), loss);
        ResultRow row;
        row.method = kind;
        row.trial = t;
        row.hp = tuned.best;
        row.feat_w = feature_metrics(traj.w_final, data.truth.wstar);
        row.feat_avg = feature_metrics(traj.w_avg, data.truth.wstar);
        if (loss == LossKind::logistic) {
            const auto labels = test_labels(data.test.samples());
            row.class_w = classification_metrics(
                test_scores(traj.w_final, data.test.samples()), labels);
            row.class_avg = classification_metrics(
                test_scores(traj.w_avg, data.test.samples()), labels);
            row.online_miss_w = traj.miss_curve.empty() ? 0 : traj.miss_curve.back();
            row.online_miss_avg =
                traj.miss_curve_avg.empty() ? 0 : traj.miss_curve_avg.back();
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        rows[i] = std::move(row);
    });
    return rows;
}

}  // namespace detail

inline std::vector<ResultRow> run_benchmark_experiment(const ExperimentConfig& cfg) {
    return detail::run_experiment_core(cfg, nullptr);
}

// ------------------------------ sweeps ------------------------------

struct SweepPoint {
    double x = 0.0;           // sweep coordinate (s, mu, t or n)
    LearnerKind method;
    double mean_w = 0.0;      // metric of w_T averaged over trials
    double std_w = 0.0;
    double mean_avg = 0.0;    // same for the running average iterate
    double std_avg = 0.0;
};

// Test error rate 1 - Acc as a function of the fixed sparsity s.
inline std::vector<SweepPoint> run_sparsity_sweep(const ExperimentConfig& cfg,
                                                  const std::vector<int>& s_values) {
    if (s_values.empty())
        throw std::invalid_argument("run_sparsity_sweep: empty grid");
    std::vector<SweepPoint> out;
    for (int s : s_values) {
        const std::vector<int> fixed{s};
        const std::vector<ResultRow> rows =
            detail::run_experiment_core(cfg, &fixed);
        for (LearnerKind kind : cfg.methods) {
            std::vector<double> err_w, err_avg;
            for (const ResultRow& r : rows)
                if (r.method == kind) {
                    err_w.push_back(1.0 - r.class_w.accuracy);
                    err_avg.push_back(1.0 - r.class_avg.accuracy);
                }
            const MeanStd mw = aggregate_trials(err_w);
            const MeanStd ma = aggregate_trials(err_avg);
            out.push_back({static_cast<double>(s), kind, mw.mean, mw.std, ma.mean,
                           ma.std});
        }
    }
    return out;
}

// Accuracy as a function of the signal strength mu at fixed stream length.
inline std::vector<SweepPoint> run_mu_sweep(ExperimentConfig cfg,
                                            const std::vector<double>& mu_values) {
    if (mu_values.empty()) throw std::invalid_argument("run_mu_sweep: empty grid");
    std::vector<SweepPoint> out;
    for (double mu : mu_values) {
        cfg.bench.mu = mu;
        const std::vector<ResultRow> rows = run_benchmark_experiment(cfg);
        for (LearnerKind kind : cfg.methods) {
            std::vector<double> acc_w, acc_avg;
            for (const ResultRow& r : rows)
                if (r.method == kind) {
                    acc_w.push_back(r.class_w.accuracy);
                    acc_avg.push_back(r.class_avg.accuracy);
                }
            const MeanStd mw = aggregate_trials(acc_w);
            const MeanStd ma = aggregate_trials(acc_avg);
            out.push_back({mu, kind, mw.mean, mw.std, ma.mean, ma.std});
        }
    }
    return out;
}

namespace detail {

// Tune once with the full stream, then replay with checkpoints and evaluate a
// metric per checkpoint. Shared by the sample-count and regression sweeps.
template <typename Metric>
inline std::vector<SweepPoint> checkpoint_sweep(const ExperimentConfig& cfg,
                                                const std::vector<long>& steps,
                                                bool mnist, Metric&& metric) {
    const Graph grid = build_grid_graph(cfg.bench.rows, cfg.bench.cols, 1.0);
    const LossKind loss = mnist ? LossKind::least_squares : LossKind::logistic;
    const std::vector<int>& s_values = mnist ? grids::mnist_sparsity_values()
                                             : grids::benchmark_sparsity_values();

    std::vector<TrialData> trials(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        trials[t] = mnist ? make_mnist_trial(cfg, grid, static_cast<int>(t))
                          : make_benchmark_trial(grid, cfg.bench, cfg.seed,
                                                 static_cast<int>(t));
    });

    std::vector<std::vector<HyperParams>> method_grids;
    for (LearnerKind kind : cfg.methods)
        method_grids.push_back(
            make_grid(kind, s_values, grid.node_count(), cfg.components));

    struct Unit {
        int trial, method;
    };
    std::vector<Unit> units;
    for (int t = 0; t < cfg.trials; ++t)
        for (int m = 0; m < static_cast<int>(cfg.methods.size()); ++m)
            units.push_back({t, m});

    std::vector<std::vector<std::vector<double>>> values_w(
        cfg.methods.size(),
        std::vector<std::vector<double>>(steps.size(),
                                         std::vector<double>(cfg.trials, 0.0)));
    auto values_avg = values_w;

    parallel_for(units.size(), cfg.threads, [&](std::size_t i) {
        const Unit u = units[i];
        const LearnerKind kind = cfg.methods[u.method];
        const Graph* gptr = learner_needs_graph(kind) ? &grid : nullptr;
        const TrialData& data = trials[u.trial];
        TuneResult tuned = tune(kind, method_grids[u.method], gptr, data.train,
                                data.validation, loss, 1);
        StreamTrajectory traj =
            run_stream(kind, tuned.best, gptr,
                       std::span<const Sample>(data.train.samples()), loss, steps);
        for (std::size_t k = 0; k < traj.checkpoint_steps.size(); ++k) {
            const auto it =
                std::find(steps.begin(), steps.end(), traj.checkpoint_steps[k]);
            const std::size_t idx = it - steps.begin();
            values_w[u.method][idx][u.trial] = metric(traj.checkpoints_w[k], data);
            values_avg[u.method][idx][u.trial] =
                metric(traj.checkpoints_avg[k], data);
        }
    });

    std::vector<SweepPoint> out;
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
        for (std::size_t k = 0; k < steps.size(); ++k) {
            const MeanStd mw = aggregate_trials(values_w[m][k]);
            const MeanStd ma = aggregate_trials(values_avg[m][k]);
            out.push_back({static_cast<double>(steps[k]), cfg.methods[m], mw.mean,
                           mw.std, ma.mean, ma.std});
        }
    }
    return out;
}

}  // namespace detail

// Test accuracy at checkpoints along a single training stream.
inline std::vector<SweepPoint> run_sample_sweep(ExperimentConfig cfg,
                                                const std::vector<long>& t_values) {
    if (t_values.empty()) throw std::invalid_argument("run_sample_sweep: empty grid");
    cfg.bench.n_train =
        static_cast<int>(*std::max_element(t_values.begin(), t_values.end()));
    return detail::checkpoint_sweep(
        cfg, t_values, false, [](const DenseVector& w, const TrialData& data) {
            return validation_score(w, data.test, LossKind::logistic);
        });
}

// Feature F1 of the regression iterates at checkpoints along the stream.
inline std::vector<SweepPoint> run_mnist_experiment(
    ExperimentConfig cfg, const std::vector<long>& n_values) {
    if (n_values.empty())
        throw std::invalid_argument("run_mnist_experiment: empty grid");
    cfg.dataset = "mnist-regression";
    cfg.bench.n_train =
        static_cast<int>(*std::max_element(n_values.begin(), n_values.end()));
    return detail::checkpoint_sweep(
        cfg, n_values, true, [](const DenseVector& w, const TrialData& data) {
            return feature_metrics(w, data.truth.wstar).f1;
        });
}

// ------------------------------ CSV emission ------------------------------

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline std::string fmt_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_result_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "method,trial,s,gamma,lambda,rho,eta,alpha,"
           "pre_w,rec_w,f1_w,pre_avg,rec_avg,f1_avg,"
           "auc_w,auc_avg,acc_w,acc_avg,miss_w,miss_avg,nr_w,nr_avg\n";
    for (const ResultRow& r : rows) {
        out << learner_name(r.method) << ',' << r.trial << ',' << r.hp.sparsity
            << ',' << detail::fmt_param(r.hp.gamma) << ','
            << detail::fmt_param(r.hp.lambda) << ',' << detail::fmt_param(r.hp.rho)
            << ',' << detail::fmt_param(r.hp.eta) << ','
            << detail::fmt_param(r.hp.alpha) << ','
            << detail::fmt(r.feat_w.precision) << ',' << detail::fmt(r.feat_w.recall)
            << ',' << detail::fmt(r.feat_w.f1) << ','
            << detail::fmt(r.feat_avg.precision) << ','
            << detail::fmt(r.feat_avg.recall) << ',' << detail::fmt(r.feat_avg.f1)
            << ',' << detail::fmt(r.class_w.auc.value_or(std::nan("")))
            << ',' << detail::fmt(r.class_avg.auc.value_or(std::nan("")))
            << ',' << detail::fmt(r.class_w.accuracy) << ','
            << detail::fmt(r.class_avg.accuracy) << ',' << r.online_miss_w << ','
            << r.online_miss_avg << ',' << detail::fmt(r.feat_w.nonzero_ratio)
            << ',' << detail::fmt(r.feat_avg.nonzero_ratio) << "\n";
    }
}

struct AggregateRow {
    LearnerKind method;
    MeanStd pre_w, rec_w, f1_w, auc_w, auc_avg, acc_w, acc_avg, miss_w, miss_avg,
        nr_w, nr_avg;
};

inline std::vector<AggregateRow> aggregate_results(
    const std::vector<ResultRow>& rows, const std::vector<LearnerKind>& methods) {
    std::vector<AggregateRow> out;
    for (LearnerKind kind : methods) {
        std::vector<double> pre, rec, f1, auc_w, auc_avg, acc_w, acc_avg, miss_w,
            miss_avg, nr_w, nr_avg;
        for (const ResultRow& r : rows) {
            if (r.method != kind) continue;
            pre.push_back(r.feat_w.precision);
            rec.push_back(r.feat_w.recall);
            f1.push_back(r.feat_w.f1);
            if (r.class_w.auc) auc_w.push_back(*r.class_w.auc);
            if (r.class_avg.auc) auc_avg.push_back(*r.class_avg.auc);
            acc_w.push_back(r.class_w.accuracy);
            acc_avg.push_back(r.class_avg.accuracy);
            miss_w.push_back(static_cast<double>(r.online_miss_w));
            miss_avg.push_back(static_cast<double>(r.online_miss_avg));
            nr_w.push_back(r.feat_w.nonzero_ratio);
            nr_avg.push_back(r.feat_avg.nonzero_ratio);
        }
        if (pre.empty()) continue;
        AggregateRow a;
        a.method = kind;
        a.pre_w = aggregate_trials(pre);
        a.rec_w = aggregate_trials(rec);
        a.f1_w = aggregate_trials(f1);
        a.auc_w = auc_w.empty() ? MeanStd{} : aggregate_trials(auc_w);
        a.auc_avg = auc_avg.empty() ? MeanStd{} : aggregate_trials(auc_avg);
        a.acc_w = aggregate_trials(acc_w);
        a.acc_avg = aggregate_trials(acc_avg);
        a.miss_w = aggregate_trials(miss_w);
        a.miss_avg = aggregate_trials(miss_avg);
        a.nr_w = aggregate_trials(nr_w);
        a.nr_avg = aggregate_trials(nr_avg);
        out.push_back(a);
    }
    return out;
}

inline void write_aggregate_csv(std::ostream& out,
                                const std::vector<AggregateRow>& rows) {
    out << "method,pre_mean,pre_std,rec_mean,rec_std,f1_mean,f1_std,"
           "auc_w_mean,auc_avg_mean,acc_w_mean,acc_avg_mean,"
           "miss_w_mean,miss_avg_mean,nr_w_mean,nr_avg_mean\n";
    for (const AggregateRow& a : rows) {
        out << learner_name(a.method) << ',' << detail::fmt(a.pre_w.mean) << ','
            << detail::fmt(a.pre_w.std) << ',' << detail::fmt(a.rec_w.mean) << ','
            << detail::fmt(a.rec_w.std) << ',' << detail::fmt(a.f1_w.mean) << ','
            << detail::fmt(a.f1_w.std) << ',' << detail::fmt(a.auc_w.mean) << ','
            << detail::fmt(a.auc_avg.mean) << ',' << detail::fmt(a.acc_w.mean)
            << ',' << detail::fmt(a.acc_avg.mean) << ','
            << detail::fmt(a.miss_w.mean) << ',' << detail::fmt(a.miss_avg.mean)
            << ',' << detail::fmt(a.nr_w.mean) << ',' << detail::fmt(a.nr_avg.mean)
            << "\n";
    }
}

// Table-style rendering with mean+/-std columns, NR as percentages.
inline void print_aggregate_table(std::ostream& out,
                                  const std::vector<AggregateRow>& rows) {
    out << "method        Pre            Rec            F1             "
           "AUC(w,avg)      Acc(w,avg)      Miss(w,avg)        NR%(w,avg)\n";
    char buf[256];
    for (const AggregateRow& a : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%-12s  %.3f+/-%.2f  %.3f+/-%.2f  %.3f+/-%.2f  "
                      "(%.3f, %.3f)  (%.3f, %.3f)  (%7.2f, %7.2f)  (%5.1f, %5.1f)\n",
                      learner_name(a.method), a.pre_w.mean, a.pre_w.std,
                      a.rec_w.mean, a.rec_w.std, a.f1_w.mean, a.f1_w.std,
                      a.auc_w.mean, a.auc_avg.mean, a.acc_w.mean, a.acc_avg.mean,
                      a.miss_w.mean, a.miss_avg.mean, 100.0 * a.nr_w.mean,
                      100.0 * a.nr_avg.mean);
        out << buf;
    }
}

inline void write_sweep_csv(std::ostream& out, const std::string& x_name,
                            const std::vector<SweepPoint>& points) {
    out << x_name << ",method,mean_w,std_w,mean_avg,std_avg\n";
    for (const SweepPoint& p : points) {
        out << detail::fmt_param(p.x) << ',' << learner_name(p.method) << ','
            << detail::fmt(p.mean_w) << ',' << detail::fmt(p.std_w) << ','
            << detail::fmt(p.mean_avg) << ',' << detail::fmt(p.std_avg) << "\n";
    }
}

}  // namespace graphda
