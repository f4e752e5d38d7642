#pragma once

#include <span>

#include "graphda/losses.hpp"
#include "graphda/projections.hpp"

namespace graphda {

// Shared hyperparameter bag; each learner reads only its own fields.
struct HyperParams {
    double gamma = 1.0;      // dual-averaging rate (beta_t = gamma*sqrt(t)); IHT step size
    double lambda = 0.0;     // l1 weight
    double rho = 0.0;        // sparsity-enhancing term, rho = 0 is plain RDA
    double eta = 0.01;       // adagrad rate
    double delta = 1e-8;     // adagrad denominator offset
    double alpha = 0.001;    // adam step
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int sparsity = 1;        // s
    int components = 1;      // g
    double budget = 0.0;     // B, recorded for the model; projections do not consume it
    double omega = 0.1;      // projection window tolerance
    int proj_max_iter = 20;
    bool average_duals = true;  // divide the gradient sum by the step count
};

// Online state: iterate, accumulated gradients, running iterate sum and the
// learner-specific moment buffers (adagrad squared sums / adam moments).
struct LearnerState {
    DenseVector w;
    DenseVector dual_sum;
    DenseVector running_sum_w;
    DenseVector aux1;
    DenseVector aux2;
    long t = 0;  // gradients consumed

    static LearnerState zeros(int p) {
        LearnerState s;
        s.w.assign(p, 0.0);
        s.dual_sum.assign(p, 0.0);
        s.running_sum_w.assign(p, 0.0);
        s.aux1.assign(p, 0.0);
        s.aux2.assign(p, 0.0);
        return s;
    }

    void check_dim(const DenseVector& grad) const {
        if (grad.size() != w.size())
            throw std::invalid_argument("learner step: gradient length mismatch");
    }
};

namespace detail {

// -sqrt(t)/gamma applied to the head output; t counts gradients consumed
// before this update, so the first update always lands on the zero vector.
inline DenseVector dual_average_target(const LearnerState& state, long t_before,
                                       double gamma, const DenseVector& b) {
    DenseVector target = b;
    scale_in_place(target, -std::sqrt(static_cast<double>(t_before)) / gamma);
    (void)state;
    return target;
}

inline DenseVector averaged_duals(const LearnerState& state, bool average) {
    DenseVector s = state.dual_sum;
    if (average) scale_in_place(s, 1.0 / static_cast<double>(state.t + 1));
    return s;
}

}  // namespace detail

// Dual averaging with model projections on both the accumulated gradient and
// the primal iterate.
inline void graphda_step(LearnerState& state, const DenseVector& grad,
                         const Graph& graph, const ProjectionConfig& head_cfg,
                         const ProjectionConfig& tail_cfg, double gamma,
                         bool average_duals = true, PcstSolver* solver = nullptr) {
    state.check_dim(grad);
    if (gamma <= 0.0)
        throw std::invalid_argument("graphda_step: gamma must be positive");
    axpy(state.dual_sum, 1.0, grad);
    const long t_before = state.t;
    DenseVector sbar = detail::averaged_duals(state, average_duals);
    Projection head = model_project(sbar, graph, head_cfg, solver);
    DenseVector target =
        detail::dual_average_target(state, t_before, gamma, head.vector);
    state.w = model_project(target, graph, tail_cfg, solver).vector;
    ++state.t;
}

// GraphDA with both projections replaced by the exact top-s selection.
inline void da_iht_step(LearnerState& state, const DenseVector& grad,
                        int sparsity, double gamma, bool average_duals = true) {
    state.check_dim(grad);
    if (gamma <= 0.0)
        throw std::invalid_argument("da_iht_step: gamma must be positive");
    axpy(state.dual_sum, 1.0, grad);
    const long t_before = state.t;
    DenseVector sbar = detail::averaged_duals(state, average_duals);
    DenseVector b = restrict_to(sbar, exact_top_s(sbar, sparsity));
    DenseVector target = detail::dual_average_target(state, t_before, gamma, b);
    state.w = restrict_to(target, exact_top_s(target, sparsity));
    ++state.t;
}

// Enhanced l1 regularized dual averaging: truncate the averaged gradient at
// lambda_t = lambda + gamma*rho/sqrt(t).
inline void l1_rda_step(LearnerState& state, const DenseVector& grad,
                        double lambda, double gamma, double rho) {
    state.check_dim(grad);
    if (gamma <= 0.0)
        throw std::invalid_argument("l1_rda_step: gamma must be positive");
    if (lambda < 0.0 || rho < 0.0)
        throw std::invalid_argument("l1_rda_step: lambda and rho must be >= 0");
    axpy(state.dual_sum, 1.0, grad);
    const double t = static_cast<double>(state.t + 1);
    const double sqrt_t = std::sqrt(t);
    const double lambda_t = lambda + gamma * rho / sqrt_t;
    const double step = -sqrt_t / gamma;
    for (std::size_t i = 0; i < state.w.size(); ++i) {
        const double gbar = state.dual_sum[i] / t;
        if (std::abs(gbar) <= lambda_t) {
            state.w[i] = 0.0;
        } else {
            const double sign = gbar > 0.0 ? 1.0 : -1.0;
            state.w[i] = step * (gbar - lambda_t * sign);
        }
    }
    ++state.t;
}

// Diagonal adagrad with composite l1 soft-thresholding.
inline void adagrad_step(LearnerState& state, const DenseVector& grad,
                         double eta, double lambda, double delta) {
    state.check_dim(grad);
    if (delta <= 0.0)
        throw std::invalid_argument("adagrad_step: delta must be positive");
    if (eta <= 0.0)
        throw std::invalid_argument("adagrad_step: eta must be positive");
    for (std::size_t i = 0; i < state.w.size(); ++i) {
        state.aux1[i] += grad[i] * grad[i];
        const double h = delta + std::sqrt(state.aux1[i]);
        const double u = state.w[i] - (eta / h) * grad[i];
        const double shrink = eta * lambda / h;
        state.w[i] = u > 0.0 ? std::max(0.0, u - shrink)
                             : -std::max(0.0, -u - shrink);
    }
    ++state.t;
}

// Bias-corrected first/second moment update; produces dense iterates.
inline void adam_step(LearnerState& state, const DenseVector& grad, double alpha,
                      double beta1, double beta2, double epsilon) {
    state.check_dim(grad);
    if (beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0)
        throw std::invalid_argument("adam_step: betas must lie in [0,1)");
    if (alpha <= 0.0 || epsilon <= 0.0)
        throw std::invalid_argument("adam_step: alpha and epsilon must be positive");
    const double t = static_cast<double>(state.t + 1);
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < state.w.size(); ++i) {
        state.aux1[i] = beta1 * state.aux1[i] + (1.0 - beta1) * grad[i];
        state.aux2[i] = beta2 * state.aux2[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double mhat = state.aux1[i] / c1;
        const double vhat = state.aux2[i] / c2;
        state.w[i] -= alpha * mhat / (std::sqrt(vhat) + epsilon);
    }
    ++state.t;
}

// Projected gradient step keeping the s largest magnitudes.
inline void stoiht_step(LearnerState& state, const DenseVector& grad,
                        int sparsity, double gamma) {
    state.check_dim(grad);
    DenseVector u = state.w;
    axpy(u, -gamma, grad);
    state.w = restrict_to(u, exact_top_s(u, sparsity));
    ++state.t;
}

// StoIHT with the head projection on the raw gradient and the tail projection
// on the stepped iterate.
inline void graphstoiht_step(LearnerState& state, const DenseVector& grad,
                             const Graph& graph,
                             const ProjectionConfig& head_cfg,
                             const ProjectionConfig& tail_cfg, double gamma,
                             PcstSolver* solver = nullptr) {
    state.check_dim(grad);
    Projection head = model_project(grad, graph, head_cfg, solver);
    DenseVector u = state.w;
    axpy(u, -gamma, head.vector);
    state.w = model_project(u, graph, tail_cfg, solver).vector;
    ++state.t;
}

enum class LearnerKind {
    graphda,
    da_iht,
    l1_rda,
    adagrad,
    adam,
    stoiht,
    graphstoiht
};

inline const char* learner_name(LearnerKind k) {
    switch (k) {
        case LearnerKind::graphda: return "graphda";
        case LearnerKind::da_iht: return "da-iht";
        case LearnerKind::l1_rda: return "l1-rda";
        case LearnerKind::adagrad: return "adagrad";
        case LearnerKind::adam: return "adam";
        case LearnerKind::stoiht: return "stoiht";
        case LearnerKind::graphstoiht: return "graphstoiht";
    }
    return "unknown";
}

inline LearnerKind learner_from_name(const std::string& name) {
    for (LearnerKind k :
         {LearnerKind::graphda, LearnerKind::da_iht, LearnerKind::l1_rda,
          LearnerKind::adagrad, LearnerKind::adam, LearnerKind::stoiht,
          LearnerKind::graphstoiht}) {
        if (name == learner_name(k)) return k;
    }
    throw std::invalid_argument("unknown learner: " + name);
}

inline bool learner_needs_graph(LearnerKind k) {
    return k == LearnerKind::graphda || k == LearnerKind::graphstoiht;
}

// One learner bound to its hyperparameters (and graph, when structured).
class OnlineLearner {
public:
    OnlineLearner(LearnerKind kind, HyperParams hp, const Graph* graph, int dim)
        : kind_(kind), hp_(hp), graph_(graph), state_(LearnerState::zeros(dim)) {
        if (learner_needs_graph(kind) && graph == nullptr)
            throw std::invalid_argument("learner requires a graph");
        if (graph != nullptr && graph->node_count() != dim)
            throw std::invalid_argument("learner dimension mismatch with graph");
        if (graph != nullptr) {
            head_cfg_ = ProjectionConfig::head_defaults(
                graph->node_count(), hp.components, hp.omega, hp.proj_max_iter);
            tail_cfg_ = ProjectionConfig::tail_defaults(
                hp.sparsity, graph->node_count(), hp.components, hp.omega,
                hp.proj_max_iter);
        }
    }

    void consume(const DenseVector& grad) {
        switch (kind_) {
            case LearnerKind::graphda:
                graphda_step(state_, grad, *graph_, head_cfg_, tail_cfg_, hp_.gamma,
                             hp_.average_duals, &solver_);
                break;
            case LearnerKind::da_iht:
                da_iht_step(state_, grad, hp_.sparsity, hp_.gamma, hp_.average_duals);
                break;
            case LearnerKind::l1_rda:
                l1_rda_step(state_, grad, hp_.lambda, hp_.gamma, hp_.rho);
                break;
            case LearnerKind::adagrad:
                adagrad_step(state_, grad, hp_.eta, hp_.lambda, hp_.delta);
                break;
            case LearnerKind::adam:
                adam_step(state_, grad, hp_.alpha, hp_.beta1, hp_.beta2, hp_.epsilon);
                break;
            case LearnerKind::stoiht:
                stoiht_step(state_, grad, hp_.sparsity, hp_.gamma);
                break;
            case LearnerKind::graphstoiht:
                graphstoiht_step(state_, grad, *graph_, head_cfg_, tail_cfg_,
                                 hp_.gamma, &solver_);
                break;
        }
    }

    const LearnerState& state() const { return state_; }
    LearnerState& state() { return state_; }
    LearnerKind kind() const { return kind_; }
    const HyperParams& hyper() const { return hp_; }

private:
    LearnerKind kind_;
    HyperParams hp_;
    const Graph* graph_;
    LearnerState state_;
    ProjectionConfig head_cfg_, tail_cfg_;
    PcstSolver solver_;
};

struct StreamTrajectory {
    DenseVector w_final;
    DenseVector w_avg;
    std::vector<long> miss_curve;      // cumulative misses predicting with w_t
    std::vector<long> miss_curve_avg;  // cumulative misses predicting with the running average
    std::vector<double> loss_curve;    // loss before each update
    std::vector<long> checkpoint_steps;
    std::vector<DenseVector> checkpoints_w;
    std::vector<DenseVector> checkpoints_avg;
    bool diverged = false;  // stream stopped early on a non-finite loss
};

// Strictly sequential single pass: predict, record, update, one sample per
// iteration. Checkpoints snapshot w_t and the running average after step t.
inline StreamTrajectory run_stream(LearnerKind kind, const HyperParams& hp,
                                   const Graph* graph,
                                   std::span<const Sample> samples,
                                   LossKind loss,
                                   const std::vector<long>& checkpoints = {}) {
    int dim = graph != nullptr ? graph->node_count()
                               : (samples.empty()
                                      ? 0
                                      : static_cast<int>(samples.front().x.size()));
    OnlineLearner learner(kind, hp, graph, dim);
    StreamTrajectory traj;
    traj.w_final.assign(dim, 0.0);
    traj.w_avg.assign(dim, 0.0);

    const bool classify = loss == LossKind::logistic;
    long miss = 0, miss_avg = 0;
    std::size_t next_checkpoint = 0;
    std::vector<long> sorted_checkpoints = checkpoints;
    std::sort(sorted_checkpoints.begin(), sorted_checkpoints.end());

    for (const Sample& sample : samples) {
        if (static_cast<int>(sample.x.size()) != dim)
            throw std::invalid_argument("run_stream: sample dimension mismatch");
        LearnerState& st = learner.state();
        if (classify) {
            const double score = dot(st.w, sample.x);
            const double pred = score > 0.0 ? 1.0 : -1.0;  // sign(0) -> -1
            if (pred != sample.y) ++miss;
            double score_avg = 0.0;
            if (st.t > 0) {
                for (std::size_t i = 0; i < sample.x.size(); ++i)
                    score_avg += st.running_sum_w[i] * sample.x[i];
                score_avg /= static_cast<double>(st.t);
            }
            const double pred_avg = score_avg > 0.0 ? 1.0 : -1.0;
            if (pred_avg != sample.y) ++miss_avg;
            traj.miss_curve.push_back(miss);
            traj.miss_curve_avg.push_back(miss_avg);
        }
        LossGrad lg = loss_grad(loss, st.w, sample);
        if (!std::isfinite(lg.loss)) {
            // runaway step size; stop before non-finite values reach the
            // projections, the last finite iterate stands
            traj.diverged = true;
            break;
        }
        traj.loss_curve.push_back(lg.loss);
        learner.consume(lg.grad);
        axpy(learner.state().running_sum_w, 1.0, learner.state().w);

        const long t = learner.state().t;
        while (next_checkpoint < sorted_checkpoints.size() &&
               sorted_checkpoints[next_checkpoint] == t) {
            traj.checkpoint_steps.push_back(t);
            traj.checkpoints_w.push_back(learner.state().w);
            DenseVector avg = learner.state().running_sum_w;
            scale_in_place(avg, 1.0 / static_cast<double>(t));
            traj.checkpoints_avg.push_back(std::move(avg));
            ++next_checkpoint;
        }
    }

    traj.w_final = learner.state().w;
    if (learner.state().t > 0) {
        traj.w_avg = learner.state().running_sum_w;
        scale_in_place(traj.w_avg, 1.0 / static_cast<double>(learner.state().t));
    }
    return traj;
}

}  // namespace graphda
