#pragma once

#include <optional>

#include "graphda/graph.hpp"

namespace graphda {

// Support-recovery metrics of a learned vector against the ground truth.
struct FeatureReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double nonzero_ratio = 0.0;
};

struct ClassReport {
    double accuracy = 0.0;
    long miss = 0;
    std::optional<double> auc;  // empty when only one class is present
};

inline FeatureReport feature_metrics(const DenseVector& w,
                                     const DenseVector& wstar,
                                     double tolerance = 0.0) {
    if (w.size() != wstar.size())
        throw std::invalid_argument("feature_metrics: length mismatch");
    const Support truth = support_of(wstar, tolerance);
    const Support learned = support_of(w, tolerance);
    const double both =
        static_cast<double>(support_intersection(truth, learned).size());
    FeatureReport r;
    r.precision = learned.empty() ? 0.0 : both / static_cast<double>(learned.size());
    r.recall = truth.empty() ? 0.0 : both / static_cast<double>(truth.size());
    const double denom = static_cast<double>(truth.size() + learned.size());
    r.f1 = denom == 0.0 ? 0.0 : 2.0 * both / denom;
    r.nonzero_ratio =
        w.empty() ? 0.0
                  : static_cast<double>(learned.size()) / static_cast<double>(w.size());
    return r;
}

// Accuracy under the sign rule (sign(0) predicts -1), miss count, and the
// Mann-Whitney AUC with midranks for tied scores.
inline ClassReport classification_metrics(const std::vector<double>& scores,
                                          const std::vector<double>& labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("classification_metrics: length mismatch");
    if (scores.empty())
        throw std::invalid_argument("classification_metrics: empty input");
    long correct = 0, positives = 0, negatives = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1.0 && labels[i] != -1.0)
            throw std::invalid_argument("classification_metrics: label must be +1 or -1");
        const double pred = scores[i] > 0.0 ? 1.0 : -1.0;
        if (pred == labels[i]) ++correct;
        if (labels[i] > 0.0) ++positives; else ++negatives;
    }
    ClassReport r;
    r.accuracy = static_cast<double>(correct) / static_cast<double>(scores.size());
    r.miss = static_cast<long>(scores.size()) - correct;
    if (positives == 0 || negatives == 0) return r;  // AUC undefined

    // rank-sum with midranks
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return scores[a] < scores[b]; });
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k)
            if (labels[order[k]] > 0.0) positive_rank_sum += midrank;
        i = j + 1;
    }
    const double np = static_cast<double>(positives);
    const double nn = static_cast<double>(negatives);
    r.auc = (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
    return r;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

inline MeanStd aggregate_trials(const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("aggregate_trials: empty list");
    MeanStd out;
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size()));
    return out;
}

}  // namespace graphda
