#pragma once

#include "graphda/common.hpp"

namespace graphda {

// One labeled example: features of model dimension, label in {-1,+1} for
// classification or any real for regression.
struct Sample {
    DenseVector x;
    double y = 0.0;
};

struct LossGrad {
    double loss = 0.0;
    DenseVector grad;
};

// log(1 + exp(-y <w,x>)) with the overflow-safe split formulation.
inline LossGrad logistic_loss_grad(const DenseVector& w, const Sample& sample) {
    if (sample.y != 1.0 && sample.y != -1.0)
        throw std::invalid_argument("logistic_loss_grad: label must be +1 or -1");
    const double z = sample.y * dot(w, sample.x);
    double loss, sigma_neg;  // sigma_neg = sigmoid(-z)
    if (z >= 0.0) {
        const double e = std::exp(-z);
        loss = std::log1p(e);
        sigma_neg = e / (1.0 + e);
    } else {
        const double e = std::exp(z);
        loss = -z + std::log1p(e);
        sigma_neg = 1.0 / (1.0 + e);
    }
    LossGrad out;
    out.loss = loss;
    out.grad = scaled(sample.x, -sample.y * sigma_neg);
    return out;
}

// (y - <w,x>)^2
inline LossGrad least_squares_loss_grad(const DenseVector& w,
                                        const Sample& sample) {
    const double residual = sample.y - dot(w, sample.x);
    LossGrad out;
    out.loss = residual * residual;
    out.grad = scaled(sample.x, -2.0 * residual);
    return out;
}

enum class LossKind { logistic, least_squares };

inline LossGrad loss_grad(LossKind kind, const DenseVector& w,
                          const Sample& sample) {
    return kind == LossKind::logistic ? logistic_loss_grad(w, sample)
                                      : least_squares_loss_grad(w, sample);
}

}  // namespace graphda
