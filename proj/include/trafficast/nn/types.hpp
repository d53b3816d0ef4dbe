#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/common.hpp"

namespace trafficast::nn {

enum class Activation { Identity, ReLU, Tanh, Sigmoid };

Activation activation_from_string(const std::string& s);
std::string to_string(Activation a);

inline double apply_activation(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return z;
        case Activation::ReLU: return z > 0.0 ? z : 0.0;
        case Activation::Tanh: return std::tanh(z);
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
}

/// Derivative as a function of the pre-activation z.
inline double activation_grad(Activation a, double z) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::ReLU: return z > 0.0 ? 1.0 : 0.0;
        case Activation::Tanh: {
            double t = std::tanh(z);
            return 1.0 - t * t;
        }
        case Activation::Sigmoid: {
            double s = 1.0 / (1.0 + std::exp(-z));
            return s * (1.0 - s);
        }
    }
    return 1.0;
}

template <typename Derived>
Eigen::MatrixXd apply_activation(Activation a, const Eigen::MatrixBase<Derived>& z) {
    return z.unaryExpr([a](double v) { return apply_activation(a, v); });
}

template <typename Derived>
Eigen::MatrixXd activation_grad(Activation a, const Eigen::MatrixBase<Derived>& z) {
    return z.unaryExpr([a](double v) { return activation_grad(a, v); });
}

/// A view of one trainable parameter tensor and its gradient accumulator.
/// Layers expose their storage through these; the optimizer and the gradient
/// checker never need to know the layer types.
struct ParamBlock {
    std::string name;
    double* value;
    double* grad;
    Eigen::Index size;
};

using ParamBlocks = std::vector<ParamBlock>;

inline void zero_grads(ParamBlocks& blocks) {
    for (auto& b : blocks) Eigen::Map<Eigen::VectorXd>(b.grad, b.size).setZero();
}

inline Eigen::Index param_count(const ParamBlocks& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

/// Flat snapshot of all parameter values (for early-stopping restore).
std::vector<Eigen::VectorXd> snapshot(const ParamBlocks& blocks);
void restore(ParamBlocks& blocks, const std::vector<Eigen::VectorXd>& snap);

} // namespace trafficast::nn
