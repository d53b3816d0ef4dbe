#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficast/nn/types.hpp"

namespace trafficast::nn {

enum class OptimizerKind { SGD, Adam };

OptimizerKind optimizer_from_string(const std::string& s);
std::string to_string(OptimizerKind k);

/// Hyperparameters of one training run.
struct TrainConfig {
    int batch_size = 150;
    double learning_rate = 5e-4;
    double weight_decay = 2e-4;
    int epochs = 200;
    int patience = 10; // early stopping on validation RMSE
    OptimizerKind optimizer = OptimizerKind::Adam;
    std::uint64_t seed = 7;

    void validate() const {
        if (batch_size < 1 || epochs < 1 || patience < 1)
            throw ValidationError("train config: batch_size, epochs, patience must be >= 1");
        if (learning_rate <= 0.0 || weight_decay < 0.0)
            throw ValidationError("train config: bad learning rate or weight decay");
    }
};

/// SGD: p <- p - lr * (g + wd * p).
/// Adam: standard moments (0.9, 0.999, eps 1e-8) with decoupled weight decay.
class Optimizer {
public:
    Optimizer(OptimizerKind kind, double learning_rate, double weight_decay)
        : kind_(kind), lr_(learning_rate), wd_(weight_decay) {}

    void step(ParamBlocks& params);

private:
    OptimizerKind kind_;
    double lr_;
    double wd_;
    std::int64_t t_ = 0;
    std::vector<Eigen::VectorXd> m_, v_;
};

} // namespace trafficast::nn
