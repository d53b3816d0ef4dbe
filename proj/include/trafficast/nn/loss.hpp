#pragma once

#include <Eigen/Dense>

#include "trafficast/common.hpp"

namespace trafficast::nn {

struct MseResult {
    double loss;
    Eigen::MatrixXd d_pred;
};

/// Mean squared error over all elements, with its exact gradient on pred.
inline MseResult mse_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw ValidationError("mse_loss: shape mismatch");
    const double n = static_cast<double>(pred.size());
    Eigen::MatrixXd diff = pred - target;
    return {diff.squaredNorm() / n, (2.0 / n) * diff};
}

} // namespace trafficast::nn
