#pragma once

#include <iosfwd>

#include "trafficast/nn/types.hpp"
#include "trafficast/util/rng.hpp"

namespace trafficast::nn {

/// Full-height convolution along the time axis: one kernel of shape
/// height x taps slides over a height x T input with stride 1 and collapses
/// the height dimension, s[tau] = act(sum_{r,c} K(r,c) * M(r, tau+c) + b).
/// The kernel height always equals the input height. Functional API: the
/// caller keeps the caches, so one kernel can serve many inputs per step
/// (shared weights across links).
struct ConvKernel {
    Eigen::MatrixXd weights; // height x taps
    double bias = 0.0;

    Eigen::MatrixXd grad_weights;
    double grad_bias = 0.0;

    ConvKernel() = default;
    ConvKernel(int height, int taps)
        : weights(Eigen::MatrixXd::Zero(height, taps)),
          grad_weights(Eigen::MatrixXd::Zero(height, taps)) {
        if (height < 1 || taps < 1) throw ValidationError("conv kernel dims must be >= 1");
    }

    void init_weights(Rng& rng) {
        double a = std::sqrt(6.0 / static_cast<double>(weights.size() + 1));
        for (Eigen::Index i = 0; i < weights.rows(); ++i)
            for (Eigen::Index j = 0; j < weights.cols(); ++j) weights(i, j) = rng.uniform(-a, a);
        bias = 0.0;
    }

    void collect_params(ParamBlocks& out, const std::string& prefix) {
        out.push_back({prefix + ".K", weights.data(), grad_weights.data(), weights.size()});
        out.push_back({prefix + ".b", &bias, &grad_bias, 1});
    }

    void save(std::ostream& os) const;
    static ConvKernel load(std::istream& is);
};

/// Output length T - taps + 1; throws when T < taps. `preact_out`, when given,
/// receives the pre-activation values needed by the backward pass.
Eigen::VectorXd conv_time_forward(const ConvKernel& kernel, const Eigen::MatrixXd& input,
                                  Activation act, Eigen::VectorXd* preact_out = nullptr);

/// Gradients for one application. `d_out` is the gradient on the activated
/// output; `input`/`preact` are the forward caches. Kernel gradients
/// accumulate; the return value is the gradient on the input.
Eigen::MatrixXd conv_time_backward(ConvKernel& kernel, const Eigen::MatrixXd& input,
                                   const Eigen::VectorXd& preact, const Eigen::VectorXd& d_out,
                                   Activation act);

} // namespace trafficast::nn
