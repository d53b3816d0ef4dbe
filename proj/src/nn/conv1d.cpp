#include "trafficast/nn/conv1d.hpp"

#include <istream>
#include <ostream>

#include "trafficast/util/binio.hpp"

namespace trafficast::nn {

void ConvKernel::save(std::ostream& os) const {
    binio::write_mat(os, weights);
    binio::write_f64(os, bias);
}

ConvKernel ConvKernel::load(std::istream& is) {
    Eigen::MatrixXd w = binio::read_mat(is);
    ConvKernel k(static_cast<int>(w.rows()), static_cast<int>(w.cols()));
    k.weights = std::move(w);
    k.bias = binio::read_f64(is);
    return k;
}

Eigen::VectorXd conv_time_forward(const ConvKernel& kernel, const Eigen::MatrixXd& input,
                                  Activation act, Eigen::VectorXd* preact_out) {
    const Eigen::Index height = kernel.weights.rows();
    const Eigen::Index taps = kernel.weights.cols();
    if (input.rows() != height)
        throw ValidationError("conv_time: input height " + std::to_string(input.rows()) +
                              " != kernel height " + std::to_string(height));
    if (input.cols() < taps)
        throw ValidationError("conv_time: input length " + std::to_string(input.cols()) +
                              " shorter than kernel taps " + std::to_string(taps));
    const Eigen::Index out_len = input.cols() - taps + 1;
    Eigen::VectorXd pre(out_len);
    for (Eigen::Index tau = 0; tau < out_len; ++tau)
        pre[tau] = kernel.weights.cwiseProduct(input.middleCols(tau, taps)).sum() + kernel.bias;
    if (preact_out) *preact_out = pre;
    return pre.unaryExpr([act](double v) { return apply_activation(act, v); });
}

Eigen::MatrixXd conv_time_backward(ConvKernel& kernel, const Eigen::MatrixXd& input,
                                   const Eigen::VectorXd& preact, const Eigen::VectorXd& d_out,
                                   Activation act) {
    const Eigen::Index taps = kernel.weights.cols();
    const Eigen::Index out_len = input.cols() - taps + 1;
    if (d_out.size() != out_len || preact.size() != out_len)
        throw ValidationError("conv_time backward: cache/gradient length mismatch");
    Eigen::MatrixXd d_input = Eigen::MatrixXd::Zero(input.rows(), input.cols());
    for (Eigen::Index tau = 0; tau < out_len; ++tau) {
        double dz = d_out[tau] * activation_grad(act, preact[tau]);
        if (dz == 0.0) continue;
        kernel.grad_weights.noalias() += dz * input.middleCols(tau, taps);
        kernel.grad_bias += dz;
        d_input.middleCols(tau, taps).noalias() += dz * kernel.weights;
    }
    return d_input;
}

} // namespace trafficast::nn
