#include "trafficast/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace trafficast::nn {

double grad_check(ParamBlocks& params, const std::function<double()>& loss_and_grad, double eps,
                  double floor) {
    zero_grads(params);
    loss_and_grad();
    std::vector<Eigen::VectorXd> analytic;
    analytic.reserve(params.size());
    for (const auto& b : params)
        analytic.emplace_back(Eigen::Map<const Eigen::VectorXd>(b.grad, b.size));

    double max_rel = 0.0;
    for (std::size_t bi = 0; bi < params.size(); ++bi) {
        auto& blk = params[bi];
        for (Eigen::Index i = 0; i < blk.size; ++i) {
            const double saved = blk.value[i];
            blk.value[i] = saved + eps;
            zero_grads(params);
            double lp = loss_and_grad();
            blk.value[i] = saved - eps;
            zero_grads(params);
            double lm = loss_and_grad();
            blk.value[i] = saved;
            double fd = (lp - lm) / (2.0 * eps);
            double g = analytic[bi][i];
            double rel = std::abs(fd - g) / std::max({std::abs(fd), std::abs(g), floor});
            max_rel = std::max(max_rel, rel);
        }
    }
    // leave the analytic gradients in place for the caller
    zero_grads(params);
    loss_and_grad();
    return max_rel;
}

} // namespace trafficast::nn
