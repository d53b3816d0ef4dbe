#include "trafficast/nn/optimizer.hpp"

#include <cmath>

namespace trafficast::nn {

OptimizerKind optimizer_from_string(const std::string& s) {
    if (s == "sgd") return OptimizerKind::SGD;
    if (s == "adam") return OptimizerKind::Adam;
    throw ValidationError("unknown optimizer '" + s + "' (sgd|adam)");
}

std::string to_string(OptimizerKind k) {
    return k == OptimizerKind::SGD ? "sgd" : "adam";
}

void Optimizer::step(ParamBlocks& params) {
    if (kind_ == OptimizerKind::SGD) {
        for (auto& blk : params) {
            Eigen::Map<Eigen::VectorXd> p(blk.value, blk.size);
            Eigen::Map<const Eigen::VectorXd> g(blk.grad, blk.size);
            p -= lr_ * (g + wd_ * p);
        }
        return;
    }
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    if (m_.empty()) {
        for (auto& blk : params) {
            m_.emplace_back(Eigen::VectorXd::Zero(blk.size));
            v_.emplace_back(Eigen::VectorXd::Zero(blk.size));
        }
    }
    if (m_.size() != params.size()) throw ValidationError("optimizer: parameter set changed");
    ++t_;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto& blk = params[i];
        Eigen::Map<Eigen::VectorXd> p(blk.value, blk.size);
        Eigen::Map<const Eigen::VectorXd> g(blk.grad, blk.size);
        m_[i] = beta1 * m_[i] + (1.0 - beta1) * g;
        v_[i] = beta2 * v_[i] + (1.0 - beta2) * g.cwiseProduct(g);
        Eigen::VectorXd update =
            (m_[i] / bc1).cwiseQuotient(((v_[i] / bc2).cwiseSqrt().array() + eps).matrix());
        // decoupled weight decay
        p -= lr_ * update + (lr_ * wd_) * p;
    }
}

} // namespace trafficast::nn
