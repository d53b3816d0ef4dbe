#include "trafficast/nn/mlp.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "trafficast/nn/loss.hpp"
#include "trafficast/util/binio.hpp"

namespace trafficast::nn {

MlpNet::MlpNet(const std::vector<int>& dims) {
    if (dims.size() < 2) throw ValidationError("mlp needs at least input and output dims");
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        Activation act = (i + 2 == dims.size()) ? Activation::Identity : Activation::ReLU;
        layers_.emplace_back(dims[i], dims[i + 1], act);
    }
}

void MlpNet::init_weights(Rng& rng) {
    for (auto& l : layers_) l.init_weights(rng);
}

Eigen::MatrixXd MlpNet::forward(const Eigen::MatrixXd& X) {
    Eigen::MatrixXd cur = X;
    for (auto& l : layers_) cur = l.forward(cur);
    return cur;
}

Eigen::MatrixXd MlpNet::forward_const(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd cur = X;
    for (const auto& l : layers_) cur = l.forward_const(cur);
    return cur;
}

void MlpNet::backward(const Eigen::MatrixXd& d_out) {
    Eigen::MatrixXd cur = d_out;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) cur = it->backward(cur);
}

ParamBlocks MlpNet::params() {
    ParamBlocks out;
    for (std::size_t i = 0; i < layers_.size(); ++i)
        layers_[i].collect_params(out, "dense" + std::to_string(i));
    return out;
}

void MlpNet::save(std::ostream& os) const {
    binio::write_i64(os, static_cast<std::int64_t>(layers_.size()));
    for (const auto& l : layers_) l.save(os);
}

MlpNet MlpNet::load(std::istream& is) {
    std::int64_t n = binio::read_i64(is);
    MlpNet net;
    net.layers_.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) net.layers_.push_back(DenseLayer::load(is));
    return net;
}

double mean_rmse(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw ValidationError("mean_rmse: shape mismatch");
    double acc = 0.0;
    for (Eigen::Index c = 0; c < pred.cols(); ++c)
        acc += std::sqrt((pred.col(c) - target.col(c)).squaredNorm() /
                         static_cast<double>(pred.rows()));
    return acc / static_cast<double>(pred.cols());
}

std::vector<Eigen::Index> epoch_permutation(Eigen::Index n, std::uint64_t seed, int epoch) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    Rng rng(Rng::derive(seed, 0xE90C + static_cast<std::uint64_t>(epoch)));
    rng.shuffle(idx);
    return idx;
}

FitTrace train_regressor(MlpNet& net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                         const Eigen::MatrixXd& X_val, const Eigen::MatrixXd& Y_val,
                         const TrainConfig& cfg) {
    cfg.validate();
    if (X.rows() != Y.rows() || X.rows() == 0)
        throw ValidationError("train_regressor: bad training shapes");

    ParamBlocks params = net.params();
    Optimizer opt(cfg.optimizer, cfg.learning_rate, cfg.weight_decay);

    FitTrace trace;
    double best = std::numeric_limits<double>::infinity();
    std::vector<Eigen::VectorXd> best_params = snapshot(params);
    int since_best = 0;

    const Eigen::Index n = X.rows();
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::vector<Eigen::Index> order = epoch_permutation(n, cfg.seed, epoch);
        for (Eigen::Index at = 0; at < n; at += cfg.batch_size) {
            const Eigen::Index bs = std::min<Eigen::Index>(cfg.batch_size, n - at);
            Eigen::MatrixXd xb(bs, X.cols()), yb(bs, Y.cols());
            for (Eigen::Index r = 0; r < bs; ++r) {
                xb.row(r) = X.row(order[static_cast<std::size_t>(at + r)]);
                yb.row(r) = Y.row(order[static_cast<std::size_t>(at + r)]);
            }
            zero_grads(params);
            Eigen::MatrixXd pred = net.forward(xb);
            MseResult mse = mse_loss(pred, yb);
            if (!std::isfinite(mse.loss))
                throw std::runtime_error(
                    "training diverged: loss is not finite at epoch " + std::to_string(epoch) +
                    " (lr=" + std::to_string(cfg.learning_rate) + ")");
            net.backward(mse.d_pred);
            opt.step(params);
        }
        ++trace.epochs_run;

        double val = mean_rmse(net.forward_const(X_val), Y_val);
        trace.val_rmse_per_epoch.push_back(val);
        if (val < best) {
            best = val;
            best_params = snapshot(params);
            since_best = 0;
        } else if (++since_best >= cfg.patience) {
            break;
        }
    }
    restore(params, best_params);
    trace.best_val_rmse = best;
    return trace;
}

} // namespace trafficast::nn
