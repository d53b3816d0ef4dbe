#include "trafficast/nn/dense.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "trafficast/util/binio.hpp"

namespace trafficast::nn {

DenseLayer::DenseLayer(int d_in, int d_out, Activation act)
    : W_(Eigen::MatrixXd::Zero(d_in, d_out)),
      b_(Eigen::VectorXd::Zero(d_out)),
      act_(act),
      gW_(Eigen::MatrixXd::Zero(d_in, d_out)),
      gb_(Eigen::VectorXd::Zero(d_out)) {
    if (d_in < 1 || d_out < 1) throw ValidationError("dense layer dims must be >= 1");
}

void DenseLayer::init_weights(Rng& rng) {
    double a = std::sqrt(6.0 / static_cast<double>(W_.rows() + W_.cols()));
    for (Eigen::Index i = 0; i < W_.rows(); ++i)
        for (Eigen::Index j = 0; j < W_.cols(); ++j) W_(i, j) = rng.uniform(-a, a);
    b_.setZero();
}

Eigen::MatrixXd DenseLayer::forward(const Eigen::MatrixXd& X) {
    if (X.cols() != W_.rows())
        throw ValidationError("dense forward: input width " + std::to_string(X.cols()) +
                              " != " + std::to_string(W_.rows()));
    x_cache_ = X;
    z_cache_ = (X * W_).rowwise() + b_.transpose();
    return apply_activation(act_, z_cache_);
}

Eigen::MatrixXd DenseLayer::forward_const(const Eigen::MatrixXd& X) const {
    if (X.cols() != W_.rows())
        throw ValidationError("dense forward: input width " + std::to_string(X.cols()) +
                              " != " + std::to_string(W_.rows()));
    Eigen::MatrixXd z = (X * W_).rowwise() + b_.transpose();
    return apply_activation(act_, z);
}

Eigen::MatrixXd DenseLayer::backward(const Eigen::MatrixXd& dY) {
    if (dY.rows() != z_cache_.rows() || dY.cols() != z_cache_.cols())
        throw ValidationError("dense backward: gradient shape mismatch");
    Eigen::MatrixXd dZ = dY.cwiseProduct(activation_grad(act_, z_cache_));
    gW_.noalias() += x_cache_.transpose() * dZ;
    gb_ += dZ.colwise().sum().transpose();
    return dZ * W_.transpose();
}

void DenseLayer::collect_params(ParamBlocks& out, const std::string& prefix) {
    out.push_back({prefix + ".W", W_.data(), gW_.data(), W_.size()});
    out.push_back({prefix + ".b", b_.data(), gb_.data(), b_.size()});
}

void DenseLayer::save(std::ostream& os) const {
    binio::write_i64(os, static_cast<std::int64_t>(act_));
    binio::write_mat(os, W_);
    binio::write_vec(os, b_);
}

DenseLayer DenseLayer::load(std::istream& is) {
    auto act = static_cast<Activation>(binio::read_i64(is));
    Eigen::MatrixXd W = binio::read_mat(is);
    Eigen::VectorXd b = binio::read_vec(is);
    DenseLayer layer(static_cast<int>(W.rows()), static_cast<int>(W.cols()), act);
    layer.W_ = std::move(W);
    layer.b_ = std::move(b);
    return layer;
}

} // namespace trafficast::nn
