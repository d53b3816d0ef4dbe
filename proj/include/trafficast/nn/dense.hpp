#pragma once

#include <iosfwd>

#include "trafficast/nn/types.hpp"
#include "trafficast/util/rng.hpp"

namespace trafficast::nn {

/// Fully connected layer y = act(W^T x + b), batched over matrix rows.
class DenseLayer {
public:
    DenseLayer() = default;
    DenseLayer(int d_in, int d_out, Activation act);

    void init_weights(Rng& rng); // Glorot uniform, zero bias

    /// X: n x d_in -> n x d_out. Caches input and pre-activation for backward.
    Eigen::MatrixXd forward(const Eigen::MatrixXd& X);

    /// Forward without touching the cache (safe for concurrent scoring).
    Eigen::MatrixXd forward_const(const Eigen::MatrixXd& X) const;

    /// dY: n x d_out -> dX: n x d_in. Accumulates weight/bias gradients.
    Eigen::MatrixXd backward(const Eigen::MatrixXd& dY);

    void collect_params(ParamBlocks& out, const std::string& prefix);

    int input_dim() const { return static_cast<int>(W_.rows()); }
    int output_dim() const { return static_cast<int>(W_.cols()); }
    Activation activation() const { return act_; }

    Eigen::MatrixXd& weights() { return W_; }
    Eigen::VectorXd& bias() { return b_; }
    const Eigen::MatrixXd& weights() const { return W_; }
    const Eigen::VectorXd& bias() const { return b_; }

    void save(std::ostream& os) const;
    static DenseLayer load(std::istream& is);

private:
    Eigen::MatrixXd W_; // d_in x d_out
    Eigen::VectorXd b_;
    Activation act_ = Activation::Identity;

    Eigen::MatrixXd gW_;
    Eigen::VectorXd gb_;
    Eigen::MatrixXd x_cache_, z_cache_;
};

} // namespace trafficast::nn
