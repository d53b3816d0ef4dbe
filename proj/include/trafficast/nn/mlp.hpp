#pragma once

#include <iosfwd>
#include <vector>

#include "trafficast/nn/dense.hpp"
#include "trafficast/nn/optimizer.hpp"

namespace trafficast::nn {

/// Plain feed-forward stack: ReLU hidden layers, identity output.
class MlpNet {
public:
    MlpNet() = default;

    /// dims = {input, hidden..., output}; one dense layer per consecutive pair.
    explicit MlpNet(const std::vector<int>& dims);

    void init_weights(Rng& rng);

    Eigen::MatrixXd forward(const Eigen::MatrixXd& X);
    Eigen::MatrixXd forward_const(const Eigen::MatrixXd& X) const;
    void backward(const Eigen::MatrixXd& d_out);

    ParamBlocks params();

    int input_dim() const { return layers_.front().input_dim(); }
    int output_dim() const { return layers_.back().output_dim(); }
    std::size_t depth() const { return layers_.size(); }

    void save(std::ostream& os) const;
    static MlpNet load(std::istream& is);

private:
    std::vector<DenseLayer> layers_;
};

struct FitTrace {
    int epochs_run = 0;
    double best_val_rmse = 0.0;
    std::vector<double> val_rmse_per_epoch;
};

/// Mini-batch training with MSE loss, deterministic shuffling (a pure
/// function of seed and epoch), early stopping on the mean validation RMSE
/// across output columns, and best-weights restore. Throws on divergence.
FitTrace train_regressor(MlpNet& net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                         const Eigen::MatrixXd& X_val, const Eigen::MatrixXd& Y_val,
                         const TrainConfig& cfg);

/// Mean over output columns of the per-column RMSE.
double mean_rmse(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target);

/// Deterministic batch order for one epoch.
std::vector<Eigen::Index> epoch_permutation(Eigen::Index n, std::uint64_t seed, int epoch);

} // namespace trafficast::nn
