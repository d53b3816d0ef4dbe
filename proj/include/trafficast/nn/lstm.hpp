#pragma once

#include <iosfwd>
#include <vector>

#include "trafficast/nn/types.hpp"
#include "trafficast/util/rng.hpp"

namespace trafficast::nn {

/// One LSTM layer with the textbook gate equations
///   f_t = sig(W_f x_t + U_f h_{t-1} + b_f)
///   i_t = sig(W_i x_t + U_i h_{t-1} + b_i)
///   o_t = sig(W_o x_t + U_o h_{t-1} + b_o)
///   c_t = f_t * c_{t-1} + i_t * tanh(W_c x_t + U_c h_{t-1} + b_c)
///   h_t = o_t * tanh(c_t)
/// with h_0 = c_0 = 0. Batched: each step is a B x dim matrix. Backward is
/// full backpropagation through time over the cached sequence.
class LstmLayer {
public:
    LstmLayer() = default;
    LstmLayer(int d_in, int d_hidden);

    void init_weights(Rng& rng);

    /// xs[t]: B x d_in for t = 0..T-1. Returns hidden states per step
    /// (each B x d_hidden) and caches everything for backward.
    std::vector<Eigen::MatrixXd> forward(const std::vector<Eigen::MatrixXd>& xs);

    /// d_hs[t]: gradient on h_t (zero matrices for unused steps).
    /// Returns gradients on the inputs; accumulates parameter gradients.
    std::vector<Eigen::MatrixXd> backward(const std::vector<Eigen::MatrixXd>& d_hs);

    void collect_params(ParamBlocks& out, const std::string& prefix);

    int input_dim() const { return static_cast<int>(w_[0].rows()); }
    int hidden_dim() const { return static_cast<int>(w_[0].cols()); }

    void save(std::ostream& os) const;
    static LstmLayer load(std::istream& is);

private:
    // gate order: forget, input, output, cell
    static constexpr int kGates = 4;
    Eigen::MatrixXd w_[kGates]; // d_in x d_hidden
    Eigen::MatrixXd u_[kGates]; // d_hidden x d_hidden
    Eigen::VectorXd b_[kGates];

    Eigen::MatrixXd gw_[kGates];
    Eigen::MatrixXd gu_[kGates];
    Eigen::VectorXd gb_[kGates];

    // forward caches
    std::vector<Eigen::MatrixXd> xs_, hs_, cs_;         // inputs, h_t, c_t (1-indexed h/c)
    std::vector<Eigen::MatrixXd> gates_[kGates];        // activated gate values
    std::vector<Eigen::MatrixXd> cell_in_;              // tanh(W_c x + U_c h + b_c)
};

} // namespace trafficast::nn
