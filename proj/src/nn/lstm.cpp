#include "trafficast/nn/lstm.hpp"

#include <istream>
#include <ostream>

#include "trafficast/util/binio.hpp"

namespace trafficast::nn {

LstmLayer::LstmLayer(int d_in, int d_hidden) {
    if (d_in < 1 || d_hidden < 1) throw ValidationError("lstm dims must be >= 1");
    for (int g = 0; g < kGates; ++g) {
        w_[g] = Eigen::MatrixXd::Zero(d_in, d_hidden);
        u_[g] = Eigen::MatrixXd::Zero(d_hidden, d_hidden);
        b_[g] = Eigen::VectorXd::Zero(d_hidden);
        gw_[g] = Eigen::MatrixXd::Zero(d_in, d_hidden);
        gu_[g] = Eigen::MatrixXd::Zero(d_hidden, d_hidden);
        gb_[g] = Eigen::VectorXd::Zero(d_hidden);
    }
}

void LstmLayer::init_weights(Rng& rng) {
    for (int g = 0; g < kGates; ++g) {
        double aw = std::sqrt(6.0 / static_cast<double>(w_[g].rows() + w_[g].cols()));
        double au = std::sqrt(6.0 / static_cast<double>(u_[g].rows() + u_[g].cols()));
        for (Eigen::Index i = 0; i < w_[g].rows(); ++i)
            for (Eigen::Index j = 0; j < w_[g].cols(); ++j) w_[g](i, j) = rng.uniform(-aw, aw);
        for (Eigen::Index i = 0; i < u_[g].rows(); ++i)
            for (Eigen::Index j = 0; j < u_[g].cols(); ++j) u_[g](i, j) = rng.uniform(-au, au);
        b_[g].setZero();
    }
}

std::vector<Eigen::MatrixXd> LstmLayer::forward(const std::vector<Eigen::MatrixXd>& xs) {
    if (xs.empty()) throw ValidationError("lstm forward: empty sequence");
    const Eigen::Index B = xs[0].rows();
    const int H = hidden_dim();
    const std::size_t T = xs.size();

    xs_ = xs;
    hs_.assign(T + 1, Eigen::MatrixXd::Zero(B, H));
    cs_.assign(T + 1, Eigen::MatrixXd::Zero(B, H));
    for (int g = 0; g < kGates; ++g) gates_[g].assign(T, Eigen::MatrixXd());
    cell_in_.assign(T, Eigen::MatrixXd());

    for (std::size_t t = 0; t < T; ++t) {
        if (xs[t].cols() != w_[0].rows() || xs[t].rows() != B)
            throw ValidationError("lstm forward: inconsistent step shapes");
        const Eigen::MatrixXd& h_prev = hs_[t];
        for (int g = 0; g < kGates; ++g) {
            Eigen::MatrixXd a =
                ((xs[t] * w_[g] + h_prev * u_[g]).rowwise() + b_[g].transpose());
            gates_[g][t] = apply_activation(g == 3 ? Activation::Tanh : Activation::Sigmoid, a);
        }
        cell_in_[t] = gates_[3][t];
        cs_[t + 1] = gates_[0][t].cwiseProduct(cs_[t]) + gates_[1][t].cwiseProduct(cell_in_[t]);
        hs_[t + 1] = gates_[2][t].cwiseProduct(cs_[t + 1].array().tanh().matrix());
    }
    return {hs_.begin() + 1, hs_.end()};
}

std::vector<Eigen::MatrixXd> LstmLayer::backward(const std::vector<Eigen::MatrixXd>& d_hs) {
    const std::size_t T = xs_.size();
    if (d_hs.size() != T) throw ValidationError("lstm backward: gradient sequence length mismatch");
    const Eigen::Index B = xs_[0].rows();
    const int H = hidden_dim();

    std::vector<Eigen::MatrixXd> d_xs(T);
    Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(B, H);
    Eigen::MatrixXd dc_next = Eigen::MatrixXd::Zero(B, H);

    for (std::size_t ti = T; ti-- > 0;) {
        const Eigen::MatrixXd& f = gates_[0][ti];
        const Eigen::MatrixXd& i = gates_[1][ti];
        const Eigen::MatrixXd& o = gates_[2][ti];
        const Eigen::MatrixXd& g = cell_in_[ti];
        Eigen::MatrixXd tanh_c = cs_[ti + 1].array().tanh().matrix();

        Eigen::MatrixXd dh = d_hs[ti] + dh_next;
        Eigen::MatrixXd dc =
            dc_next + dh.cwiseProduct(o).cwiseProduct(
                          (1.0 - tanh_c.array().square()).matrix());

        Eigen::MatrixXd da[kGates];
        da[0] = dc.cwiseProduct(cs_[ti]).cwiseProduct(
            f.cwiseProduct((1.0 - f.array()).matrix())); // forget
        da[1] = dc.cwiseProduct(g).cwiseProduct(
            i.cwiseProduct((1.0 - i.array()).matrix())); // input
        da[2] = dh.cwiseProduct(tanh_c).cwiseProduct(
            o.cwiseProduct((1.0 - o.array()).matrix())); // output
        da[3] = dc.cwiseProduct(i).cwiseProduct((1.0 - g.array().square()).matrix()); // cell

        d_xs[ti] = Eigen::MatrixXd::Zero(B, input_dim());
        dh_next.setZero();
        for (int gate = 0; gate < kGates; ++gate) {
            gw_[gate].noalias() += xs_[ti].transpose() * da[gate];
            gu_[gate].noalias() += hs_[ti].transpose() * da[gate];
            gb_[gate] += da[gate].colwise().sum().transpose();
            d_xs[ti].noalias() += da[gate] * w_[gate].transpose();
            dh_next.noalias() += da[gate] * u_[gate].transpose();
        }
        dc_next = dc.cwiseProduct(f);
    }
    return d_xs;
}

void LstmLayer::collect_params(ParamBlocks& out, const std::string& prefix) {
    static const char* names[kGates] = {"f", "i", "o", "c"};
    for (int g = 0; g < kGates; ++g) {
        out.push_back({prefix + ".W" + names[g], w_[g].data(), gw_[g].data(), w_[g].size()});
        out.push_back({prefix + ".U" + names[g], u_[g].data(), gu_[g].data(), u_[g].size()});
        out.push_back({prefix + ".b" + names[g], b_[g].data(), gb_[g].data(), b_[g].size()});
    }
}

void LstmLayer::save(std::ostream& os) const {
    for (int g = 0; g < kGates; ++g) {
        binio::write_mat(os, w_[g]);
        binio::write_mat(os, u_[g]);
        binio::write_vec(os, b_[g]);
    }
}

LstmLayer LstmLayer::load(std::istream& is) {
    Eigen::MatrixXd w0 = binio::read_mat(is);
    LstmLayer layer;
    layer.w_[0] = w0;
    layer.u_[0] = binio::read_mat(is);
    layer.b_[0] = binio::read_vec(is);
    for (int g = 1; g < kGates; ++g) {
        layer.w_[g] = binio::read_mat(is);
        layer.u_[g] = binio::read_mat(is);
        layer.b_[g] = binio::read_vec(is);
    }
    for (int g = 0; g < kGates; ++g) {
        layer.gw_[g] = Eigen::MatrixXd::Zero(layer.w_[g].rows(), layer.w_[g].cols());
        layer.gu_[g] = Eigen::MatrixXd::Zero(layer.u_[g].rows(), layer.u_[g].cols());
        layer.gb_[g] = Eigen::VectorXd::Zero(layer.b_[g].size());
    }
    return layer;
}

} // namespace trafficast::nn
