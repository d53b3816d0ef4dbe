#include "trafficast/nn/types.hpp"

namespace trafficast::nn {

Activation activation_from_string(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::ReLU;
    if (s == "tanh") return Activation::Tanh;
    if (s == "sigmoid") return Activation::Sigmoid;
    throw ValidationError("unknown activation '" + s + "'");
}

std::string to_string(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::ReLU: return "relu";
        case Activation::Tanh: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "?";
}

std::vector<Eigen::VectorXd> snapshot(const ParamBlocks& blocks) {
    std::vector<Eigen::VectorXd> snap;
    snap.reserve(blocks.size());
    for (const auto& b : blocks) snap.emplace_back(Eigen::Map<Eigen::VectorXd>(b.value, b.size));
    return snap;
}

void restore(ParamBlocks& blocks, const std::vector<Eigen::VectorXd>& snap) {
    if (snap.size() != blocks.size()) throw ValidationError("parameter snapshot mismatch");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (snap[i].size() != blocks[i].size) throw ValidationError("parameter snapshot mismatch");
        Eigen::Map<Eigen::VectorXd>(blocks[i].value, blocks[i].size) = snap[i];
    }
}

} // namespace trafficast::nn
