#pragma once

#include <vector>

#include <Eigen/Dense>

#include "trafficast/features/neighbors.hpp"
#include "trafficast/features/windows.hpp"

namespace trafficast {

/// The three convolution input tensors at one origin time. Each tensor is a
/// stack of N per-link blocks of shape (2k+1) x window; row 0 of a block is
/// the link itself, rows 1..k its incoming neighbors, rows k+1..2k outgoing.
struct GcnnTensorBatch {
    std::vector<LinkId> link_ids;        // block order, ascending
    std::vector<Eigen::MatrixXd> t_n;    // N blocks of (2k+1) x w_n
    std::vector<Eigen::MatrixXd> t_d;    // N blocks of (2k+1) x 2*w_d
    std::vector<Eigen::MatrixXd> t_w;    // N blocks of (2k+1) x 2*w_w
    Eigen::MatrixXd context;             // N x 4
    int k = 0;
};

/// Assemble the tensors for every link in the neighbor map at origin t.
/// Throws if any referenced link has no series in the set.
GcnnTensorBatch build_gcnn_tensors(const SeriesSet& set, const NeighborMap& neighbors,
                                   std::int64_t t, const WindowParams& params);

} // namespace trafficast
