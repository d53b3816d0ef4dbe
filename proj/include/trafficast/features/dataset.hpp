#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/features/windows.hpp"

namespace trafficast {

/// Windowed feature/target pairs in ascending origin order. `links` lists the
/// links pooled into the matrix (one entry for a per-link dataset); each
/// sample row records which link and origin it came from.
struct SupervisedDataset {
    std::vector<LinkId> links;
    WindowParams windows;
    int k = 0; // neighbor count for tensor-based models, 0 for flat windows
    int h = 12;
    std::vector<LinkId> sample_link;        // per sample
    std::vector<std::int64_t> origins;      // per sample
    Eigen::MatrixXd features;               // n_samples x feature_dim
    Eigen::MatrixXd targets;                // n_samples x h

    Eigen::Index size() const { return features.rows(); }
};

/// Half-open origin range [start, end) on the set's time axis.
struct TimeRange {
    std::int64_t start;
    std::int64_t end;
};

/// One sample per origin t in the range with full history and all h targets
/// inside the range: features from build_windows, targets the true speeds at
/// t+1..t+h.
SupervisedDataset build_dataset(const SeriesSet& set, TimeRange range, const WindowParams& params,
                                int h, LinkId link);

/// Pooled variant over several links (samples grouped by link, ascending
/// origin within each link).
SupervisedDataset build_dataset_pooled(const SeriesSet& set, TimeRange range,
                                       const WindowParams& params, int h,
                                       const std::vector<LinkId>& links);

/// Origins valid for network-scoped models: full history and h targets in
/// range, shared by all links on the common axis.
std::vector<std::int64_t> valid_origins(const SeriesSet& set, TimeRange range,
                                        const WindowParams& params, int h);

/// Binary dataset container (magic TFDS1, little-endian 64-bit floats).
void write_dataset(const SupervisedDataset& ds, const std::string& path);
SupervisedDataset read_dataset(const std::string& path);

} // namespace trafficast
