#pragma once

#include <vector>

#include <Eigen/Dense>

#include "trafficast/core/series.hpp"

namespace trafficast {

/// Zero-mean, unit sample-std transform. Throws on constant input.
Eigen::VectorXd standardize(const Eigen::VectorXd& values);

/// Output of the fast orthonormal wavelet transform. details[j] holds the
/// scale-j detail coefficients with 2^j entries (j=0 coarsest / lowest
/// frequency), approximation the remaining scaling coefficients.
struct WaveletPyramid {
    std::vector<Eigen::VectorXd> details;
    Eigen::VectorXd approximation;

    double total_energy() const;
};

/// Daubechies-6 (12-tap, six vanishing moments) fast wavelet transform with
/// periodic boundary handling. Input length must be a power of two >= 2^levels.
WaveletPyramid dwt_db6(const Eigen::VectorXd& values, int levels);

/// The 12 analysis low-pass taps (orthonormal, sum sqrt(2)).
const Eigen::VectorXd& db6_lowpass();
/// Quadrature mirror high-pass taps.
const Eigen::VectorXd& db6_highpass();

/// Relative detail energies rel_j = |d_j|^2 / sum_j |d_j|^2 over detail scales
/// only, plus the 3 lowest-frequency (coarsest) entries used as clustering
/// features. Throws when every detail coefficient is zero.
struct WaveletFeatures {
    LinkId link_id = 0;
    Eigen::VectorXd rel;      // length J, sums to 1
    Eigen::Vector3d selected; // rel[0..2], coarsest scales
};

WaveletFeatures relative_energies(const WaveletPyramid& pyramid);

/// Clustering features for one series: standardize, truncate to the largest
/// power of two, transform at full depth, keep the 3 coarsest energies.
WaveletFeatures wavelet_features(const SpeedSeries& series);

/// Feature matrix (n_links x 3) for all links in the set, row order by id.
Eigen::MatrixXd wavelet_feature_matrix(const SeriesSet& set, std::vector<LinkId>* ids_out,
                                       int threads = 1);

} // namespace trafficast
