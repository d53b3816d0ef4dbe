#include "trafficast/cluster/wavelet.hpp"

#include <cmath>

#include "trafficast/util/parallel.hpp"

namespace trafficast {
namespace {

// Daubechies-6 scaling taps, exact to published precision.
const double kDb6[12] = {
    0.11154074335008017,   0.4946238903983854,    0.7511339080215775,
    0.3152503517092432,    -0.22626469396516913,  -0.12976686756709563,
    0.09750160558707936,   0.02752286553001629,   -0.03158203931803116,
    0.0005538422009938016, 0.004777257511010651,  -0.00107730108499558};

} // namespace

const Eigen::VectorXd& db6_lowpass() {
    static const Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(kDb6, 12);
    return h;
}

const Eigen::VectorXd& db6_highpass() {
    static const Eigen::VectorXd g = [] {
        Eigen::VectorXd v(12);
        for (int k = 0; k < 12; ++k) v[k] = (k % 2 == 0 ? 1.0 : -1.0) * kDb6[11 - k];
        return v;
    }();
    return g;
}

Eigen::VectorXd standardize(const Eigen::VectorXd& values) {
    const Eigen::Index n = values.size();
    if (n < 2) throw ValidationError("standardize: need at least 2 samples");
    double mean = values.mean();
    double var = (values.array() - mean).square().sum() / static_cast<double>(n - 1);
    if (var <= 0.0) throw ValidationError("standardize: constant series");
    return (values.array() - mean) / std::sqrt(var);
}

double WaveletPyramid::total_energy() const {
    double e = approximation.squaredNorm();
    for (const auto& d : details) e += d.squaredNorm();
    return e;
}

WaveletPyramid dwt_db6(const Eigen::VectorXd& values, int levels) {
    const Eigen::Index n = values.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw ValidationError("dwt_db6: input length must be a power of two >= 2");
    int max_levels = 0;
    for (Eigen::Index m = n; m > 1; m >>= 1) ++max_levels;
    if (levels < 1 || levels > max_levels)
        throw ValidationError("dwt_db6: levels must be in [1, log2(length)]");

    const Eigen::VectorXd& h = db6_lowpass();
    const Eigen::VectorXd& g = db6_highpass();

    WaveletPyramid pyr;
    pyr.details.resize(static_cast<std::size_t>(levels));

    Eigen::VectorXd approx = values;
    for (int level = 0; level < levels; ++level) {
        const Eigen::Index m = approx.size();
        const Eigen::Index half = m / 2;
        Eigen::VectorXd a(half), d(half);
        for (Eigen::Index i = 0; i < half; ++i) {
            double sa = 0.0, sd = 0.0;
            for (int k = 0; k < 12; ++k) {
                double x = approx[(2 * i + k) % m]; // periodic wrap
                sa += h[k] * x;
                sd += g[k] * x;
            }
            a[i] = sa;
            d[i] = sd;
        }
        // details[levels-1-level]: the final (coarsest) level lands at index 0
        pyr.details[static_cast<std::size_t>(levels - 1 - level)] = std::move(d);
        approx = std::move(a);
    }
    pyr.approximation = std::move(approx);
    return pyr;
}

WaveletFeatures relative_energies(const WaveletPyramid& pyramid) {
    const int J = static_cast<int>(pyramid.details.size());
    if (J < 3) throw ValidationError("relative_energies: need at least 3 detail scales");
    Eigen::VectorXd energies(J);
    for (int j = 0; j < J; ++j) energies[j] = pyramid.details[static_cast<std::size_t>(j)].squaredNorm();
    double total = energies.sum();
    if (total <= 0.0) throw ValidationError("relative_energies: all detail coefficients are zero");
    WaveletFeatures f;
    f.rel = energies / total;
    f.selected = f.rel.head<3>();
    return f;
}

WaveletFeatures wavelet_features(const SpeedSeries& series) {
    Eigen::Index pow2 = 1;
    while (pow2 * 2 <= series.values.size()) pow2 *= 2;
    if (pow2 < 8) throw ValidationError("wavelet_features: series too short");
    Eigen::VectorXd z = standardize(series.values.head(pow2));
    int levels = 0;
    for (Eigen::Index m = pow2; m > 1; m >>= 1) ++levels;
    WaveletFeatures f = relative_energies(dwt_db6(z, levels));
    f.link_id = series.link_id;
    return f;
}

Eigen::MatrixXd wavelet_feature_matrix(const SeriesSet& set, std::vector<LinkId>* ids_out,
                                       int threads) {
    std::vector<LinkId> ids = set.link_ids();
    Eigen::MatrixXd features(static_cast<Eigen::Index>(ids.size()), 3);
    parallel_for(ids.size(), threads, [&](std::size_t i) {
        WaveletFeatures f = wavelet_features(set.at(ids[i]));
        features.row(static_cast<Eigen::Index>(i)) = f.selected.transpose();
    });
    if (ids_out) *ids_out = std::move(ids);
    return features;
}

} // namespace trafficast
