#include "trafficast/features/dataset.hpp"

#include <fstream>

#include "trafficast/util/binio.hpp"

namespace trafficast {

std::vector<std::int64_t> valid_origins(const SeriesSet& set, TimeRange range,
                                        const WindowParams& params, int h) {
    params.validate();
    if (h < 1) throw ValidationError("horizon must be >= 1");
    if (range.start >= range.end) throw ValidationError("empty origin range");
    if (range.start < 0 || range.end > set.axis().count())
        throw ValidationError("origin range outside the time axis");
    std::vector<std::int64_t> origins;
    std::int64_t lo = std::max(range.start, params.min_origin());
    std::int64_t hi = range.end - 1 - h; // targets t+1..t+h stay inside the range
    for (std::int64_t t = lo; t <= hi; ++t) origins.push_back(t);
    if (origins.empty())
        throw ValidationError("origin range [" + std::to_string(range.start) + ", " +
                              std::to_string(range.end) + ") leaves no valid sample");
    return origins;
}

SupervisedDataset build_dataset(const SeriesSet& set, TimeRange range, const WindowParams& params,
                                int h, LinkId link) {
    return build_dataset_pooled(set, range, params, h, {link});
}

SupervisedDataset build_dataset_pooled(const SeriesSet& set, TimeRange range,
                                       const WindowParams& params, int h,
                                       const std::vector<LinkId>& links) {
    std::vector<std::int64_t> origins = valid_origins(set, range, params, h);

    SupervisedDataset ds;
    ds.links = links;
    ds.windows = params;
    ds.h = h;
    const Eigen::Index n = static_cast<Eigen::Index>(links.size() * origins.size());
    ds.features.resize(n, params.feature_dim());
    ds.targets.resize(n, h);
    ds.sample_link.reserve(static_cast<std::size_t>(n));
    ds.origins.reserve(static_cast<std::size_t>(n));

    Eigen::Index row = 0;
    for (LinkId link : links) {
        const SpeedSeries& s = set.at(link);
        for (std::int64_t t : origins) {
            FeatureVector f = build_windows(set, link, t, params);
            ds.features.row(row) = f.stacked().transpose();
            ds.targets.row(row) = s.values.segment(t + 1, h).transpose();
            ds.sample_link.push_back(link);
            ds.origins.push_back(t);
            ++row;
        }
    }
    return ds;
}

void write_dataset(const SupervisedDataset& ds, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open file for writing: " + path);
    binio::write_magic(os, "TFDS1");
    binio::write_i64(os, static_cast<std::int64_t>(ds.links.size()));
    binio::write_i64(os, ds.k);
    binio::write_i64(os, ds.windows.w_n);
    binio::write_i64(os, ds.windows.w_d);
    binio::write_i64(os, ds.windows.w_w);
    binio::write_i64(os, ds.h);
    binio::write_i64(os, ds.size());
    binio::write_i64(os, ds.features.cols());
    binio::write_i64_vec(os, ds.links);
    binio::write_i64_vec(os, ds.sample_link);
    binio::write_i64_vec(os, ds.origins);
    binio::write_mat(os, ds.features);
    binio::write_mat(os, ds.targets);
}

SupervisedDataset read_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open file: " + path);
    binio::expect_magic(is, "TFDS1", path.c_str());
    SupervisedDataset ds;
    std::int64_t n_links = binio::read_i64(is);
    ds.k = static_cast<int>(binio::read_i64(is));
    ds.windows.w_n = static_cast<int>(binio::read_i64(is));
    ds.windows.w_d = static_cast<int>(binio::read_i64(is));
    ds.windows.w_w = static_cast<int>(binio::read_i64(is));
    ds.h = static_cast<int>(binio::read_i64(is));
    std::int64_t n_samples = binio::read_i64(is);
    std::int64_t dim = binio::read_i64(is);
    ds.links = binio::read_i64_vec(is);
    ds.sample_link = binio::read_i64_vec(is);
    ds.origins = binio::read_i64_vec(is);
    ds.features = binio::read_mat(is);
    ds.targets = binio::read_mat(is);
    if (static_cast<std::int64_t>(ds.links.size()) != n_links || ds.size() != n_samples ||
        ds.features.cols() != dim)
        throw ValidationError("dataset file is internally inconsistent: " + path);
    return ds;
}

} // namespace trafficast
