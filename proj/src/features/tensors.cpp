#include "trafficast/features/tensors.hpp"

namespace trafficast {

GcnnTensorBatch build_gcnn_tensors(const SeriesSet& set, const NeighborMap& neighbors,
                                   std::int64_t t, const WindowParams& params) {
    params.validate();
    if (t < params.min_origin())
        throw ValidationError("insufficient history at index " + std::to_string(t));
    WindowIndexRanges r = window_index_ranges(t, params);

    GcnnTensorBatch batch;
    batch.link_ids.reserve(neighbors.size());
    batch.t_n.reserve(neighbors.size());
    batch.t_d.reserve(neighbors.size());
    batch.t_w.reserve(neighbors.size());
    batch.context.resize(static_cast<Eigen::Index>(neighbors.size()), WindowParams::kContextDim);

    Eigen::Vector4d ctx = context_features(t, set.axis());
    Eigen::Index row = 0;
    for (const auto& [id, nset] : neighbors) {
        std::vector<LinkId> rows = block_row_links(nset);
        if (batch.k == 0) batch.k = static_cast<int>(nset.incoming.size());
        const Eigen::Index height = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd bn(height, params.w_n);
        Eigen::MatrixXd bd(height, 2 * params.w_d);
        Eigen::MatrixXd bw(height, 2 * params.w_w);
        for (Eigen::Index j = 0; j < height; ++j) {
            const SpeedSeries& s = set.at(rows[static_cast<std::size_t>(j)]);
            bn.row(j) = s.values.segment(r.recent.lo, params.w_n).transpose();
            bd.row(j) = s.values.segment(r.daily.lo, 2 * params.w_d).transpose();
            bw.row(j) = s.values.segment(r.weekly.lo, 2 * params.w_w).transpose();
        }
        batch.link_ids.push_back(id);
        batch.t_n.push_back(std::move(bn));
        batch.t_d.push_back(std::move(bd));
        batch.t_w.push_back(std::move(bw));
        batch.context.row(row++) = ctx.transpose();
    }
    return batch;
}

} // namespace trafficast
