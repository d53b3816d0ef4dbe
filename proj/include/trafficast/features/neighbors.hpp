#pragma once

#include <map>
#include <vector>

#include "trafficast/core/graph.hpp"

namespace trafficast {

/// The k nearest incoming (upstream) and outgoing (downstream) links of one
/// link, ordered by cumulative path length then link id; padded with the link
/// itself when the graph offers fewer than k.
struct NeighborSet {
    LinkId link_id;
    std::vector<LinkId> incoming;
    std::vector<LinkId> outgoing;
};

using NeighborMap = std::map<LinkId, NeighborSet>;

/// Deterministic neighbor search: best-first expansion upstream (links whose
/// to_node chains to this link's from_node) and downstream, ranked by
/// (cumulative length_m, link_id).
NeighborMap neighbor_sets(const RoadGraph& graph, int k = 5);

/// Row order of one link's block in the convolution tensors: the link itself,
/// the k incoming neighbors, then the k outgoing neighbors (2k+1 rows).
std::vector<LinkId> block_row_links(const NeighborSet& n);

} // namespace trafficast
