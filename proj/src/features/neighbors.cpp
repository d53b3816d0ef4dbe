#include "trafficast/features/neighbors.hpp"

#include <queue>
#include <set>

namespace trafficast {
namespace {

// Collect up to k links reachable by repeatedly following the graph in one
// direction, nearest first. `upstream` walks incoming links (to_node ->
// from_node chains); otherwise outgoing.
std::vector<LinkId> expand(const RoadGraph& graph, const LinkRecord& origin, int k,
                           bool upstream) {
    struct Entry {
        double dist_m;
        LinkId link;
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.dist_m != b.dist_m) return a.dist_m > b.dist_m;
        return a.link > b.link;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
    std::set<LinkId> visited{origin.link_id};

    auto push_neighbors = [&](const LinkRecord& from, double base) {
        const auto& next = upstream ? graph.links_into(from.from_node)
                                    : graph.links_out_of(from.to_node);
        for (LinkId id : next) {
            if (visited.count(id)) continue;
            frontier.push({base + graph.link(id).length_m, id});
        }
    };
    push_neighbors(origin, 0.0);

    std::vector<LinkId> found;
    while (!frontier.empty() && static_cast<int>(found.size()) < k) {
        Entry e = frontier.top();
        frontier.pop();
        if (!visited.insert(e.link).second) continue;
        found.push_back(e.link);
        push_neighbors(graph.link(e.link), e.dist_m);
    }
    // padding keeps the tensor shape fixed without inventing zero speeds
    while (static_cast<int>(found.size()) < k) found.push_back(origin.link_id);
    return found;
}

} // namespace

NeighborMap neighbor_sets(const RoadGraph& graph, int k) {
    if (k < 1) throw ValidationError("neighbor_sets: k must be >= 1");
    NeighborMap out;
    for (const auto& rec : graph.links()) {
        NeighborSet n;
        n.link_id = rec.link_id;
        n.incoming = expand(graph, rec, k, true);
        n.outgoing = expand(graph, rec, k, false);
        out.emplace(rec.link_id, std::move(n));
    }
    return out;
}

std::vector<LinkId> block_row_links(const NeighborSet& n) {
    std::vector<LinkId> rows;
    rows.reserve(1 + n.incoming.size() + n.outgoing.size());
    rows.push_back(n.link_id);
    rows.insert(rows.end(), n.incoming.begin(), n.incoming.end());
    rows.insert(rows.end(), n.outgoing.begin(), n.outgoing.end());
    return rows;
}

} // namespace trafficast
