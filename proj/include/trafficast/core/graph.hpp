#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "trafficast/common.hpp"

namespace trafficast {

using LinkId = std::int64_t;
using NodeId = std::int64_t;

/// One directed road segment.
struct LinkRecord {
    LinkId link_id;
    NodeId from_node;
    NodeId to_node;
    double length_m;
    double free_flow_kmh;
};

/// Directed link graph. Immutable after construction; the link weights of the
/// network are carried as physical segment lengths.
class RoadGraph {
public:
    RoadGraph() = default;
    explicit RoadGraph(std::vector<LinkRecord> links);

    const std::vector<LinkRecord>& links() const { return links_; }
    const std::set<NodeId>& nodes() const { return nodes_; }
    std::size_t size() const { return links_.size(); }

    bool has_link(LinkId id) const { return by_id_.count(id) != 0; }
    const LinkRecord& link(LinkId id) const;

    /// Links whose to_node equals `node` (immediate upstream of any link
    /// starting at `node`).
    const std::vector<LinkId>& links_into(NodeId node) const;
    /// Links whose from_node equals `node`.
    const std::vector<LinkId>& links_out_of(NodeId node) const;

private:
    std::vector<LinkRecord> links_;
    std::set<NodeId> nodes_;
    std::unordered_map<LinkId, std::size_t> by_id_;
    std::unordered_map<NodeId, std::vector<LinkId>> into_;
    std::unordered_map<NodeId, std::vector<LinkId>> out_of_;
    std::vector<LinkId> empty_;
};

/// Read a graph CSV with header `link_id,from_node,to_node,length_m,free_flow_kmh`.
RoadGraph read_graph_csv(const std::string& path);

/// Write the same format back.
void write_graph_csv(const RoadGraph& graph, const std::string& path);

} // namespace trafficast
