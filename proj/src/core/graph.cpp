#include "trafficast/core/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "trafficast/util/csvio.hpp"

namespace trafficast {

RoadGraph::RoadGraph(std::vector<LinkRecord> links) : links_(std::move(links)) {
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const LinkRecord& l = links_[i];
        if (!by_id_.emplace(l.link_id, i).second)
            throw ValidationError("duplicate link_id " + std::to_string(l.link_id));
        if (!(l.length_m > 0.0))
            throw ValidationError("link " + std::to_string(l.link_id) + ": length_m must be > 0");
        if (!(l.free_flow_kmh > 0.0))
            throw ValidationError("link " + std::to_string(l.link_id) +
                                  ": free_flow_kmh must be > 0");
        nodes_.insert(l.from_node);
        nodes_.insert(l.to_node);
        into_[l.to_node].push_back(l.link_id);
        out_of_[l.from_node].push_back(l.link_id);
    }
    // deterministic adjacency order
    for (auto& [node, ids] : into_) std::sort(ids.begin(), ids.end());
    for (auto& [node, ids] : out_of_) std::sort(ids.begin(), ids.end());
}

const LinkRecord& RoadGraph::link(LinkId id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw ValidationError("unknown link_id " + std::to_string(id));
    return links_[it->second];
}

const std::vector<LinkId>& RoadGraph::links_into(NodeId node) const {
    auto it = into_.find(node);
    return it == into_.end() ? empty_ : it->second;
}

const std::vector<LinkId>& RoadGraph::links_out_of(NodeId node) const {
    auto it = out_of_.find(node);
    return it == out_of_.end() ? empty_ : it->second;
}

RoadGraph read_graph_csv(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ValidationError("graph csv is empty: " + path);
    if (lines[0] != "link_id,from_node,to_node,length_m,free_flow_kmh")
        throw ValidationError("graph csv has unexpected header: " + lines[0]);
    std::vector<LinkRecord> links;
    links.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 5)
            throw ValidationError("graph csv row " + std::to_string(i + 1) + ": expected 5 fields");
        try {
            links.push_back({std::stoll(f[0]), std::stoll(f[1]), std::stoll(f[2]), std::stod(f[3]),
                             std::stod(f[4])});
        } catch (const std::exception&) {
            throw ValidationError("graph csv row " + std::to_string(i + 1) + ": parse failure");
        }
    }
    return RoadGraph(std::move(links));
}

void write_graph_csv(const RoadGraph& graph, const std::string& path) {
    std::ostringstream os;
    os << "link_id,from_node,to_node,length_m,free_flow_kmh\n";
    char lbuf[64], fbuf[64];
    for (const auto& l : graph.links()) {
        // %.17g keeps free_flow_kmh bit-identical across a CSV round trip,
        // which the default-speed removal rule relies on
        std::snprintf(lbuf, sizeof(lbuf), "%.17g", l.length_m);
        std::snprintf(fbuf, sizeof(fbuf), "%.17g", l.free_flow_kmh);
        os << l.link_id << ',' << l.from_node << ',' << l.to_node << ',' << lbuf << ',' << fbuf
           << '\n';
    }
    write_text_file(path, os.str());
}

} // namespace trafficast
