#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/core/graph.hpp"

namespace trafficast {

/// K-means result. assignment[i] is the cluster of row i of the input matrix.
struct ClusterAssignment {
    int K = 0;
    std::vector<int> assignment;
    Eigen::MatrixXd centroids; // K x dim
    double inertia = 0.0;
};

/// Lloyd's algorithm with k-means++ seeding. Deterministic given the seed;
/// assignment ties break toward the lower cluster index.
ClusterAssignment kmeans(const Eigen::MatrixXd& points, int K, std::uint64_t seed,
                         int max_iter = 300, double tol = 1e-6);

/// Mean silhouette with Euclidean distance; singleton clusters score 0.
/// Requires K >= 2 and throws when all pairwise distances vanish.
double silhouette(const Eigen::MatrixXd& points, const ClusterAssignment& clusters);

struct KSelection {
    int K = 0;
    std::vector<double> inertia;     // index 0 -> K=1
    std::vector<double> silhouettes; // index 0 -> K=2
};

/// Run kmeans for K=2..k_max (seeds derived as seed+K) and pick the K with the
/// best silhouette at or past the elbow (maximum second difference of the
/// inertia curve).
KSelection select_k(const Eigen::MatrixXd& points, int k_max, std::uint64_t seed);

/// Per-link cluster labels, the form consumed by the cluster-based predictor.
struct LinkClusters {
    int K = 0;
    std::map<LinkId, int> cluster_of;

    std::vector<std::vector<LinkId>> members() const;
};

LinkClusters assign_links(const std::vector<LinkId>& ids, const ClusterAssignment& clusters);

/// Cluster CSV (`link_id,cluster`) and curve CSV (`K,inertia,silhouette`).
void write_clusters_csv(const LinkClusters& clusters, const std::string& path);
LinkClusters read_clusters_csv(const std::string& path);
void write_cluster_curves_csv(const KSelection& sel, const std::string& path);

} // namespace trafficast
