#include "trafficast/cluster/kmeans.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "trafficast/util/csvio.hpp"
#include "trafficast/util/rng.hpp"

namespace trafficast {
namespace {

double sq_dist(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids,
               Eigen::Index c) {
    return (points.row(i) - centroids.row(c)).squaredNorm();
}

// nearest centroid, ties to the lower cluster index
int nearest(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centroids,
            double* dist_out = nullptr) {
    int best = 0;
    double best_d = sq_dist(points, i, centroids, 0);
    for (Eigen::Index c = 1; c < centroids.rows(); ++c) {
        double d = sq_dist(points, i, centroids, c);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    if (dist_out) *dist_out = best_d;
    return best;
}

Eigen::MatrixXd kmeanspp_seed(const Eigen::MatrixXd& points, int K, Rng& rng) {
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd centroids(K, points.cols());
    centroids.row(0) = points.row(static_cast<Eigen::Index>(rng.uniform_index(
        static_cast<std::uint64_t>(n))));
    Eigen::VectorXd d2(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d2[i] = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < K; ++c) {
        double total = d2.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            // all mass collapsed; fall back to the lowest point index
            pick = static_cast<Eigen::Index>(c % n);
        }
        centroids.row(c) = points.row(pick);
        for (Eigen::Index i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], (points.row(i) - centroids.row(c)).squaredNorm());
    }
    return centroids;
}

} // namespace

ClusterAssignment kmeans(const Eigen::MatrixXd& points, int K, std::uint64_t seed, int max_iter,
                         double tol) {
    const Eigen::Index n = points.rows();
    if (K <= 0 || K > n)
        throw ValidationError("kmeans: K must be in [1, #points], got " + std::to_string(K));

    Rng rng(Rng::derive(seed, 0xC1A5));
    ClusterAssignment res;
    res.K = K;
    res.centroids = kmeanspp_seed(points, K, rng);
    res.assignment.assign(static_cast<std::size_t>(n), 0);

    double prev_inertia = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < max_iter; ++iter) {
        double inertia = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double d;
            res.assignment[static_cast<std::size_t>(i)] = nearest(points, i, res.centroids, &d);
            inertia += d;
        }
        // recompute centroids; an emptied cluster grabs the point farthest
        // from its centroid (lowest index on ties)
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, points.cols());
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(K);
        for (Eigen::Index i = 0; i < n; ++i) {
            sums.row(res.assignment[static_cast<std::size_t>(i)]) += points.row(i);
            counts[res.assignment[static_cast<std::size_t>(i)]] += 1.0;
        }
        for (int c = 0; c < K; ++c) {
            if (counts[c] > 0.0) {
                res.centroids.row(c) = sums.row(c) / counts[c];
            } else {
                Eigen::Index far = 0;
                double far_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    double d = sq_dist(points, i, res.centroids,
                                       res.assignment[static_cast<std::size_t>(i)]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                res.centroids.row(c) = points.row(far);
            }
        }
        res.inertia = inertia;
        if (prev_inertia - inertia < tol) break;
        prev_inertia = inertia;
    }
    // final assignment against the converged centroids keeps the fixed-point
    // property (reassigning changes nothing)
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double d;
        res.assignment[static_cast<std::size_t>(i)] = nearest(points, i, res.centroids, &d);
        inertia += d;
    }
    res.inertia = inertia;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(K, points.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(K);
    for (Eigen::Index i = 0; i < n; ++i) {
        sums.row(res.assignment[static_cast<std::size_t>(i)]) += points.row(i);
        counts[res.assignment[static_cast<std::size_t>(i)]] += 1.0;
    }
    for (int c = 0; c < K; ++c)
        if (counts[c] > 0.0) res.centroids.row(c) = sums.row(c) / counts[c];
    return res;
}

double silhouette(const Eigen::MatrixXd& points, const ClusterAssignment& clusters) {
    const Eigen::Index n = points.rows();
    const int K = clusters.K;
    if (K < 2) throw ValidationError("silhouette: needs at least 2 clusters");

    std::vector<std::int64_t> sizes(static_cast<std::size_t>(K), 0);
    for (int a : clusters.assignment) sizes[static_cast<std::size_t>(a)]++;
    for (std::int64_t s : sizes)
        if (s == 0) throw ValidationError("silhouette: empty cluster");

    // mean distance from each point to each cluster
    Eigen::MatrixXd dist_sum = Eigen::MatrixXd::Zero(n, K);
    double any_dist = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = (points.row(i) - points.row(j)).norm();
            any_dist += d;
            dist_sum(i, clusters.assignment[static_cast<std::size_t>(j)]) += d;
            dist_sum(j, clusters.assignment[static_cast<std::size_t>(i)]) += d;
        }
    }
    if (any_dist <= 0.0)
        throw ValidationError("silhouette: degenerate input, all pairwise distances are zero");

    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        int own = clusters.assignment[static_cast<std::size_t>(i)];
        if (sizes[static_cast<std::size_t>(own)] == 1) continue; // convention s=0
        double a = dist_sum(i, own) / static_cast<double>(sizes[static_cast<std::size_t>(own)] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < K; ++c) {
            if (c == own) continue;
            b = std::min(b, dist_sum(i, c) / static_cast<double>(sizes[static_cast<std::size_t>(c)]));
        }
        double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

KSelection select_k(const Eigen::MatrixXd& points, int k_max, std::uint64_t seed) {
    const Eigen::Index n = points.rows();
    if (k_max < 2) throw ValidationError("select_k: k_max must be >= 2");
    if (n <= k_max)
        throw ValidationError("select_k: need more points than k_max");

    KSelection sel;
    sel.inertia.reserve(static_cast<std::size_t>(k_max));
    sel.silhouettes.reserve(static_cast<std::size_t>(k_max - 1));
    for (int K = 1; K <= k_max; ++K) {
        ClusterAssignment c = kmeans(points, K, seed + static_cast<std::uint64_t>(K));
        sel.inertia.push_back(c.inertia);
        if (K >= 2) sel.silhouettes.push_back(silhouette(points, c));
    }

    // elbow: maximum second difference of the inertia curve, smallest K wins ties
    int elbow = 2;
    double best_curv = -std::numeric_limits<double>::infinity();
    for (int K = 2; K <= k_max - 1; ++K) {
        double curv = sel.inertia[static_cast<std::size_t>(K - 2)] -
                      2.0 * sel.inertia[static_cast<std::size_t>(K - 1)] +
                      sel.inertia[static_cast<std::size_t>(K)];
        if (curv > best_curv) {
            best_curv = curv;
            elbow = K;
        }
    }
    // best silhouette at or past the elbow
    int best_k = elbow;
    double best_s = -std::numeric_limits<double>::infinity();
    for (int K = elbow; K <= k_max; ++K) {
        double s = sel.silhouettes[static_cast<std::size_t>(K - 2)];
        if (s > best_s) {
            best_s = s;
            best_k = K;
        }
    }
    sel.K = best_k;
    return sel;
}

std::vector<std::vector<LinkId>> LinkClusters::members() const {
    std::vector<std::vector<LinkId>> out(static_cast<std::size_t>(K));
    for (const auto& [id, c] : cluster_of) out[static_cast<std::size_t>(c)].push_back(id);
    return out;
}

LinkClusters assign_links(const std::vector<LinkId>& ids, const ClusterAssignment& clusters) {
    if (ids.size() != clusters.assignment.size())
        throw ValidationError("assign_links: id/assignment size mismatch");
    LinkClusters out;
    out.K = clusters.K;
    for (std::size_t i = 0; i < ids.size(); ++i) out.cluster_of[ids[i]] = clusters.assignment[i];
    return out;
}

void write_clusters_csv(const LinkClusters& clusters, const std::string& path) {
    std::ostringstream os;
    os << "link_id,cluster\n";
    for (const auto& [id, c] : clusters.cluster_of) os << id << ',' << c << '\n';
    write_text_file(path, os.str());
}

LinkClusters read_clusters_csv(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "link_id,cluster")
        throw ValidationError("bad cluster csv: " + path);
    LinkClusters out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 2)
            throw ValidationError("cluster csv row " + std::to_string(i + 1) + " malformed");
        int c = std::stoi(f[1]);
        out.cluster_of[std::stoll(f[0])] = c;
        out.K = std::max(out.K, c + 1);
    }
    return out;
}

void write_cluster_curves_csv(const KSelection& sel, const std::string& path) {
    std::ostringstream os;
    os << "K,inertia,silhouette\n";
    char buf[96];
    for (std::size_t i = 0; i < sel.inertia.size(); ++i) {
        int K = static_cast<int>(i) + 1;
        if (K >= 2) {
            std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g", K, sel.inertia[i],
                          sel.silhouettes[i - 1]);
        } else {
            std::snprintf(buf, sizeof(buf), "%d,%.12g,", K, sel.inertia[i]);
        }
        os << buf << '\n';
    }
    write_text_file(path, os.str());
}

} // namespace trafficast
