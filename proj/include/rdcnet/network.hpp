// network.hpp
// Correlation matrix of window returns, the distance transform
// d = sqrt(2(1 - rho)), and minimum spanning tree extraction.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "rdcnet/ingest.hpp"

namespace rdcnet {

struct CorrelationMatrix {
    std::vector<std::string> assets;
    Eigen::MatrixXd rho;  // symmetric, unit diagonal, entries in [-1, 1]

    void validate() const;  // throws ComputeError on invariant violation
};

struct DistanceMatrix {
    std::vector<std::string> assets;
    Eigen::MatrixXd d;  // symmetric, zero diagonal, entries in [0, 2]
};

struct MstEdge {
    int u = 0;  // u < v, indices into assets
    int v = 0;
    double weight = 0.0;
};

// Spanning tree over the window's assets. Downstream centrality uses the
// binary adjacency; a distance-weighted variant is available behind a flag.
struct MstTree {
    std::vector<std::string> assets;
    std::vector<MstEdge> edges;  // n - 1 edges, sorted by (u, v)

    Eigen::MatrixXd adjacency(bool weighted = false) const;
    double total_weight() const;
};

// Pearson correlation of two equal-length samples. Requires >= 2 points and
// nonzero variance in both. Result clamped to [-1, 1].
double pearson(std::span<const double> x, std::span<const double> y);

// Pearson correlation on the pairwise-common dates of two return series.
// Throws ComputeError when fewer than min_overlap dates are shared or a
// series is constant on the overlap.
double pearson(const ReturnSeries& x, const ReturnSeries& y, int min_overlap = 30);

// Correlation matrix over the window's assets using pairwise-common dates.
// Assets with a constant return series, or without min_overlap common dates
// with any other asset, are dropped with a warning; a surviving pair still
// below min_overlap is an error, as is ending with fewer than 3 survivors.
CorrelationMatrix correlation_matrix(const WindowPanel& window, int min_overlap = 30);

// Entrywise d_ij = sqrt(2 (1 - rho_ij)). Arguments that underflow negative
// by less than 1e-12 are clamped to zero before the square root.
DistanceMatrix to_distance(const CorrelationMatrix& rho);

// Kruskal MST over the complete graph defined by dist. Deterministic: edges
// are processed in (weight, u, v) order, so exact ties break lexicographically.
// Requires n >= 2.
MstTree minimum_spanning_tree(const DistanceMatrix& dist);

}  // namespace rdcnet
