#include "rdcnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rdcnet/common.hpp"

namespace rdcnet {

namespace {

// Union-find with union by size; used by Kruskal.
class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace

void CorrelationMatrix::validate() const {
    const auto n = static_cast<Eigen::Index>(assets.size());
    if (rho.rows() != n || rho.cols() != n) {
        throw ComputeError("correlation matrix shape mismatch");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (rho(i, i) != 1.0) {
            throw ComputeError("correlation diagonal entry is not 1");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            double v = rho(i, j);
            if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
                throw ComputeError("correlation entry outside [-1, 1]");
            }
            if (rho(i, j) != rho(j, i)) {
                throw ComputeError("correlation matrix is not symmetric");
            }
        }
    }
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ComputeError("pearson: length mismatch");
    }
    if (x.size() < 2) {
        throw ComputeError("pearson: need >= 2 points");
    }
    const auto n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mean_x += x[k];
        mean_y += y[k];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        double dx = x[k] - mean_x;
        double dy = y[k] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ComputeError("pearson: constant sample");
    }
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double pearson(const ReturnSeries& x, const ReturnSeries& y, int min_overlap) {
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(std::min(x.entries.size(), y.entries.size()));
    ys.reserve(xs.capacity());
    std::size_t i = 0, j = 0;
    while (i < x.entries.size() && j < y.entries.size()) {
        if (x.entries[i].date < y.entries[j].date) {
            ++i;
        } else if (y.entries[j].date < x.entries[i].date) {
            ++j;
        } else {
            xs.push_back(x.entries[i].value);
            ys.push_back(y.entries[j].value);
            ++i;
            ++j;
        }
    }
    if (xs.size() < static_cast<std::size_t>(std::max(min_overlap, 2))) {
        throw ComputeError("pearson: overlap of " + x.asset_id + " and " + y.asset_id + " is " +
                           std::to_string(xs.size()) + " < " + std::to_string(min_overlap));
    }
    return pearson(std::span<const double>(xs), std::span<const double>(ys));
}

CorrelationMatrix correlation_matrix(const WindowPanel& window, int min_overlap) {
    const auto n_in = window.returns.size();
    if (window.assets.size() != n_in) {
        throw ComputeError("window assets and returns are not parallel");
    }

    // First pass: mark assets that are constant or lack min_overlap common
    // dates with every other asset. Both degeneracies drop the asset rather
    // than the window.
    std::vector<bool> keep(n_in, true);
    for (std::size_t i = 0; i < n_in; ++i) {
        const auto& entries = window.returns[i].entries;
        if (entries.size() < 2) {
            keep[i] = false;
            logging::warn("dropping " + window.assets[i] + " in " + window.window_id +
                          ": too few returns");
            continue;
        }
        auto [lo, hi] = std::minmax_element(
            entries.begin(), entries.end(),
            [](const ReturnEntry& a, const ReturnEntry& b) { return a.value < b.value; });
        if (lo->value == hi->value) {
            keep[i] = false;
            logging::warn("dropping " + window.assets[i] + " in " + window.window_id +
                          ": constant returns");
        }
    }

    auto overlap_count = [&](std::size_t a, std::size_t b) {
        const auto& xa = window.returns[a].entries;
        const auto& xb = window.returns[b].entries;
        std::size_t i = 0, j = 0, common = 0;
        while (i < xa.size() && j < xb.size()) {
            if (xa[i].date < xb[j].date) {
                ++i;
            } else if (xb[j].date < xa[i].date) {
                ++j;
            } else {
                ++common;
                ++i;
                ++j;
            }
        }
        return common;
    };

    for (std::size_t i = 0; i < n_in; ++i) {
        if (!keep[i]) continue;
        bool any = false;
        for (std::size_t j = 0; j < n_in && !any; ++j) {
            if (j == i || !keep[j]) continue;
            any = overlap_count(i, j) >= static_cast<std::size_t>(min_overlap);
        }
        if (!any) {
            keep[i] = false;
            logging::warn("dropping " + window.assets[i] + " in " + window.window_id +
                          ": no pairing reaches min_overlap");
        }
    }

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < n_in; ++i) {
        if (keep[i]) survivors.push_back(i);
    }
    if (survivors.size() < 3) {
        throw ComputeError("window " + window.window_id + ": fewer than 3 assets survive");
    }

    const auto n = static_cast<Eigen::Index>(survivors.size());
    CorrelationMatrix result;
    result.assets.reserve(survivors.size());
    for (auto idx : survivors) result.assets.push_back(window.assets[idx]);
    result.rho = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = pearson(window.returns[survivors[static_cast<std::size_t>(i)]],
                               window.returns[survivors[static_cast<std::size_t>(j)]], min_overlap);
            result.rho(i, j) = r;
            result.rho(j, i) = r;
        }
    }
    return result;
}

DistanceMatrix to_distance(const CorrelationMatrix& rho) {
    rho.validate();
    DistanceMatrix dist;
    dist.assets = rho.assets;
    const auto n = rho.rho.rows();
    dist.d.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double arg = 2.0 * (1.0 - rho.rho(i, j));
            // rho == 1 can leave arg at -0.0 or a tiny negative after rounding.
            if (arg < 0.0) {
                if (arg < -1e-12) {
                    throw ComputeError("distance argument below zero");
                }
                arg = 0.0;
            }
            dist.d(i, j) = std::sqrt(arg);
        }
        dist.d(i, i) = 0.0;
    }
    return dist;
}

MstTree minimum_spanning_tree(const DistanceMatrix& dist) {
    const auto n = dist.d.rows();
    if (n < 2) {
        throw ComputeError("minimum_spanning_tree: need >= 2 nodes");
    }
    if (static_cast<std::size_t>(n) != dist.assets.size() || dist.d.cols() != n) {
        throw ComputeError("minimum_spanning_tree: shape mismatch");
    }

    struct Candidate {
        double weight;
        int u;
        int v;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            candidates.push_back({dist.d(u, v), u, v});
        }
    }
    // (weight, u, v) order makes exact-tie resolution deterministic.
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });

    MstTree tree;
    tree.assets = dist.assets;
    DisjointSet dsu(static_cast<int>(n));
    for (const auto& c : candidates) {
        if (dsu.unite(c.u, c.v)) {
            tree.edges.push_back({c.u, c.v, c.weight});
            if (tree.edges.size() == static_cast<std::size_t>(n) - 1) break;
        }
    }
    if (tree.edges.size() != static_cast<std::size_t>(n) - 1) {
        throw ComputeError("minimum_spanning_tree: graph is not connected");
    }
    std::sort(tree.edges.begin(), tree.edges.end(), [](const MstEdge& a, const MstEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return tree;
}

Eigen::MatrixXd MstTree::adjacency(bool weighted) const {
    const auto n = static_cast<Eigen::Index>(assets.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : edges) {
        double w = weighted ? e.weight : 1.0;
        a(e.u, e.v) = w;
        a(e.v, e.u) = w;
    }
    return a;
}

double MstTree::total_weight() const {
    double total = 0.0;
    for (const auto& e : edges) total += e.weight;
    return total;
}

}  // namespace rdcnet
