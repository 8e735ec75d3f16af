#include "rdcnet/analytics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "rdcnet/common.hpp"
#include "rdcnet/network.hpp"

namespace rdcnet {

namespace {

double two_sided_t_pvalue(double t, double dof) {
    if (!std::isfinite(t)) return 0.0;
    boost::math::students_t dist(dof);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace

std::vector<int> rank_assets(std::span<const double> values,
                             std::span<const std::string> asset_order) {
    if (values.size() != asset_order.size()) {
        throw ComputeError("rank_assets: values and assets are not parallel");
    }
    if (values.empty()) {
        throw ComputeError("rank_assets: empty input");
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending by value; exact ties fall back to lexicographic asset id so
    // the ranking is a deterministic permutation.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return asset_order[a] < asset_order[b];
    });
    std::vector<int> ranks(values.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        ranks[order[pos]] = static_cast<int>(pos) + 1;
    }
    return ranks;
}

RankTable rank_table(const RdcProfile& profile) {
    const auto n = profile.rdc.rows();
    const auto m = profile.rdc.cols();
    if (static_cast<std::size_t>(n) != profile.assets.size() ||
        static_cast<std::size_t>(m) != profile.zetas.size() || n == 0 || m == 0) {
        throw ComputeError("rank_table: malformed profile");
    }

    RankTable table;
    table.assets = profile.assets;
    table.zetas = profile.zetas;
    table.ranks.resize(n, m);

    std::vector<double> column(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < m; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = profile.rdc(i, c);
        auto ranks = rank_assets(column, profile.assets);
        for (Eigen::Index i = 0; i < n; ++i) table.ranks(i, c) = ranks[static_cast<std::size_t>(i)];
    }

    // Population standard deviation of each asset's rank across the grid.
    table.rank_std.resize(n);
    table.rank_std_normalized.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double mean = table.ranks.row(i).cast<double>().mean();
        double ss = 0.0;
        for (Eigen::Index c = 0; c < m; ++c) {
            double d = static_cast<double>(table.ranks(i, c)) - mean;
            ss += d * d;
        }
        table.rank_std(i) = std::sqrt(ss / static_cast<double>(m));
        table.rank_std_normalized(i) = table.rank_std(i) / static_cast<double>(n);
    }
    return table;
}

WindowStats window_stats(const RankTable& table, std::string window_id,
                         const ReturnSeries& index_returns) {
    WindowStats stats = window_stats(table, std::move(window_id));
    if (index_returns.entries.empty()) {
        throw ComputeError("window_stats: empty index return series");
    }
    double sum = 0.0;
    for (const auto& entry : index_returns.entries) sum += entry.value;
    stats.index_avg_daily_return = sum / static_cast<double>(index_returns.entries.size());
    return stats;
}

WindowStats window_stats(const RankTable& table, std::string window_id) {
    if (table.rank_std.size() == 0) {
        throw ComputeError("window_stats: empty rank table");
    }
    WindowStats stats;
    stats.window_id = std::move(window_id);
    stats.n_assets = static_cast<int>(table.assets.size());
    stats.avg_rank_std = table.rank_std.mean();
    stats.avg_rank_std_normalized = table.rank_std_normalized.mean();
    stats.index_avg_daily_return = std::numeric_limits<double>::quiet_NaN();
    return stats;
}

CorrelationTestResult correlation_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ComputeError("correlation_test: length mismatch");
    }
    if (x.size() < 3) {
        throw ComputeError("correlation_test: need >= 3 points");
    }
    CorrelationTestResult result;
    result.n = x.size();
    result.r = pearson(x, y);
    const auto dof = static_cast<double>(x.size() - 2);
    if (std::abs(result.r) >= 1.0) {
        result.p_value = 0.0;
        return result;
    }
    double t = result.r * std::sqrt(dof / (1.0 - result.r * result.r));
    result.p_value = two_sided_t_pvalue(t, dof);
    return result;
}

MeanDiffResult welch_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw ComputeError("welch_test: both samples need >= 2 points");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    const double se2 = va / na + vb / nb;
    if (se2 <= 0.0) {
        throw ComputeError("welch_test: zero standard error (both samples constant)");
    }

    MeanDiffResult result;
    result.diff = mb - ma;
    result.t_stat = result.diff / std::sqrt(se2);
    // Welch-Satterthwaite effective degrees of freedom.
    double denom = (va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0);
    result.dof = se2 * se2 / denom;
    result.p_value = two_sided_t_pvalue(result.t_stat, result.dof);
    return result;
}

TopBottomGrid top_bottom_grid(std::span<const WindowStats> stats,
                              const std::map<std::string, std::vector<double>>& norm_stds_by_window,
                              int k) {
    if (k < 1) {
        throw ComputeError("top_bottom_grid: k must be >= 1");
    }
    std::vector<const WindowStats*> with_index;
    for (const auto& w : stats) {
        if (!std::isnan(w.index_avg_daily_return)) with_index.push_back(&w);
    }
    if (with_index.size() < 2 * static_cast<std::size_t>(k)) {
        throw ComputeError("top_bottom_grid: need >= 2k windows with index data");
    }
    // Ascending (return, id); ties cannot reorder across runs.
    std::sort(with_index.begin(), with_index.end(),
              [](const WindowStats* a, const WindowStats* b) {
                  if (a->index_avg_daily_return != b->index_avg_daily_return) {
                      return a->index_avg_daily_return < b->index_avg_daily_return;
                  }
                  return a->window_id < b->window_id;
              });

    TopBottomGrid grid;
    for (int i = 0; i < k; ++i) {
        grid.bottom_windows.push_back(with_index[static_cast<std::size_t>(i)]->window_id);
        grid.top_windows.push_back(with_index[with_index.size() - 1 - static_cast<std::size_t>(i)]->window_id);
    }

    auto sample_for = [&](const std::string& id) -> const std::vector<double>& {
        auto it = norm_stds_by_window.find(id);
        if (it == norm_stds_by_window.end() || it->second.size() < 2) {
            throw ComputeError("top_bottom_grid: missing or degenerate sample for window " + id);
        }
        return it->second;
    };

    grid.cells.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        auto& row = grid.cells[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(k));
        const auto& top_sample = sample_for(grid.top_windows[static_cast<std::size_t>(i)]);
        for (int j = 0; j < k; ++j) {
            const auto& bottom_sample = sample_for(grid.bottom_windows[static_cast<std::size_t>(j)]);
            TopBottomCell cell;
            cell.top_window = grid.top_windows[static_cast<std::size_t>(i)];
            cell.bottom_window = grid.bottom_windows[static_cast<std::size_t>(j)];
            cell.test = welch_test(top_sample, bottom_sample);
            cell.significant_5pct = cell.test.p_value < 0.05;
            cell.significant_1pct = cell.test.p_value < 0.01;
            row[static_cast<std::size_t>(j)] = std::move(cell);
        }
    }
    return grid;
}

}  // namespace rdcnet
