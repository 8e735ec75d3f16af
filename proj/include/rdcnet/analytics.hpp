// analytics.hpp
// Rankings over the zeta grid, rank-volatility statistics, and the
// statistical tests relating rank volatility to market-index returns.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rdcnet/ingest.hpp"
#include "rdcnet/rdc.hpp"

namespace rdcnet {

// Competition ranks for one grid column: rank 1 is the largest value; exact
// ties break by lexicographic asset id. Returns ranks parallel to `values`.
std::vector<int> rank_assets(std::span<const double> values,
                             std::span<const std::string> asset_order);

struct RankTable {
    std::vector<std::string> assets;
    std::vector<double> zetas;
    Eigen::MatrixXi ranks;                  // n x |grid|, each column a permutation of 1..n
    Eigen::VectorXd rank_std;               // population std over the grid, per asset
    Eigen::VectorXd rank_std_normalized;    // rank_std / n
};

RankTable rank_table(const RdcProfile& profile);

struct WindowStats {
    std::string window_id;
    int n_assets = 0;
    double avg_rank_std = 0.0;
    double avg_rank_std_normalized = 0.0;   // avg_rank_std / n_assets
    double index_avg_daily_return = 0.0;    // NaN when no index data was supplied
};

// Window-level aggregates. index_returns must already be restricted to the
// window and contain at least one entry.
WindowStats window_stats(const RankTable& table, std::string window_id,
                         const ReturnSeries& index_returns);
// Variant without index data; index_avg_daily_return is NaN.
WindowStats window_stats(const RankTable& table, std::string window_id);

struct CorrelationTestResult {
    double r = 0.0;
    double p_value = 1.0;  // two-sided, t distribution with n - 2 dof
    std::size_t n = 0;
};

// Pearson correlation with its two-sided significance from
// t = r sqrt((n-2)/(1-r^2)). Requires equal lengths n >= 3, neither constant.
CorrelationTestResult correlation_test(std::span<const double> x, std::span<const double> y);

struct MeanDiffResult {
    double diff = 0.0;    // mean(b) - mean(a)
    double t_stat = 0.0;
    double dof = 0.0;     // Welch-Satterthwaite
    double p_value = 1.0; // two-sided
};

// Welch's unequal-variance t-test. Requires both samples of size >= 2 and a
// nonzero pooled standard error.
MeanDiffResult welch_test(std::span<const double> a, std::span<const double> b);

struct TopBottomCell {
    std::string top_window;
    std::string bottom_window;
    MeanDiffResult test;  // b = bottom window's sample, a = top window's
    bool significant_5pct = false;
    bool significant_1pct = false;
};

struct TopBottomGrid {
    std::vector<std::string> top_windows;     // descending index return
    std::vector<std::string> bottom_windows;  // ascending index return
    std::vector<std::vector<TopBottomCell>> cells;  // k x k, [top][bottom]
};

// Mean-difference grid between the k windows with the highest and lowest
// index average daily return. Samples are the windows' per-asset normalized
// rank standard deviations. Requires >= 2k windows with index data.
TopBottomGrid top_bottom_grid(std::span<const WindowStats> stats,
                              const std::map<std::string, std::vector<double>>& norm_stds_by_window,
                              int k);

}  // namespace rdcnet
