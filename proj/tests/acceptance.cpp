// Acceptance gate: every release-blocking requirement checked in one binary,
// one line of output per criterion. Exits nonzero when any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rdcnet/analytics.hpp"
#include "rdcnet/artifacts.hpp"
#include "rdcnet/common.hpp"
#include "rdcnet/ingest.hpp"
#include "rdcnet/network.hpp"
#include "rdcnet/pipeline.hpp"
#include "rdcnet/rdc.hpp"
#include "rdcnet/synthetic.hpp"

namespace fs = std::filesystem;
using namespace rdcnet;

namespace {

int g_failures = 0;
int g_index = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(bool pass, const char* name, const std::string& detail) {
    ++g_index;
    if (!pass) ++g_failures;
    std::printf("[%2d] %s  %s (%s)\n", g_index, pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), format, a, b);
    return std::string(buf);
}

std::vector<std::string> node_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
    return names;
}

// --- criterion bodies -------------------------------------------------------

void check_expm_oracle() {
    Timer timer;
    std::mt19937_64 rng(20240321);
    std::uniform_int_distribution<int> size(2, 12);
    ZetaGrid grid = ZetaGrid::default_grid();
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        int n = size(rng);
        Eigen::MatrixXd a = oracle::random_tree_adjacency(n, rng);
        SpectralDecomposition decomp = spectral_decompose(a);
        for (double zeta : grid.values()) {
            double err =
                (expm_scaled(decomp, zeta) - oracle::taylor_expm(a, zeta, 40)).cwiseAbs().maxCoeff();
            worst = std::max(worst, err);
        }
    }
    double elapsed = timer.seconds();
    report(worst < 1e-10 && elapsed < 10.0,
           "matrix exponential matches the 40-term Taylor oracle on 200 random trees",
           fmt("max err %.2e, %.1f s", worst, elapsed));
}

void check_mst_oracle() {
    Timer timer;
    std::mt19937_64 rng(977);
    std::uniform_int_distribution<int> size(2, 7);
    std::uniform_real_distribution<double> weight(0.01, 2.0);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        int n = size(rng);
        DistanceMatrix dist;
        dist.d = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            dist.assets.push_back("T" + std::to_string(i));
            for (int j = i + 1; j < n; ++j) {
                double w = weight(rng);
                dist.d(i, j) = w;
                dist.d(j, i) = w;
            }
        }
        double fast = minimum_spanning_tree(dist).total_weight();
        double slow = oracle::min_spanning_weight_exhaustive(dist.d);
        worst = std::max(worst, std::abs(fast - slow));
    }
    double elapsed = timer.seconds();
    report(worst < 1e-12 && elapsed < 30.0,
           "MST weight equals the exhaustive spanning-tree minimum on 100 random graphs",
           fmt("max dev %.2e, %.1f s", worst, elapsed));
}

void check_distance_endpoints() {
    CorrelationMatrix corr;
    corr.assets = {"A", "B", "C"};
    corr.rho.resize(3, 3);
    corr.rho << 1, 1, -1, 1, 1, 0, -1, 0, 1;
    DistanceMatrix dist = to_distance(corr);
    double err_low = std::abs(dist.d(0, 1) - 0.0);
    double err_high = std::abs(dist.d(0, 2) - 2.0);
    report(err_low < 1e-12 && err_high < 1e-12,
           "distance transform endpoints: rho 1 -> 0 and rho -1 -> 2",
           fmt("errors %.2e / %.2e", err_low, err_high));
}

void check_window_count() {
    WindowSpec spec{YearMonth(2008, 1), YearMonth(2020, 1), 6, 1};
    std::size_t starts = spec.window_starts().size();

    SyntheticSpec synth;
    synth.n_assets = 3;
    synth.n_windows = 145;
    synth.rng_seed = 2;
    PricePanel panel = PricePanel::from_records(generate_market(synth).prices);
    std::size_t built = build_windows(panel, spec, 0.80).size();
    report(starts == 145 && built == 145,
           "January 2008 through January 2020 yields exactly 145 windows",
           "starts " + std::to_string(starts) + ", built " + std::to_string(built));
}

void check_zeta_grid() {
    ZetaGrid grid = ZetaGrid::default_grid();
    bool pass = grid.size() == 100 && grid.values().front() == 0.01 && grid.values().back() == 1.0;
    report(pass, "default zeta grid has 100 values from 0.01 to 1.00",
           std::to_string(grid.size()) + " values, first " +
               format_sig(grid.values().front(), 3) + ", last " +
               format_sig(grid.values().back(), 3));
}

void check_identity_shift_invariance() {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> size(2, 12);
    ZetaGrid grid = ZetaGrid::default_grid();
    int mismatches = 0;
    for (int rep = 0; rep < 100; ++rep) {
        int n = size(rng);
        Eigen::MatrixXd a = oracle::random_tree_adjacency(n, rng);
        RdcProfile profile = rdc_profile(a, node_names(n), grid);
        for (Eigen::Index c = 0; c < profile.rdc.cols(); ++c) {
            std::vector<double> full(static_cast<std::size_t>(n));
            std::vector<double> shifted(static_cast<std::size_t>(n));
            for (Eigen::Index i = 0; i < n; ++i) {
                full[static_cast<std::size_t>(i)] = profile.rdc(i, c);
                shifted[static_cast<std::size_t>(i)] = profile.rdc(i, c) - 1.0;
            }
            if (rank_assets(full, profile.assets) != rank_assets(shifted, profile.assets)) {
                ++mismatches;
            }
        }
    }
    report(mismatches == 0,
           "rankings from e^{zA} and e^{zA} - I agree on 100 random trees across the grid",
           std::to_string(mismatches) + " mismatching columns");
}

void check_stat_test_oracles() {
    std::mt19937_64 rng(31415);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<int> corr_n(5, 30);
    std::uniform_int_distribution<int> welch_n(4, 20);
    double worst = 0.0;

    for (int fixture = 0; fixture < 25; ++fixture) {
        int n = corr_n(rng);
        std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            x[static_cast<std::size_t>(k)] = normal(rng);
            y[static_cast<std::size_t>(k)] =
                0.4 * x[static_cast<std::size_t>(k)] + normal(rng);
        }
        CorrelationTestResult result = correlation_test(x, y);
        double t = result.r * std::sqrt((n - 2.0) / (1.0 - result.r * result.r));
        worst = std::max(worst, std::abs(result.p_value - oracle::t_two_sided_p(t, n - 2.0)));
    }
    for (int fixture = 0; fixture < 25; ++fixture) {
        std::vector<double> a(static_cast<std::size_t>(welch_n(rng)));
        std::vector<double> b(static_cast<std::size_t>(welch_n(rng)));
        for (auto& v : a) v = normal(rng);
        for (auto& v : b) v = 0.3 + 1.4 * normal(rng);
        MeanDiffResult result = welch_test(a, b);
        worst = std::max(worst,
                         std::abs(result.p_value - oracle::t_two_sided_p(result.t_stat, result.dof)));
    }
    report(worst < 1e-6, "correlation and mean-difference p-values match the quadrature oracle",
           fmt("max |dp| %.2e over 50 fixtures", worst));
}

// Windows of the two-regime panel, processed exactly as the batch driver
// processes them, reduced to the cross-window statistics.
struct PanelAnalysis {
    std::vector<WindowStats> stats;
    std::map<std::string, std::vector<double>> samples;
};

PanelAnalysis analyze_two_regime_panel(std::uint64_t seed) {
    SyntheticSpec spec;
    spec.n_assets = 100;
    spec.n_windows = 24;
    spec.rng_seed = seed;
    std::vector<int> crisis;
    for (int w = 16; w < 24; ++w) crisis.push_back(w);
    spec.schedule = two_regime_schedule(24, crisis, Regime{0.35, 0.0005}, Regime{0.85, -0.004});
    SyntheticPanel panel = generate_market(spec);

    PricePanel prices = PricePanel::from_records(panel.prices);
    WindowSpec window_spec{spec.first_month, spec.first_month.plus_months(23), 6, 1};
    std::vector<WindowPanel> windows = build_windows(prices, window_spec, 0.80);
    ReturnSeries index_returns = log_returns("INDEX", panel.index);
    ZetaGrid grid = ZetaGrid::default_grid();

    PanelAnalysis analysis;
    for (const WindowPanel& window : windows) {
        CorrelationMatrix corr = correlation_matrix(window, 30);
        MstTree tree = minimum_spanning_tree(to_distance(corr));
        RankTable table = rank_table(rdc_profile(tree, grid));

        ReturnSeries in_window;
        in_window.asset_id = "INDEX";
        for (const auto& entry : index_returns.entries) {
            if (window.start <= entry.date && entry.date <= window.end) {
                in_window.entries.push_back(entry);
            }
        }
        analysis.stats.push_back(window_stats(table, window.window_id, in_window));
        analysis.samples[window.window_id] = std::vector<double>(
            table.rank_std_normalized.data(),
            table.rank_std_normalized.data() + table.rank_std_normalized.size());
    }
    return analysis;
}

void check_directional_reproduction() {
    Timer timer;
    // 24 windows, the last 8 in a crisis regime (beta 0.85, drift -0.004/day),
    // the rest calm (beta 0.35, drift +0.0005/day); fixed seed.
    PanelAnalysis analysis = analyze_two_regime_panel(1);

    std::vector<double> norm_stds, index_means;
    for (const auto& stats : analysis.stats) {
        norm_stds.push_back(stats.avg_rank_std_normalized);
        index_means.push_back(stats.index_avg_daily_return);
    }
    CorrelationTestResult corr = correlation_test(norm_stds, index_means);

    TopBottomGrid grid = top_bottom_grid(analysis.stats, analysis.samples, 3);
    double min_diff = std::numeric_limits<double>::infinity();
    for (const auto& row : grid.cells) {
        for (const auto& cell : row) min_diff = std::min(min_diff, cell.test.diff);
    }

    bool pass = analysis.stats.size() == 24 && corr.r < 0.0 && min_diff > 0.0;
    report(pass,
           "two-regime panel: rank volatility vs index return is negative; "
           "all top-bottom diffs positive",
           fmt("r %.4f, min diff %+.4f", corr.r, min_diff) + fmt(", %.0f s", timer.seconds()));
}

void check_performance() {
    // One 250-asset window over the full grid.
    std::mt19937_64 rng(64);
    Eigen::MatrixXd a = oracle::random_tree_adjacency(250, rng);
    Timer window_timer;
    RdcProfile profile = rdc_profile(a, node_names(250), ZetaGrid::default_grid());
    RankTable table = rank_table(profile);
    double window_seconds = window_timer.seconds();
    bool window_ok = window_seconds < 2.0 && table.ranks.rows() == 250;

    // Full 145-window synthetic run through the batch driver.
    fs::path base = fs::temp_directory_path() / ("rdcnet_accept_perf_" + std::to_string(getpid()));
    fs::remove_all(base);
    fs::create_directories(base);
    SyntheticSpec spec;
    spec.n_assets = 50;
    spec.n_windows = 145;
    spec.rng_seed = 4;
    std::vector<int> crisis;
    for (int w = 100; w < 120; ++w) crisis.push_back(w);
    spec.schedule = two_regime_schedule(145, crisis, Regime{0.35, 0.0005}, Regime{0.85, -0.004});
    SyntheticPanel panel = generate_market(spec);
    {
        std::ofstream out(base / "prices.csv", std::ios::binary);
        write_price_csv(out, panel.prices);
    }
    {
        std::ofstream out(base / "index.csv", std::ios::binary);
        write_index_csv(out, panel.index);
    }
    RunConfig config;
    config.prices_path = base / "prices.csv";
    config.index_path = base / "index.csv";
    config.output_dir = base / "out";
    Timer run_timer;
    RunReport result = run_pipeline(config);
    double run_seconds = run_timer.seconds();
    bool run_ok = run_seconds < 300.0 && result.windows_ok == 145;
    fs::remove_all(base);

    report(window_ok && run_ok, "250-asset window under 2 s; 145-window run under 5 min",
           fmt("window %.2f s, run %.0f s", window_seconds, run_seconds));
}

void check_determinism() {
    fs::path base = fs::temp_directory_path() / ("rdcnet_accept_det_" + std::to_string(getpid()));
    fs::remove_all(base);
    fs::create_directories(base);

    SyntheticSpec spec;
    spec.n_assets = 12;
    spec.n_windows = 10;
    spec.rng_seed = 9;
    spec.schedule = two_regime_schedule(10, {8, 9}, Regime{0.35, 0.0005}, Regime{0.85, -0.004});
    SyntheticPanel panel = generate_market(spec);
    {
        std::ofstream out(base / "prices.csv", std::ios::binary);
        write_price_csv(out, panel.prices);
    }
    {
        std::ofstream out(base / "index.csv", std::ios::binary);
        write_index_csv(out, panel.index);
    }
    RunConfig config;
    config.prices_path = base / "prices.csv";
    config.index_path = base / "index.csv";
    config.output_dir = base / "out";
    config.last_month = YearMonth(2008, 10);
    config.top_bottom_k = 3;

    auto snapshot = [&] {
        std::map<std::string, std::string> files;
        for (const auto& entry : fs::directory_iterator(base / "out")) {
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            files[entry.path().filename().string()] = std::move(buf).str();
        }
        return files;
    };

    run_pipeline(config);
    auto first = snapshot();
    fs::remove_all(base / "out");
    run_pipeline(config);
    auto second = snapshot();

    bool identical = first == second && !first.empty();
    fs::remove_all(base);
    report(identical, "two identical runs produce byte-identical artifact sets",
           std::to_string(first.size()) + " artifacts compared");
}

}  // namespace

int main() {
    std::printf("acceptance checks\n");
    check_expm_oracle();
    check_mst_oracle();
    check_distance_endpoints();
    check_window_count();
    check_zeta_grid();
    check_identity_shift_invariance();
    check_stat_test_oracles();
    check_directional_reproduction();
    check_performance();
    check_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria satisfied\n");
    return 0;
}
