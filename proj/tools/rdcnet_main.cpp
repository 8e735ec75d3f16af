// rdcnet command-line driver.
//
//   rdcnet run       batch pipeline: prices (+ optional index) -> artifacts
//   rdcnet generate  synthetic one-factor market for validation runs
//   rdcnet inspect   summarize one window from a previous run
//
// Exit codes: 0 success, 1 input error, 2 computation error.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rdcnet/artifacts.hpp"
#include "rdcnet/common.hpp"
#include "rdcnet/pipeline.hpp"
#include "rdcnet/synthetic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitComputeError = 2;

struct RunCliOptions {
    std::string config_file;
    std::string prices;
    std::string index;
    std::string output_dir;
    std::string first_month;
    std::string last_month;
};

int cmd_run(const RunCliOptions& opts, const rdcnet::RunConfig& overrides, const CLI::App& sub) {
    rdcnet::RunConfig config;
    if (!opts.config_file.empty()) {
        config = rdcnet::load_config_file(opts.config_file);
    }
    // Command-line values win over the config file.
    if (!opts.prices.empty()) config.prices_path = opts.prices;
    if (!opts.index.empty()) config.index_path = opts.index;
    if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
    if (!opts.first_month.empty()) config.first_month = rdcnet::YearMonth::parse(opts.first_month);
    if (!opts.last_month.empty()) config.last_month = rdcnet::YearMonth::parse(opts.last_month);
    if (sub.count("--window-months") > 0) config.window_length_months = overrides.window_length_months;
    if (sub.count("--step-months") > 0) config.step_months = overrides.step_months;
    if (sub.count("--coverage") > 0) config.coverage_threshold = overrides.coverage_threshold;
    if (sub.count("--min-overlap") > 0) config.min_overlap = overrides.min_overlap;
    if (sub.count("--zeta-start") > 0) config.zeta_start = overrides.zeta_start;
    if (sub.count("--zeta-end") > 0) config.zeta_end = overrides.zeta_end;
    if (sub.count("--zeta-step") > 0) config.zeta_step = overrides.zeta_step;
    if (sub.count("--top-bottom-k") > 0) config.top_bottom_k = overrides.top_bottom_k;
    if (sub.count("--weighted-adjacency") > 0) config.weighted_adjacency = true;
    if (sub.count("--emit-matrices") > 0) config.emit_matrices = true;
    if (sub.count("--threads") > 0) config.threads = overrides.threads;

    rdcnet::RunReport report = rdcnet::run_pipeline(config);
    std::cout << "windows: " << report.windows_total << " total, " << report.windows_ok
              << " ok, " << report.windows_skipped << " skipped\n";
    std::cout << "manifest: " << report.manifest_path.string() << "\n";
    return kExitOk;
}

struct GenerateCliOptions {
    std::string prices_out;
    std::string index_out;
    std::string first_month = "2008-01";
    int n_assets = 50;
    int n_windows = 24;
    int extra_months = 5;
    double volatility = 0.015;
    double base_price = 100.0;
    std::uint64_t seed = 1;
    double calm_beta = 0.35;
    double calm_drift = 0.0005;
    double crisis_beta = 0.85;
    double crisis_drift = -0.004;
    std::vector<int> crisis_windows;
};

int cmd_generate(const GenerateCliOptions& opts) {
    rdcnet::SyntheticSpec spec;
    spec.n_assets = opts.n_assets;
    spec.n_windows = opts.n_windows;
    spec.first_month = rdcnet::YearMonth::parse(opts.first_month);
    spec.extra_months = opts.extra_months;
    spec.volatility = opts.volatility;
    spec.base_price = opts.base_price;
    spec.rng_seed = opts.seed;
    spec.schedule = rdcnet::two_regime_schedule(
        opts.n_windows, opts.crisis_windows, rdcnet::Regime{opts.calm_beta, opts.calm_drift},
        rdcnet::Regime{opts.crisis_beta, opts.crisis_drift});

    rdcnet::SyntheticPanel panel = rdcnet::generate_market(spec);

    std::ofstream prices_out(opts.prices_out, std::ios::binary);
    if (!prices_out) {
        throw rdcnet::InputError("cannot write '" + opts.prices_out + "'");
    }
    rdcnet::write_price_csv(prices_out, panel.prices);
    prices_out.close();
    if (!prices_out) {
        throw rdcnet::InputError("failed writing '" + opts.prices_out + "'");
    }

    std::ofstream index_out(opts.index_out, std::ios::binary);
    if (!index_out) {
        throw rdcnet::InputError("cannot write '" + opts.index_out + "'");
    }
    rdcnet::write_index_csv(index_out, panel.index);
    index_out.close();
    if (!index_out) {
        throw rdcnet::InputError("failed writing '" + opts.index_out + "'");
    }

    std::cout << "assets: " << spec.n_assets << ", days: " << panel.index.size() << "\n";
    std::cout << "prices: " << opts.prices_out << "\n";
    std::cout << "index: " << opts.index_out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk-dependent centrality of stock-market assets"};
    app.require_subcommand(1);

    RunCliOptions run_opts;
    rdcnet::RunConfig run_overrides;
    CLI::App* run = app.add_subcommand("run", "run the full pipeline over a price panel");
    run->add_option("--config", run_opts.config_file, "flat key = value config file");
    run->add_option("--prices", run_opts.prices, "price CSV (date,asset,close)");
    run->add_option("--index", run_opts.index, "market index CSV (date,close)");
    run->add_option("-o,--output", run_opts.output_dir, "artifact output directory");
    run->add_option("--first-month", run_opts.first_month, "first window start (YYYY-MM)");
    run->add_option("--last-month", run_opts.last_month, "last window start (YYYY-MM)");
    run->add_option("--window-months", run_overrides.window_length_months, "window length in months");
    run->add_option("--step-months", run_overrides.step_months, "window step in months");
    run->add_option("--coverage", run_overrides.coverage_threshold, "required observation share");
    run->add_option("--min-overlap", run_overrides.min_overlap, "minimum pairwise common dates");
    run->add_option("--zeta-start", run_overrides.zeta_start, "first zeta value");
    run->add_option("--zeta-end", run_overrides.zeta_end, "last zeta value");
    run->add_option("--zeta-step", run_overrides.zeta_step, "zeta grid step");
    run->add_option("--top-bottom-k", run_overrides.top_bottom_k, "grid size for the mean-difference tests");
    run->add_flag("--weighted-adjacency", "use distance weights instead of the binary adjacency");
    run->add_flag("--emit-matrices", "also write per-window correlation and tree CSVs");
    run->add_option("--threads", run_overrides.threads, "worker threads (0 = hardware)");

    GenerateCliOptions gen_opts;
    CLI::App* generate = app.add_subcommand("generate", "write a synthetic one-factor market");
    generate->add_option("--prices", gen_opts.prices_out, "output price CSV path")->required();
    generate->add_option("--index", gen_opts.index_out, "output index CSV path")->required();
    generate->add_option("--assets", gen_opts.n_assets, "number of assets");
    generate->add_option("--windows", gen_opts.n_windows, "number of scheduled windows");
    generate->add_option("--extra-months", gen_opts.extra_months, "trailing months beyond the last window");
    generate->add_option("--first-month", gen_opts.first_month, "first month (YYYY-MM)");
    generate->add_option("--volatility", gen_opts.volatility, "daily volatility");
    generate->add_option("--base-price", gen_opts.base_price, "initial price level");
    generate->add_option("--seed", gen_opts.seed, "random seed");
    generate->add_option("--calm-beta", gen_opts.calm_beta, "factor loading in calm windows");
    generate->add_option("--calm-drift", gen_opts.calm_drift, "factor drift in calm windows");
    generate->add_option("--crisis-beta", gen_opts.crisis_beta, "factor loading in crisis windows");
    generate->add_option("--crisis-drift", gen_opts.crisis_drift, "factor drift in crisis windows");
    generate->add_option("--crisis-windows", gen_opts.crisis_windows, "crisis window indices")
        ->delimiter(',');

    std::string inspect_dir;
    std::string inspect_id;
    CLI::App* inspect = app.add_subcommand("inspect", "summarize one window of a previous run");
    inspect->add_option("output_dir", inspect_dir, "artifact directory of a previous run")
        ->required();
    inspect->add_option("window", inspect_id, "window id (YYYY-MM)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts, run_overrides, *run);
        if (generate->parsed()) return cmd_generate(gen_opts);
        if (inspect->parsed()) {
            rdcnet::inspect_window(inspect_dir, inspect_id, std::cout);
            return kExitOk;
        }
    } catch (const rdcnet::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const rdcnet::ComputeError& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return kExitComputeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeError;
    }
    return kExitInputError;
}
