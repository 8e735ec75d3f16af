#include "rdcnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rdcnet/analytics.hpp"
#include "rdcnet/artifacts.hpp"
#include "rdcnet/common.hpp"
#include "rdcnet/ingest.hpp"
#include "rdcnet/network.hpp"
#include "rdcnet/rdc.hpp"

namespace rdcnet {

namespace {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(std::string("cannot open ") + what + " '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// Everything one window produces; computed by workers, written by the
// collector in window order.
struct WindowResult {
    WindowOutcome outcome;
    RdcProfile profile;
    RankTable table;
    CorrelationMatrix correlation;
    MstTree tree;
    WindowStats stats;
};

WindowResult process_window(const WindowPanel& window, const RunConfig& config,
                            const ZetaGrid& grid, const ReturnSeries* index_returns) {
    WindowResult result;
    result.outcome.window_id = window.window_id;
    result.outcome.n_assets = 0;
    if (!window.viable()) {
        result.outcome.status = "skipped";
        result.outcome.reason = "fewer than 3 assets pass the coverage filter";
        return result;
    }
    try {
        result.correlation = correlation_matrix(window, config.min_overlap);
        DistanceMatrix dist = to_distance(result.correlation);
        result.tree = minimum_spanning_tree(dist);
        result.profile = rdc_profile(result.tree.adjacency(config.weighted_adjacency),
                                     result.tree.assets, grid);
        result.table = rank_table(result.profile);

        if (index_returns != nullptr) {
            ReturnSeries in_window;
            in_window.asset_id = index_returns->asset_id;
            for (const auto& entry : index_returns->entries) {
                if (window.start <= entry.date && entry.date <= window.end) {
                    in_window.entries.push_back(entry);
                }
            }
            if (!in_window.entries.empty()) {
                result.stats = window_stats(result.table, window.window_id, in_window);
            } else {
                logging::warn("window " + window.window_id + ": no index returns in range");
                result.stats = window_stats(result.table, window.window_id);
            }
        } else {
            result.stats = window_stats(result.table, window.window_id);
        }
        result.outcome.status = "ok";
        result.outcome.n_assets = static_cast<int>(result.table.assets.size());
    } catch (const ComputeError& e) {
        result.outcome.status = "skipped";
        result.outcome.reason = e.what();
    }
    return result;
}

json config_echo(const RunConfig& config) {
    json echo;
    echo["prices"] = config.prices_path.string();
    echo["index"] = config.index_path ? json(config.index_path->string()) : json(nullptr);
    echo["output_dir"] = config.output_dir.string();
    echo["first_month"] = config.first_month.to_string();
    echo["last_month"] = config.last_month.to_string();
    echo["window_length_months"] = config.window_length_months;
    echo["step_months"] = config.step_months;
    echo["coverage_threshold"] = config.coverage_threshold;
    echo["min_overlap"] = config.min_overlap;
    echo["zeta_start"] = config.zeta_start;
    echo["zeta_end"] = config.zeta_end;
    echo["zeta_step"] = config.zeta_step;
    echo["top_bottom_k"] = config.top_bottom_k;
    echo["weighted_adjacency"] = config.weighted_adjacency;
    echo["emit_matrices"] = config.emit_matrices;
    echo["threads"] = config.threads;
    return echo;
}

json correlation_result_json(const CorrelationTestResult& r) {
    return json{{"r", r.r}, {"p_value", r.p_value}, {"n", r.n}};
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw InputError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    std::istringstream in(value);
    in.imbue(std::locale::classic());
    T out{};
    in >> out;
    if (in.fail() || !in.eof()) {
        throw InputError("config key '" + key + "': bad numeric value '" + value + "'");
    }
    return out;
}

}  // namespace

void RunConfig::validate() const {
    if (prices_path.empty()) {
        throw InputError("prices path is required");
    }
    if (output_dir.empty()) {
        throw InputError("output directory is required");
    }
    WindowSpec spec{first_month, last_month, window_length_months, step_months};
    spec.validate();
    if (!(coverage_threshold > 0.0) || coverage_threshold > 1.0) {
        throw InputError("coverage_threshold must be in (0, 1]");
    }
    if (min_overlap < 2) {
        throw InputError("min_overlap must be >= 2");
    }
    ZetaGrid::from_range(zeta_start, zeta_end, zeta_step);  // validates the grid
    if (top_bottom_k < 1) {
        throw InputError("top_bottom_k must be >= 1");
    }
    if (threads < 0) {
        throw InputError("threads must be >= 0");
    }
}

RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file '" + path.string() + "'");
    }
    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](const std::string& s) {
            auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        std::string stripped = strip(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = strip(stripped.substr(0, eq));
        std::string value = strip(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw InputError("config line " + std::to_string(line_no) + ": empty key or value");
        }

        if (key == "prices") {
            config.prices_path = value;
        } else if (key == "index") {
            config.index_path = value;
        } else if (key == "output_dir") {
            config.output_dir = value;
        } else if (key == "first_month") {
            config.first_month = YearMonth::parse(value);
        } else if (key == "last_month") {
            config.last_month = YearMonth::parse(value);
        } else if (key == "window_length_months") {
            config.window_length_months = parse_number<int>(value, key);
        } else if (key == "step_months") {
            config.step_months = parse_number<int>(value, key);
        } else if (key == "coverage_threshold") {
            config.coverage_threshold = parse_number<double>(value, key);
        } else if (key == "min_overlap") {
            config.min_overlap = parse_number<int>(value, key);
        } else if (key == "zeta_start") {
            config.zeta_start = parse_number<double>(value, key);
        } else if (key == "zeta_end") {
            config.zeta_end = parse_number<double>(value, key);
        } else if (key == "zeta_step") {
            config.zeta_step = parse_number<double>(value, key);
        } else if (key == "top_bottom_k") {
            config.top_bottom_k = parse_number<int>(value, key);
        } else if (key == "weighted_adjacency") {
            config.weighted_adjacency = parse_bool(value, key);
        } else if (key == "emit_matrices") {
            config.emit_matrices = parse_bool(value, key);
        } else if (key == "threads") {
            config.threads = parse_number<int>(value, key);
        } else {
            throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                             "'");
        }
    }
    return config;
}

RunReport run_pipeline(const RunConfig& config) {
    config.validate();

    // Parse all inputs before creating any artifact so a bad input leaves the
    // output directory untouched.
    std::string prices_text = read_text_file(config.prices_path, "price CSV");
    std::istringstream prices_stream(prices_text);
    PricePanel panel = parse_prices(prices_stream);

    std::string index_text;
    std::optional<ReturnSeries> index_returns;
    if (config.index_path) {
        index_text = read_text_file(*config.index_path, "index CSV");
        std::istringstream index_stream(index_text);
        auto observations = parse_index_csv(index_stream);
        if (observations.size() >= 2) {
            index_returns = log_returns("INDEX", observations);
        } else {
            logging::warn("index series has a single observation; index statistics disabled");
        }
    }

    WindowSpec spec{config.first_month, config.last_month, config.window_length_months,
                    config.step_months};
    std::vector<WindowPanel> windows = build_windows(panel, spec, config.coverage_threshold);
    ZetaGrid grid = ZetaGrid::from_range(config.zeta_start, config.zeta_end, config.zeta_step);
    logging::info("processing " + std::to_string(windows.size()) + " windows over " +
                  std::to_string(panel.asset_count()) + " assets");

    // Worker pool; results land in per-window slots so artifact content never
    // depends on completion order.
    std::vector<WindowResult> results(windows.size());
    unsigned pool = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<unsigned>(pool, std::max<std::size_t>(windows.size(), 1));
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(pool);
        std::vector<std::thread> threads;
        threads.reserve(pool);
        const ReturnSeries* index_ptr = index_returns ? &*index_returns : nullptr;
        for (unsigned worker = 0; worker < pool; ++worker) {
            threads.emplace_back([&, worker] {
                try {
                    while (true) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= windows.size()) break;
                        results[i] = process_window(windows[i], config, grid, index_ptr);
                    }
                } catch (...) {
                    failures[worker] = std::current_exception();
                }
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& failure : failures) {
            if (failure) std::rethrow_exception(failure);
        }
    }

    std::filesystem::create_directories(config.output_dir);
    std::map<std::string, std::string> artifact_hashes;
    auto emit = [&](const std::string& name, const std::string& content) {
        std::ofstream out(config.output_dir / name, std::ios::binary);
        if (!out) {
            throw InputError("cannot write artifact '" + (config.output_dir / name).string() +
                             "'");
        }
        out << content;
        out.close();
        if (!out) {
            throw InputError("failed writing artifact '" + name + "'");
        }
        artifact_hashes[name] = sha256_hex(content);
    };

    RunReport report;
    report.windows_total = static_cast<int>(windows.size());
    std::vector<WindowStats> all_stats;
    std::map<std::string, std::vector<double>> norm_stds_by_window;

    for (const WindowResult& result : results) {
        report.outcomes.push_back(result.outcome);
        if (result.outcome.status != "ok") {
            ++report.windows_skipped;
            logging::warn("window " + result.outcome.window_id + " skipped: " +
                          result.outcome.reason);
            continue;
        }
        ++report.windows_ok;
        const std::string& id = result.outcome.window_id;
        {
            std::ostringstream buf;
            write_rdc_csv(buf, result.profile);
            emit("rdc_" + id + ".csv", std::move(buf).str());
        }
        {
            std::ostringstream buf;
            write_rank_table_csv(buf, result.table);
            emit("rank_table_" + id + ".csv", std::move(buf).str());
        }
        if (config.emit_matrices) {
            std::ostringstream corr_buf;
            write_correlation_csv(corr_buf, result.correlation);
            emit("correlation_" + id + ".csv", std::move(corr_buf).str());
            std::ostringstream mst_buf;
            write_mst_csv(mst_buf, result.tree);
            emit("mst_" + id + ".csv", std::move(mst_buf).str());
        }
        all_stats.push_back(result.stats);
        auto& stds = norm_stds_by_window[id];
        stds.assign(result.table.rank_std_normalized.data(),
                    result.table.rank_std_normalized.data() +
                        result.table.rank_std_normalized.size());
    }

    {
        std::ostringstream buf;
        write_window_stats_csv(buf, all_stats);
        emit("window_stats.csv", std::move(buf).str());
    }

    // tests.json: the cross-window correlation (raw and normalized flavors)
    // and the top/bottom mean-difference grid. Sections degrade to null with
    // a reason when the run lacks the data to support them.
    json tests;
    tests["metadata"] = {
        {"correlation_p_value", "two-sided, t distribution with n - 2 dof"},
        {"mean_difference_test", "Welch unequal-variance t-test, two-sided p-value"},
    };
    std::vector<double> raw_stds, norm_stds, index_means;
    for (const auto& stats : all_stats) {
        if (std::isnan(stats.index_avg_daily_return)) continue;
        raw_stds.push_back(stats.avg_rank_std);
        norm_stds.push_back(stats.avg_rank_std_normalized);
        index_means.push_back(stats.index_avg_daily_return);
    }
    if (index_means.size() >= 3) {
        try {
            tests["rank_volatility_vs_index_return"] = {
                {"raw", correlation_result_json(correlation_test(raw_stds, index_means))},
                {"normalized",
                 correlation_result_json(correlation_test(norm_stds, index_means))},
            };
        } catch (const ComputeError& e) {
            tests["rank_volatility_vs_index_return"] = nullptr;
            tests["rank_volatility_vs_index_return_reason"] = e.what();
        }
    } else {
        tests["rank_volatility_vs_index_return"] = nullptr;
        tests["rank_volatility_vs_index_return_reason"] =
            index_means.empty() ? "no windows with index data"
                                : "fewer than 3 windows with index data";
    }
    if (index_means.size() >= 2 * static_cast<std::size_t>(config.top_bottom_k)) {
        try {
            TopBottomGrid grid_result =
                top_bottom_grid(all_stats, norm_stds_by_window, config.top_bottom_k);
            json cells = json::array();
            for (const auto& row : grid_result.cells) {
                for (const auto& cell : row) {
                    cells.push_back({{"top", cell.top_window},
                                     {"bottom", cell.bottom_window},
                                     {"diff", cell.test.diff},
                                     {"t_stat", cell.test.t_stat},
                                     {"dof", cell.test.dof},
                                     {"p_value", cell.test.p_value},
                                     {"significant_5pct", cell.significant_5pct},
                                     {"significant_1pct", cell.significant_1pct}});
                }
            }
            tests["top_bottom"] = {{"k", config.top_bottom_k},
                                   {"top_windows", grid_result.top_windows},
                                   {"bottom_windows", grid_result.bottom_windows},
                                   {"cells", std::move(cells)}};
        } catch (const ComputeError& e) {
            tests["top_bottom"] = nullptr;
            tests["top_bottom_reason"] = e.what();
        }
    } else {
        tests["top_bottom"] = nullptr;
        tests["top_bottom_reason"] = "fewer than 2k windows with index data";
    }
    emit("tests.json", tests.dump(2) + "\n");

    json manifest;
    manifest["config"] = config_echo(config);
    manifest["inputs"]["prices"] = {{"path", config.prices_path.string()},
                                    {"sha256", sha256_hex(prices_text)}};
    manifest["inputs"]["index"] =
        config.index_path ? json{{"path", config.index_path->string()},
                                 {"sha256", sha256_hex(index_text)}}
                          : json(nullptr);
    json window_entries = json::array();
    for (const auto& outcome : report.outcomes) {
        window_entries.push_back({{"window", outcome.window_id},
                                  {"status", outcome.status},
                                  {"reason", outcome.reason},
                                  {"n_assets", outcome.n_assets}});
    }
    manifest["windows"] = std::move(window_entries);
    manifest["windows_total"] = report.windows_total;
    manifest["windows_ok"] = report.windows_ok;
    manifest["windows_skipped"] = report.windows_skipped;
    json artifact_entries = json::object();
    for (const auto& [name, hash] : artifact_hashes) artifact_entries[name] = hash;
    manifest["artifacts"] = std::move(artifact_entries);
    emit("run_manifest.json", manifest.dump(2) + "\n");

    report.manifest_path = config.output_dir / "run_manifest.json";
    logging::info("run complete: " + std::to_string(report.windows_ok) + " ok, " +
                  std::to_string(report.windows_skipped) + " skipped");
    return report;
}

void inspect_window(const std::filesystem::path& output_dir, const std::string& window_id,
                    std::ostream& out) {
    std::filesystem::path table_path = output_dir / ("rank_table_" + window_id + ".csv");
    std::ifstream table_file(table_path);
    if (!table_file) {
        throw InputError("no artifacts for window '" + window_id + "' in '" +
                         output_dir.string() + "'");
    }

    std::string line;
    if (!std::getline(table_file, line) || line != "asset,zeta,rank") {
        throw InputError("unexpected rank table header in '" + table_path.string() + "'");
    }
    std::map<std::string, std::map<int, std::string>> asset_by_rank;  // zeta -> rank -> asset
    while (std::getline(table_file, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw InputError("malformed rank table row: '" + line + "'");
        }
        std::string asset = line.substr(0, c1);
        std::string zeta = line.substr(c1 + 1, c2 - c1 - 1);
        int rank = parse_number<int>(line.substr(c2 + 1), "rank");
        asset_by_rank[zeta][rank] = asset;
    }
    if (asset_by_rank.empty()) {
        throw InputError("rank table for window '" + window_id + "' is empty");
    }
    const std::string low_zeta = asset_by_rank.begin()->first;
    const std::string high_zeta = asset_by_rank.rbegin()->first;

    // window_stats.csv carries the aggregates; the window's line is required.
    std::ifstream stats_file(output_dir / "window_stats.csv");
    if (!stats_file) {
        throw InputError("missing window_stats.csv in '" + output_dir.string() + "'");
    }
    std::getline(stats_file, line);  // header
    std::string stats_line;
    while (std::getline(stats_file, line)) {
        if (line.rfind(window_id + ",", 0) == 0) {
            stats_line = line;
            break;
        }
    }
    if (stats_line.empty()) {
        throw InputError("window '" + window_id + "' not present in window_stats.csv");
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = stats_line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(stats_line.substr(start));
            break;
        }
        fields.push_back(stats_line.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() != 5) {
        throw InputError("malformed window_stats.csv row for '" + window_id + "'");
    }

    const auto& ranks_low = asset_by_rank[low_zeta];
    const int n = static_cast<int>(ranks_low.size());
    out << "window " << window_id << "\n";
    out << "assets: " << fields[1] << "\n";
    out << "avg rank std: " << fields[2] << " (normalized " << fields[3] << ")\n";
    out << "index avg daily return: " << fields[4] << "\n";

    auto print_listing = [&](const std::string& zeta) {
        const auto& by_rank = asset_by_rank[zeta];
        out << "zeta " << zeta << ":\n";
        int head_end = std::min(5, n);
        for (int r = 1; r <= head_end; ++r) {
            out << "  " << r << ". " << by_rank.at(r) << "\n";
        }
        int tail_begin = std::max(n - 4, head_end + 1);
        if (tail_begin <= n && tail_begin > head_end + 1) {
            out << "  ...\n";
        }
        for (int r = tail_begin; r <= n; ++r) {
            out << "  " << r << ". " << by_rank.at(r) << "\n";
        }
    };
    print_listing(low_zeta);
    print_listing(high_zeta);
}

}  // namespace rdcnet
