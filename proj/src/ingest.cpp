#include "rdcnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rdcnet/common.hpp"

namespace rdcnet {

namespace {

std::string trim(std::string_view text) {
    auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    auto end = text.find_last_not_of(" \t\r");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_close(const std::string& text, std::size_t line_no) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw InputError("line " + std::to_string(line_no) + ": bad close value '" + text + "'");
    }
    return value;
}

[[noreturn]] void bad_header(const std::string& expected, const std::string& got) {
    throw InputError("bad CSV header: expected '" + expected + "', got '" + got + "'");
}

}  // namespace

PricePanel PricePanel::from_records(std::vector<PriceRecord> records) {
    if (records.empty()) {
        throw InputError("no price records");
    }
    PricePanel panel;
    std::set<Date> calendar;
    std::set<std::pair<std::string, Date>> seen;
    for (const auto& rec : records) {
        if (!(rec.close > 0.0) || !std::isfinite(rec.close)) {
            throw InputError("non-positive close for " + rec.asset_id + " on " +
                             rec.date.to_string());
        }
        if (rec.asset_id.empty()) {
            throw InputError("empty asset id on " + rec.date.to_string());
        }
        if (!seen.emplace(rec.asset_id, rec.date).second) {
            throw InputError("duplicate record for " + rec.asset_id + " on " +
                             rec.date.to_string());
        }
        panel.series_[rec.asset_id].push_back({rec.date, rec.close});
        calendar.insert(rec.date);
    }
    for (auto& [asset, series] : panel.series_) {
        std::sort(series.begin(), series.end(),
                  [](const PriceObservation& a, const PriceObservation& b) {
                      return a.date < b.date;
                  });
        panel.assets_.push_back(asset);
    }
    panel.calendar_.assign(calendar.begin(), calendar.end());
    return panel;
}

const std::vector<PriceObservation>& PricePanel::series(const std::string& asset_id) const {
    auto it = series_.find(asset_id);
    if (it == series_.end()) {
        throw InputError("unknown asset '" + asset_id + "'");
    }
    return it->second;
}

PricePanel parse_prices(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("empty price CSV");
    }
    auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "date" || header[1] != "asset" ||
        header[2] != "close") {
        bad_header("date,asset,close", line);
    }
    std::vector<PriceRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw InputError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        }
        Date date;
        try {
            date = Date::parse(fields[0]);
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
        double close = parse_close(fields[2], line_no);
        if (!(close > 0.0)) {
            throw InputError("line " + std::to_string(line_no) + ": close must be positive");
        }
        records.push_back({date, fields[1], close});
    }
    return PricePanel::from_records(std::move(records));
}

std::vector<PriceObservation> parse_index_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError("empty index CSV");
    }
    auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "date" || header[1] != "close") {
        bad_header("date,close", line);
    }
    std::vector<PriceObservation> observations;
    std::set<Date> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw InputError("line " + std::to_string(line_no) + ": expected 2 fields, got " +
                             std::to_string(fields.size()));
        }
        Date date;
        try {
            date = Date::parse(fields[0]);
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
        double close = parse_close(fields[1], line_no);
        if (!(close > 0.0)) {
            throw InputError("line " + std::to_string(line_no) + ": close must be positive");
        }
        if (!seen.insert(date).second) {
            throw InputError("line " + std::to_string(line_no) + ": duplicate date " +
                             date.to_string());
        }
        observations.push_back({date, close});
    }
    if (observations.empty()) {
        throw InputError("index CSV has no data rows");
    }
    std::sort(observations.begin(), observations.end(),
              [](const PriceObservation& a, const PriceObservation& b) { return a.date < b.date; });
    return observations;
}

ReturnSeries log_returns(std::string asset_id, std::span<const PriceObservation> prices) {
    if (prices.size() < 2) {
        throw ComputeError("log_returns for '" + asset_id + "' needs >= 2 observations");
    }
    ReturnSeries series;
    series.asset_id = std::move(asset_id);
    series.entries.reserve(prices.size() - 1);
    for (std::size_t k = 0; k + 1 < prices.size(); ++k) {
        if (!(prices[k].close > 0.0) || !(prices[k + 1].close > 0.0)) {
            throw ComputeError("non-positive close in series '" + series.asset_id + "'");
        }
        if (!(prices[k].date < prices[k + 1].date)) {
            throw ComputeError("unsorted observations in series '" + series.asset_id + "'");
        }
        series.entries.push_back(
            {prices[k + 1].date, std::log(prices[k + 1].close) - std::log(prices[k].close)});
    }
    return series;
}

void WindowSpec::validate() const {
    if (window_length_months < 1) {
        throw InputError("window_length_months must be >= 1");
    }
    if (step_months < 1) {
        throw InputError("step_months must be >= 1");
    }
    if (last_month < first_month) {
        throw InputError("last_month precedes first_month");
    }
}

std::vector<YearMonth> WindowSpec::window_starts() const {
    validate();
    std::vector<YearMonth> starts;
    for (YearMonth m = first_month; m <= last_month; m = m.plus_months(step_months)) {
        starts.push_back(m);
    }
    return starts;
}

std::vector<WindowPanel> build_windows(const PricePanel& panel, const WindowSpec& spec,
                                       double coverage_threshold) {
    if (!(coverage_threshold > 0.0) || coverage_threshold > 1.0) {
        throw InputError("coverage_threshold must be in (0, 1]");
    }
    const auto& calendar = panel.trading_calendar();
    std::vector<WindowPanel> windows;
    for (const YearMonth& start_month : spec.window_starts()) {
        Date start = start_month.first_day();
        Date end = start_month.plus_months(spec.window_length_months - 1).last_day();

        auto lo = std::lower_bound(calendar.begin(), calendar.end(), start);
        auto hi = std::upper_bound(calendar.begin(), calendar.end(), end);
        int trading_days = static_cast<int>(hi - lo);
        if (trading_days == 0) continue;  // window outside the panel's history

        WindowPanel window;
        window.window_id = start_month.to_string();
        window.start = start;
        window.end = end;
        window.trading_days = trading_days;

        // Inclusive coverage test with absolute slack: an asset observed on
        // exactly threshold * trading_days dates passes even when the product
        // rounds up in floating point.
        const double required = coverage_threshold * trading_days;
        for (const std::string& asset : panel.assets()) {
            const auto& series = panel.series(asset);
            auto first = std::lower_bound(
                series.begin(), series.end(), start,
                [](const PriceObservation& obs, const Date& d) { return obs.date < d; });
            auto last = std::upper_bound(
                series.begin(), series.end(), end,
                [](const Date& d, const PriceObservation& obs) { return d < obs.date; });
            auto count = static_cast<std::size_t>(last - first);
            if (count < 2) continue;
            if (static_cast<double>(count) + 1e-9 < required) continue;
            window.assets.push_back(asset);
            window.returns.push_back(
                log_returns(asset, std::span<const PriceObservation>(&*first, count)));
        }
        windows.push_back(std::move(window));
    }
    return windows;
}

}  // namespace rdcnet
