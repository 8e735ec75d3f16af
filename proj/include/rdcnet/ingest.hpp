// ingest.hpp
// Price data ingestion: CSV parsing, rolling window construction with the
// coverage filter, and log-return series.

#pragma once

#include <istream>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rdcnet/dates.hpp"

namespace rdcnet {

struct PriceRecord {
    Date date;
    std::string asset_id;
    double close = 0.0;  // strictly positive
};

struct PriceObservation {
    Date date;
    double close = 0.0;
};

// Per-asset date-sorted price series plus the union trading calendar.
// Immutable once built.
class PricePanel {
public:
    PricePanel() = default;

    // Validates invariants: closes > 0, unique (date, asset) pairs.
    static PricePanel from_records(std::vector<PriceRecord> records);

    const std::vector<std::string>& assets() const { return assets_; }
    const std::vector<PriceObservation>& series(const std::string& asset_id) const;
    const std::vector<Date>& trading_calendar() const { return calendar_; }

    bool empty() const { return assets_.empty(); }
    std::size_t asset_count() const { return assets_.size(); }

private:
    std::vector<std::string> assets_;  // lexicographic
    std::map<std::string, std::vector<PriceObservation>> series_;
    std::vector<Date> calendar_;  // sorted union of all record dates
};

// Reads price CSV (header `date,asset,close`). Rows may appear in any order.
// Throws InputError with a line number for malformed rows, non-positive
// closes, duplicate (date, asset) pairs, or empty input.
PricePanel parse_prices(std::istream& in);

// Reads a single-series CSV (header `date,close`), e.g. a market index.
// Returned observations are date-sorted. Same error contract as parse_prices.
std::vector<PriceObservation> parse_index_csv(std::istream& in);

struct ReturnEntry {
    Date date;  // date of the later of the two observations
    double value = 0.0;
};

struct ReturnSeries {
    std::string asset_id;
    std::vector<ReturnEntry> entries;
};

// Log returns over consecutive available observations: entry k is
// ln(P_{k+1}) - ln(P_k). A gap in the calendar yields one return spanning it.
// Requires >= 2 observations and positive closes.
ReturnSeries log_returns(std::string asset_id, std::span<const PriceObservation> prices);

struct WindowSpec {
    YearMonth first_month;
    YearMonth last_month;  // first month of the last window
    int window_length_months = 6;
    int step_months = 1;

    void validate() const;  // throws InputError
    std::vector<YearMonth> window_starts() const;
};

// One analysis window: the surviving assets and their in-window return series.
struct WindowPanel {
    std::string window_id;  // "YYYY-MM" of the first month
    Date start;
    Date end;
    std::vector<std::string> assets;     // lexicographic
    std::vector<ReturnSeries> returns;   // parallel to assets
    int trading_days = 0;                // calendar dates inside [start, end]

    // Windows below 3 assets are kept (flagged) but skipped downstream.
    bool viable() const { return assets.size() >= 3; }
};

// Builds one WindowPanel per generated window. An asset is included when its
// observation count inside the window is at least coverage_threshold times
// the window's trading-day count (inclusive) and it has >= 2 observations.
// Windows whose range contains no panel dates are omitted, so a spec range
// fully outside the calendar yields an empty list.
std::vector<WindowPanel> build_windows(const PricePanel& panel, const WindowSpec& spec,
                                       double coverage_threshold);

}  // namespace rdcnet
