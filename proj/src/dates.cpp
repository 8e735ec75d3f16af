#include "rdcnet/dates.hpp"

#include <charconv>
#include <cstdio>

#include "rdcnet/common.hpp"

namespace rdcnet {

namespace {

// Parses a fixed-width run of digits; returns false on any non-digit.
bool parse_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day)
    : ymd_{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}} {
    if (!ymd_.ok()) {
        throw InputError("invalid calendar date: " + to_string());
    }
}

Date Date::parse(std::string_view iso) {
    // Strict ISO form YYYY-MM-DD; anything else is an input error.
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw InputError("malformed date '" + std::string(iso) + "', expected YYYY-MM-DD");
    }
    int y = 0, m = 0, d = 0;
    if (!parse_int(iso.substr(0, 4), y) || !parse_int(iso.substr(5, 2), m) ||
        !parse_int(iso.substr(8, 2), d)) {
        throw InputError("malformed date '" + std::string(iso) + "', expected YYYY-MM-DD");
    }
    if (m < 1 || m > 12 || d < 1 || d > 31) {
        throw InputError("date out of range: '" + std::string(iso) + "'");
    }
    return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year(), month(), day());
    return std::string(buf);
}

YearMonth::YearMonth(int year, unsigned month)
    : ym_{std::chrono::year{year}, std::chrono::month{month}} {
    if (!ym_.ok()) {
        throw InputError("invalid year-month: " + to_string());
    }
}

YearMonth YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') {
        throw InputError("malformed month '" + std::string(text) + "', expected YYYY-MM");
    }
    int y = 0, m = 0;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m)) {
        throw InputError("malformed month '" + std::string(text) + "', expected YYYY-MM");
    }
    if (m < 1 || m > 12) {
        throw InputError("month out of range: '" + std::string(text) + "'");
    }
    return YearMonth(y, static_cast<unsigned>(m));
}

YearMonth YearMonth::plus_months(int n) const {
    std::chrono::year_month shifted = ym_ + std::chrono::months{n};
    return YearMonth(static_cast<int>(shifted.year()), static_cast<unsigned>(shifted.month()));
}

int YearMonth::months_since(const YearMonth& earlier) const {
    int years = static_cast<int>(ym_.year()) - static_cast<int>(earlier.ym_.year());
    int months = static_cast<int>(static_cast<unsigned>(ym_.month())) -
                 static_cast<int>(static_cast<unsigned>(earlier.ym_.month()));
    return years * 12 + months;
}

Date YearMonth::first_day() const { return Date(year(), month(), 1); }

Date YearMonth::last_day() const {
    std::chrono::year_month_day_last last{ym_.year(), std::chrono::month_day_last{ym_.month()}};
    return Date(year(), month(), static_cast<unsigned>(last.day()));
}

std::string YearMonth::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u", year(), month());
    return std::string(buf);
}

}  // namespace rdcnet
