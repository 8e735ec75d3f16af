// dates.hpp
// Calendar dates and year-months for window arithmetic. ISO 8601 text forms.

#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace rdcnet {

// A validated calendar day.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    // Parses "YYYY-MM-DD". Throws InputError on malformed or invalid dates.
    static Date parse(std::string_view iso);

    int year() const { return static_cast<int>(ymd_.year()); }
    unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
    unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

    std::string to_string() const;  // "YYYY-MM-DD"

    friend auto operator<=>(const Date& a, const Date& b) { return a.ymd_ <=> b.ymd_; }
    friend bool operator==(const Date& a, const Date& b) { return a.ymd_ == b.ymd_; }

    std::chrono::weekday weekday() const {
        return std::chrono::weekday{std::chrono::sys_days{ymd_}};
    }

private:
    std::chrono::year_month_day ymd_{};
};

// A year-month pair; the unit in which analysis windows are specified.
class YearMonth {
public:
    YearMonth() = default;
    YearMonth(int year, unsigned month);

    // Parses "YYYY-MM". Throws InputError on malformed input.
    static YearMonth parse(std::string_view text);

    int year() const { return static_cast<int>(ym_.year()); }
    unsigned month() const { return static_cast<unsigned>(ym_.month()); }

    YearMonth plus_months(int n) const;
    // Signed whole-month difference (this - earlier).
    int months_since(const YearMonth& earlier) const;

    Date first_day() const;
    Date last_day() const;

    std::string to_string() const;  // "YYYY-MM"

    friend auto operator<=>(const YearMonth& a, const YearMonth& b) { return a.ym_ <=> b.ym_; }
    friend bool operator==(const YearMonth& a, const YearMonth& b) { return a.ym_ == b.ym_; }

private:
    std::chrono::year_month ym_{};
};

}  // namespace rdcnet
