#include "doctest.h"
#include "rdcnet/common.hpp"
#include "rdcnet/dates.hpp"

using rdcnet::Date;
using rdcnet::InputError;
using rdcnet::YearMonth;

TEST_CASE("Date parses strict ISO form and round-trips") {
    Date d = Date::parse("2008-01-02");
    CHECK(d.year() == 2008);
    CHECK(d.month() == 1);
    CHECK(d.day() == 2);
    CHECK(d.to_string() == "2008-01-02");
    CHECK(Date::parse("2020-02-29").to_string() == "2020-02-29");  // leap day
}

TEST_CASE("Date rejects malformed and impossible input") {
    CHECK_THROWS_AS(Date::parse("2008/01/02"), InputError);
    CHECK_THROWS_AS(Date::parse("2008-1-2"), InputError);
    CHECK_THROWS_AS(Date::parse("2008-13-01"), InputError);
    CHECK_THROWS_AS(Date::parse("2009-02-29"), InputError);  // not a leap year
    CHECK_THROWS_AS(Date::parse("2008-00-10"), InputError);
    CHECK_THROWS_AS(Date::parse("2008-01-0a"), InputError);
    CHECK_THROWS_AS(Date::parse(""), InputError);
}

TEST_CASE("Date ordering and weekday") {
    CHECK(Date::parse("2008-01-02") < Date::parse("2008-01-03"));
    CHECK(Date::parse("2008-01-02") == Date(2008, 1, 2));
    CHECK(Date::parse("2008-01-01").weekday() == std::chrono::Tuesday);
    CHECK(Date::parse("2008-01-05").weekday() == std::chrono::Saturday);
}

TEST_CASE("YearMonth arithmetic") {
    YearMonth jan2008(2008, 1);
    CHECK(jan2008.plus_months(0) == jan2008);
    CHECK(jan2008.plus_months(5).to_string() == "2008-06");
    CHECK(jan2008.plus_months(12).to_string() == "2009-01");
    CHECK(jan2008.plus_months(-1).to_string() == "2007-12");
    CHECK(YearMonth(2020, 1).months_since(jan2008) == 144);
    CHECK(jan2008.months_since(YearMonth(2020, 1)) == -144);
}

TEST_CASE("YearMonth day boundaries") {
    CHECK(YearMonth(2008, 1).first_day() == Date(2008, 1, 1));
    CHECK(YearMonth(2008, 6).last_day() == Date(2008, 6, 30));
    CHECK(YearMonth(2008, 2).last_day() == Date(2008, 2, 29));  // leap year
    CHECK(YearMonth(2009, 2).last_day() == Date(2009, 2, 28));
    CHECK(YearMonth(2008, 12).last_day() == Date(2008, 12, 31));
}

TEST_CASE("YearMonth parsing") {
    CHECK(YearMonth::parse("2013-07") == YearMonth(2013, 7));
    CHECK_THROWS_AS(YearMonth::parse("2013-7"), InputError);
    CHECK_THROWS_AS(YearMonth::parse("2013-13"), InputError);
    CHECK_THROWS_AS(YearMonth::parse("201307"), InputError);
}
