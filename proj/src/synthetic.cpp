#include "rdcnet/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "rdcnet/common.hpp"

namespace rdcnet {

namespace {

bool is_business_day(const Date& d) {
    auto wd = d.weekday();
    return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

std::vector<Date> business_calendar(const YearMonth& first, int total_months) {
    std::vector<Date> days;
    Date last = first.plus_months(total_months - 1).last_day();
    std::chrono::year_month_day begin{std::chrono::year{first.year()},
                                      std::chrono::month{first.month()}, std::chrono::day{1}};
    std::chrono::year_month_day end{std::chrono::year{last.year()},
                                    std::chrono::month{last.month()},
                                    std::chrono::day{last.day()}};
    for (std::chrono::sys_days d{begin}; d <= std::chrono::sys_days{end};
         d += std::chrono::days{1}) {
        std::chrono::year_month_day ymd{d};
        Date date(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
        if (is_business_day(date)) days.push_back(date);
    }
    return days;
}

std::string asset_name(int index, int width) {
    std::string digits = std::to_string(index);
    if (static_cast<int>(digits.size()) < width) {
        digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    }
    return "A" + digits;
}

}  // namespace

void SyntheticSpec::validate() const {
    if (n_assets < 3) {
        throw InputError("synthetic spec: n_assets must be >= 3");
    }
    if (n_windows < 1) {
        throw InputError("synthetic spec: n_windows must be >= 1");
    }
    if (extra_months < 0) {
        throw InputError("synthetic spec: extra_months must be >= 0");
    }
    if (!(volatility > 0.0)) {
        throw InputError("synthetic spec: volatility must be positive");
    }
    if (!(base_price > 0.0)) {
        throw InputError("synthetic spec: base_price must be positive");
    }
    if (!schedule.empty() && schedule.size() != static_cast<std::size_t>(n_windows)) {
        throw InputError("synthetic spec: schedule must be empty or have one regime per window");
    }
    for (const Regime& regime : schedule) {
        if (regime.beta < 0.0 || regime.beta >= 1.0) {
            throw InputError("synthetic spec: beta must be in [0, 1)");
        }
    }
}

SyntheticPanel generate_market(const SyntheticSpec& spec) {
    spec.validate();

    const int total_months = spec.n_windows + spec.extra_months;
    const std::vector<Date> calendar = business_calendar(spec.first_month, total_months);

    int width = 1;
    for (int v = spec.n_assets - 1; v >= 10; v /= 10) ++width;
    width = std::max(width, 3);
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(spec.n_assets));
    for (int i = 0; i < spec.n_assets; ++i) names.push_back(asset_name(i, width));

    std::mt19937_64 rng(spec.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> prices(static_cast<std::size_t>(spec.n_assets), spec.base_price);
    double index_level = spec.base_price;
    const Regime default_regime{};

    SyntheticPanel panel;
    panel.prices.reserve(calendar.size() * static_cast<std::size_t>(spec.n_assets));
    panel.index.reserve(calendar.size());

    for (std::size_t t = 0; t < calendar.size(); ++t) {
        const Date& day = calendar[t];
        if (t > 0) {
            // Month m evolves under schedule[min(m, n_windows - 1)]; months
            // past the last scheduled window keep its regime so trailing
            // window tails stay consistent.
            YearMonth month(day.year(), day.month());
            int m = month.months_since(spec.first_month);
            const Regime& regime =
                spec.schedule.empty()
                    ? default_regime
                    : spec.schedule[static_cast<std::size_t>(
                          std::min(m, spec.n_windows - 1))];
            const double attenuation = std::sqrt(1.0 - regime.beta * regime.beta);

            // Fixed draw order per day: factor first, then assets in id order.
            double factor = regime.factor_drift + spec.volatility * normal(rng);
            for (int i = 0; i < spec.n_assets; ++i) {
                double noise = spec.volatility * normal(rng);
                double r = regime.beta * factor + attenuation * noise;
                prices[static_cast<std::size_t>(i)] *= std::exp(r);
            }
            index_level *= std::exp(factor);
        }
        for (int i = 0; i < spec.n_assets; ++i) {
            panel.prices.push_back(
                {day, names[static_cast<std::size_t>(i)], prices[static_cast<std::size_t>(i)]});
        }
        panel.index.push_back({day, index_level});
    }
    return panel;
}

std::vector<Regime> two_regime_schedule(int n_windows, const std::vector<int>& crisis_windows,
                                        Regime calm, Regime crisis) {
    if (n_windows < 1) {
        throw InputError("two_regime_schedule: n_windows must be >= 1");
    }
    std::vector<Regime> schedule(static_cast<std::size_t>(n_windows), calm);
    for (int w : crisis_windows) {
        if (w < 0 || w >= n_windows) {
            throw InputError("two_regime_schedule: crisis window out of range");
        }
        schedule[static_cast<std::size_t>(w)] = crisis;
    }
    return schedule;
}

}  // namespace rdcnet
