// synthetic.hpp
// One-factor synthetic market generator. Stands in for proprietary exchange
// data in tests and desk-scale validation runs.
//
// Daily model: f_t = mu + sigma z_t (common factor), and for each asset
// r_it = beta f_t + sqrt(1 - beta^2) sigma eps_it, so pairwise return
// correlations approach beta^2. The index is the factor portfolio. Crisis
// regimes raise beta and push the factor drift negative.

#pragma once

#include <cstdint>
#include <vector>

#include "rdcnet/ingest.hpp"

namespace rdcnet {

struct Regime {
    double beta = 0.35;          // common-factor loading, in [0, 1)
    double factor_drift = 0.0;   // per trading day
};

struct SyntheticSpec {
    int n_assets = 50;
    int n_windows = 24;
    YearMonth first_month{2008, 1};
    // Trailing months beyond the last scheduled window so that rolling
    // windows of the usual length are fully covered.
    int extra_months = 5;
    // One regime per window; month m is generated under
    // schedule[min(m, n_windows - 1)]. Empty means all-calm defaults.
    std::vector<Regime> schedule;
    double volatility = 0.015;   // daily sigma of both factor and noise
    double base_price = 100.0;
    std::uint64_t rng_seed = 1;

    void validate() const;  // throws InputError
};

struct SyntheticPanel {
    std::vector<PriceRecord> prices;        // date-major, asset-minor order
    std::vector<PriceObservation> index;    // factor portfolio close per day
};

// Deterministic for a fixed spec: identical seeds reproduce identical panels.
// The calendar is Monday-Friday business days.
SyntheticPanel generate_market(const SyntheticSpec& spec);

// Convenience: a two-regime schedule with the given crisis windows.
std::vector<Regime> two_regime_schedule(int n_windows, const std::vector<int>& crisis_windows,
                                        Regime calm, Regime crisis);

}  // namespace rdcnet
