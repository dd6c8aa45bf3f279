#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lmpred/moments.hpp"

namespace lmpred
{
struct PathConfig
{
    std::size_t days = 0;       // T
    int steps_per_day = 50;     // M
    std::uint64_t seed = 0;
    std::uint64_t duration_pool = 1'000'000'000;  // cap on exponential draws
};

struct DailySeries
{
    std::vector<double> lambda_tilde;  // cumulative intensity at day ends
    std::vector<std::int64_t> counts;  // trades per day
    std::vector<double> returns;
    std::vector<double> log_price;
};

void validate(PathConfig const& cfg);

// Number of fGn grid points: T*M rounded up to a power of two.
std::size_t fgn_length(PathConfig const& cfg);

// Cumulative intensity (lambda / M) sum_{j <= kM} exp(X_j) for k = 1..T
// from a driving fGn sample X.
std::vector<double> cumulative_intensity(std::vector<double> const& fgn,
                                         double lambda, PathConfig const& cfg);

std::vector<double> simulate_intensity(ModelParams const& p,
                                       PathConfig const& cfg);

// Daily counts from unit-rate arrivals on the clock lambda_tilde / lambda,
// i.e. durations with mean 1/lambda. Draws come from the durations
// substream of `seed`.
std::vector<std::int64_t> simulate_counts(std::vector<double> const& lambda_tilde,
                                          double lambda, PathConfig const& cfg);

DailySeries simulate_path(ModelParams const& p, PathConfig const& cfg);

// Two independent paths sharing one circulant FFT: the fGn draws come from
// the first configuration's seed, everything else from each path's own seed.
std::pair<DailySeries, DailySeries>
simulate_path_pair(ModelParams const& p, PathConfig const& first,
                   PathConfig const& second);

// Returns from two independent count/shock processes added together
// (buy side first: mu_1 > 0 >= mu_2, mu_1 + mu_2 > 0).
DailySeries simulate_two_shock_path(TwoShockParams const& p,
                                    PathConfig const& cfg);

}  // namespace lmpred
