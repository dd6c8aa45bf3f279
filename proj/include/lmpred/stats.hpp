#pragma once

#include <cstdint>
#include <vector>

namespace lmpred
{
double mean(std::vector<double> const& x);
// Variance with 1/n normalization.
double variance_biased(std::vector<double> const& x);
// Variance with 1/(n-1) normalization.
double variance_unbiased(std::vector<double> const& x);
// (1/n) sum_{t} (x_t - xbar)(x_{t+L} - xbar)
double autocovariance(std::vector<double> const& x, std::size_t L);

std::vector<double> to_double(std::vector<std::int64_t> const& x);

// Linear-interpolation quantile of the sample (R type 7).
double quantile(std::vector<double> x, double p);

double normal_cdf(double z);
double normal_quantile(double p);

struct LinearFit
{
    double intercept;
    double slope;
    double slope_se;
};
LinearFit ols(std::vector<double> const& x, std::vector<double> const& y);

}  // namespace lmpred
