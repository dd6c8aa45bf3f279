#include "lmpred/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "lmpred/error.hpp"

namespace lmpred
{
double mean(std::vector<double> const& x)
{
    if (x.empty())
        throw InsufficientData("mean of an empty sample");
    double s = 0;
    for (double v : x)
        s += v;
    return s / static_cast<double>(x.size());
}

double variance_biased(std::vector<double> const& x)
{
    return autocovariance(x, 0);
}

double variance_unbiased(std::vector<double> const& x)
{
    if (x.size() < 2)
        throw InsufficientData("variance needs two observations");
    double n = static_cast<double>(x.size());
    return autocovariance(x, 0) * n / (n - 1);
}

double autocovariance(std::vector<double> const& x, std::size_t L)
{
    if (x.size() <= L)
        throw InsufficientData("series shorter than the requested lag");
    double m = mean(x);
    double s = 0;
    for (std::size_t t = 0; t + L < x.size(); ++t)
        s += (x[t] - m) * (x[t + L] - m);
    return s / static_cast<double>(x.size());
}

std::vector<double> to_double(std::vector<std::int64_t> const& x)
{
    return {x.begin(), x.end()};
}

double quantile(std::vector<double> x, double p)
{
    if (x.empty())
        throw InsufficientData("quantile of an empty sample");
    require(p >= 0 && p <= 1, "quantile level must lie in [0, 1]");
    std::sort(x.begin(), x.end());
    double h = (static_cast<double>(x.size()) - 1) * p;
    auto lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double normal_cdf(double z)
{
    return boost::math::cdf(boost::math::normal(), z);
}

double normal_quantile(double p)
{
    require(p > 0 && p < 1, "normal quantile level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal(), p);
}

LinearFit ols(std::vector<double> const& x, std::vector<double> const& y)
{
    require(x.size() == y.size(), "regression inputs differ in length");
    std::size_t n = x.size();
    if (n < 2)
        throw InsufficientData("regression needs two points");
    double mx = mean(x), my = mean(y);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0))
        throw DegenerateVariance("regressor is constant");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.slope_se = 0;
    if (n > 2)
    {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            double e = y[i] - f.intercept - f.slope * x[i];
            rss += e * e;
        }
        f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    }
    return f;
}

}  // namespace lmpred
