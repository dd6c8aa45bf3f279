#include "lmpred/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "lmpred/error.hpp"
#include "lmpred/stats.hpp"

namespace lmpred
{
namespace
{
double const sqrt_e = std::sqrt(std::numbers::e);

double lag_cov(double lambda, double c, double d, int L,
               EstimatorOptions const& opt)
{
    return lambda * lambda * std::numbers::e
           * weighted_lag_integral(L, c, d, opt.quad);
}

void check_options(EstimatorOptions const& opt)
{
    require(opt.lag1 >= 1 && opt.lag2 > opt.lag1, "need 1 <= lag1 < lag2");
    require(opt.c_min > 0 && opt.c_max > opt.c_min, "invalid c bracket");
    require(opt.d_max > 0 && opt.d_max < 0.5, "invalid d bracket");
    require(opt.max_iter >= 1, "iteration budget must be positive");
}
}  // namespace

SampleMoments sample_moments(std::vector<std::int64_t> const& counts,
                             std::vector<double> const& returns,
                             EstimatorOptions const& opt)
{
    check_options(opt);
    if (counts.size() != returns.size())
        throw DataFormatError("counts and returns differ in length");
    if (counts.size() <= static_cast<std::size_t>(opt.lag2) + 1)
        throw InsufficientData("series too short for the estimator lags");
    std::vector<double> n = to_double(counts);
    SampleMoments s;
    s.mean_count = mean(n);
    s.mean_return = mean(returns);
    s.var_count = variance_biased(n);
    s.var_return = variance_biased(returns);
    s.cov_count_1 = autocovariance(n, opt.lag1);
    s.cov_count_2 = autocovariance(n, opt.lag2);
    return s;
}

SampleMoments population_moments(ModelParams const& p,
                                 EstimatorOptions const& opt)
{
    MomentModel m(p, opt.quad);
    SampleMoments s;
    s.mean_count = m.mean_count();
    s.mean_return = m.mean_return();
    s.var_count = m.var_count();
    s.var_return = m.var_return();
    s.cov_count_1 = m.cov_count(opt.lag1);
    s.cov_count_2 = m.cov_count(opt.lag2);
    return s;
}

namespace
{
// Outcome of the inner search: the root, or which side of the attainable
// range the target falls on.
struct CSolve
{
    enum
    {
        found,
        below,  // target under the covariance at c_max
        above,  // target over the covariance at c_min
    } status;
    double c;
};

CSolve try_solve_c(double target, double lambda, double d,
                   EstimatorOptions const& opt)
{
    // The lag covariance decreases in c.
    double lo = opt.c_min, hi = opt.c_max;
    if (lag_cov(lambda, lo, d, opt.lag1, opt) < target)
        return {CSolve::above, lo};
    if (lag_cov(lambda, hi, d, opt.lag1, opt) > target)
        return {CSolve::below, hi};
    for (int it = 0; it < opt.max_iter && hi - lo > opt.tol * hi; ++it)
    {
        double mid = 0.5 * (lo + hi);
        if (lag_cov(lambda, mid, d, opt.lag1, opt) - target > 0)
            lo = mid;
        else
            hi = mid;
    }
    return {CSolve::found, 0.5 * (lo + hi)};
}

[[noreturn]] void no_root(double target, double d, EstimatorOptions const& opt)
{
    std::ostringstream os;
    os << "lag-" << opt.lag1 << " covariance " << target
       << " not bracketed by c in [" << opt.c_min << ", " << opt.c_max
       << "] at d=" << d;
    throw NoRoot(os.str());
}

// Excess of the model's second-lag covariance over the target once the first
// lag is matched at d. Where the first lag cannot be matched, the side of
// the failure gives the sign.
double excess_at(SampleMoments const& s, double lambda, double d,
                 EstimatorOptions const& opt, CSolve& solve)
{
    solve = try_solve_c(s.cov_count_1, lambda, d, opt);
    if (solve.status == CSolve::below)
        return 1.0;
    if (solve.status == CSolve::above)
        return -1.0;
    return lag_cov(lambda, solve.c, d, opt.lag2, opt) - s.cov_count_2;
}

struct CdSolution
{
    double d, c;
    bool at_bound;
};

// The matched second-lag covariance is not monotone in d for small c, so
// the two-lag system can have several roots. Roots are bracketed on a grid
// in d and refined by bisection; among several roots the one closest to the
// sample variance of the counts is taken.
CdSolution solve_c_d(SampleMoments const& s, double lambda,
                     EstimatorOptions const& opt)
{
    constexpr int grid = 49;
    std::vector<double> ds(grid + 1), fs(grid + 1);
    std::vector<CSolve> cs(grid + 1);
    for (int k = 0; k <= grid; ++k)
    {
        ds[k] = opt.d_max * k / grid;
        fs[k] = excess_at(s, lambda, ds[k], opt, cs[k]);
    }

    std::vector<CdSolution> cand;
    for (int k = 0; k < grid; ++k)
    {
        bool both = cs[k].status == CSolve::found
                    && cs[k + 1].status == CSolve::found;
        if (!both || (fs[k] < 0) == (fs[k + 1] < 0))
            continue;
        double lo = ds[k], hi = ds[k + 1];
        bool rising = fs[k] < 0;
        for (int it = 0; it < opt.max_iter && hi - lo > opt.tol; ++it)
        {
            double mid = 0.5 * (lo + hi);
            CSolve tmp;
            double f = excess_at(s, lambda, mid, opt, tmp);
            if ((f < 0) == rising)
                lo = mid;
            else
                hi = mid;
        }
        double d = 0.5 * (lo + hi);
        CSolve at = try_solve_c(s.cov_count_1, lambda, d, opt);
        if (at.status == CSolve::found)
            cand.push_back({d, at.c, false});
    }
    // without an interior root, d sits on the end of the range it points to
    if (cand.empty() && cs[0].status == CSolve::found && fs[0] >= 0)
        cand.push_back({0, cs[0].c, true});
    if (cand.empty() && cs[grid].status == CSolve::found && fs[grid] < 0)
        cand.push_back({opt.d_max, cs[grid].c, true});

    if (cand.empty())
    {
        std::ostringstream os;
        os << "no (c, d) matches count autocovariances " << s.cov_count_1
           << " and " << s.cov_count_2 << " at lags " << opt.lag1 << ", "
           << opt.lag2;
        throw NoRoot(os.str());
    }
    double lag0 = s.var_count - lambda * sqrt_e;
    auto mismatch = [&](CdSolution const& x) {
        return std::fabs(lambda * lambda * std::numbers::e
                             * weighted_lag_integral(0, x.c, x.d, opt.quad)
                         - lag0);
    };
    return *std::min_element(cand.begin(), cand.end(),
                             [&](auto const& a, auto const& b) {
                                 return mismatch(a) < mismatch(b);
                             });
}
}  // namespace

double solve_c(double target, double lambda, double d,
               EstimatorOptions const& opt)
{
    check_options(opt);
    CSolve r = try_solve_c(target, lambda, d, opt);
    if (r.status != CSolve::found)
        no_root(target, d, opt);
    return r.c;
}

EstimateReport estimate_from_moments(SampleMoments const& s,
                                     EstimatorOptions const& opt)
{
    check_options(opt);
    if (!(s.mean_count > 0))
        throw ZeroCounts("no trades in the sample");
    EstimateReport r;
    ModelParams& p = r.params;
    p.mu = s.mean_return / s.mean_count;
    p.lambda = s.mean_count / sqrt_e;

    double s2 = (s.var_return - p.mu * p.mu * s.var_count) / (p.lambda * sqrt_e);
    r.sigma_e_negative = s2 < 0;
    p.sigma_e = r.sigma_e_negative ? 0.0 : std::sqrt(s2);

    if (!(s.cov_count_1 > 0))
        throw NegativeSampleCov("lag-" + std::to_string(opt.lag1)
                                + " count autocovariance is not positive");

    double target1 = s.cov_count_1;
    if (opt.fix_d_zero)
    {
        p.d = 0;
        p.c = solve_c(target1, p.lambda, 0, opt);
    }
    else
    {
        auto [d, c, at_bound] = solve_c_d(s, p.lambda, opt);
        p.d = d;
        p.c = c;
        r.d_at_bound = at_bound;
    }
    double m1 = lag_cov(p.lambda, p.c, p.d, opt.lag1, opt);
    double m2 = lag_cov(p.lambda, p.c, p.d, opt.lag2, opt);
    r.residual_1 = (m1 - s.cov_count_1) / std::fabs(s.cov_count_1);
    r.residual_2 = s.cov_count_2 != 0
                       ? (m2 - s.cov_count_2) / std::fabs(s.cov_count_2)
                       : m2 - s.cov_count_2;
    return r;
}

EstimateReport estimate_all(std::vector<std::int64_t> const& counts,
                            std::vector<double> const& returns,
                            EstimatorOptions const& opt)
{
    return estimate_from_moments(sample_moments(counts, returns, opt), opt);
}

}  // namespace lmpred
