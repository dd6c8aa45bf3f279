#include "lmpred/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmpred/error.hpp"

namespace lmpred
{
AggregationScheme AggregationScheme::power_law(double kappa, int m)
{
    require(std::isfinite(kappa) && kappa > 0 && kappa < 1,
            "kappa must lie in (0, 1)");
    require(m >= 1, "days per month must be positive");
    return {Kind::power_law, kappa, m, HorizonRounding::nearest};
}

AggregationScheme AggregationScheme::linear_growth(double theta, int m)
{
    require(std::isfinite(theta) && theta > 0 && theta < 0.5,
            "theta must lie in (0, 1/2)");
    require(m >= 1, "days per month must be positive");
    return {Kind::linear_growth, theta, m, HorizonRounding::nearest};
}

std::string AggregationScheme::name() const
{
    return kind == Kind::power_law ? "power_law" : "linear_growth";
}

long months_in(std::size_t days, int m)
{
    require(m >= 1, "days per month must be positive");
    return static_cast<long>(days / static_cast<std::size_t>(m));
}

int resolve_horizon(AggregationScheme const& scheme, long T_tilde)
{
    require(T_tilde >= 1, "number of months must be positive");
    double raw = scheme.kind == AggregationScheme::Kind::power_law
                     ? std::pow(static_cast<double>(T_tilde), scheme.param)
                     : scheme.param * static_cast<double>(T_tilde);
    double r = scheme.rounding == HorizonRounding::floor ? std::floor(raw)
                                                         : std::round(raw);
    long H = std::max(1L, static_cast<long>(r));
    if (2 * H >= T_tilde)
    {
        std::ostringstream os;
        os << "horizon " << H << " months leaves no windows in " << T_tilde
           << " months";
        throw InsufficientData(os.str());
    }
    return static_cast<int>(H);
}

MonthlyPanel::MonthlyPanel(std::vector<double> const& returns, int m, int H,
                           int h)
    : m_(m), H_(H), h_(h)
{
    require(m >= 1, "days per month must be positive");
    require(H >= 1, "horizon must be positive");
    require(h >= 0 && static_cast<long>(h) < static_cast<long>(H) * m,
            "skip must be shorter than the horizon");
    T_ = months_in(returns.size(), m);
    if (T_ < 2 * static_cast<long>(H) + 1)
    {
        std::ostringstream os;
        os << "need at least " << (2 * H + 1) * m << " days for horizon " << H
           << ", got " << returns.size();
        throw InsufficientData(os.str());
    }
    std::size_t n = static_cast<std::size_t>(T_) * m;
    cum_r_.assign(n + 1, 0);
    cum_r2_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
    {
        double r = returns[i];
        require(std::isfinite(r), "returns must be finite");
        cum_r_[i + 1] = cum_r_[i] + r;
        cum_r2_[i + 1] = cum_r2_[i] + static_cast<long double>(r) * r;
    }
    month_r_.resize(T_);
    month_rv_.resize(T_);
    for (long t = 0; t < T_; ++t)
    {
        month_r_[t] = static_cast<double>(cum_r_[(t + 1) * m] - cum_r_[t * m]);
        month_rv_[t]
            = static_cast<double>(cum_r2_[(t + 1) * m] - cum_r2_[t * m]);
    }
}

double MonthlyPanel::forward(long t) const
{
    return static_cast<double>(cum_r_[(t + H_) * m_] - cum_r_[t * m_]);
}

double MonthlyPanel::forward_skip(long t) const
{
    return static_cast<double>(cum_r_[(t + H_) * m_] - cum_r_[t * m_ + h_]);
}

double MonthlyPanel::backward(long t) const
{
    return static_cast<double>(cum_r2_[t * m_] - cum_r2_[(t - H_) * m_]);
}

double sample_correlation(std::vector<double> const& x,
                          std::vector<double> const& y)
{
    require(x.size() == y.size(), "correlation inputs differ in length");
    std::size_t n = x.size();
    if (n < 2)
        throw DegenerateVariance("fewer than two pairs");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0, ax = 0, ay = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
        ax = std::max(ax, std::fabs(x[i]));
        ay = std::max(ay, std::fabs(y[i]));
    }
    // spread at rounding level counts as constant
    double noise = 1e-13 * 1e-13 * static_cast<double>(n);
    if (!(sxx > noise * ax * ax) || !(syy > noise * ay * ay))
        throw DegenerateVariance("zero variance in correlation");
    return sxy / std::sqrt(sxx * syy);
}

double rho_range(MonthlyPanel const& panel, long first, long last,
                 bool skip_returns)
{
    long H = panel.horizon();
    require(first >= H && last <= panel.months() - H && first <= last,
            "window range outside the sample");
    std::vector<double> f, b;
    f.reserve(last - first + 1);
    b.reserve(last - first + 1);
    for (long t = first; t <= last; ++t)
    {
        f.push_back(skip_returns ? panel.forward_skip(t) : panel.forward(t));
        b.push_back(panel.backward(t));
    }
    return sample_correlation(f, b);
}

double rho_hat(MonthlyPanel const& panel)
{
    return rho_range(panel, panel.horizon(), panel.months() - panel.horizon(),
                     false);
}

double rho_tilde(MonthlyPanel const& panel)
{
    return rho_range(panel, panel.horizon() + 1,
                     panel.months() - panel.horizon(), true);
}

double rho_hat(std::vector<double> const& returns,
               AggregationScheme const& scheme)
{
    long T = months_in(returns.size(), scheme.days_per_month);
    int H = resolve_horizon(scheme, T);
    return rho_hat(MonthlyPanel(returns, scheme.days_per_month, H));
}

double rho_tilde(std::vector<double> const& returns,
                 AggregationScheme const& scheme, int h)
{
    long T = months_in(returns.size(), scheme.days_per_month);
    int H = resolve_horizon(scheme, T);
    return rho_tilde(MonthlyPanel(returns, scheme.days_per_month, H, h));
}

}  // namespace lmpred
