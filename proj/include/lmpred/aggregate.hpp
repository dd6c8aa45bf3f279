#pragma once

#include <string>
#include <vector>

namespace lmpred
{
enum class HorizonRounding
{
    floor,
    nearest,
};

//---------------------------------------------------------------------------//
/*!
 * How the return horizon grows with the number of months: either
 * H = T^kappa (power law) or H = theta * T (linear growth).
 */
struct AggregationScheme
{
    enum class Kind
    {
        power_law,
        linear_growth,
    };

    Kind kind = Kind::power_law;
    double param = 0.1;  // kappa or theta
    int days_per_month = 20;
    HorizonRounding rounding = HorizonRounding::nearest;

    static AggregationScheme power_law(double kappa, int m = 20);
    static AggregationScheme linear_growth(double theta, int m = 20);
    std::string name() const;
};

// Horizon in months for a sample of T_tilde months (at least one);
// throws InsufficientData unless 2H < T_tilde.
int resolve_horizon(AggregationScheme const& scheme, long T_tilde);

long months_in(std::size_t days, int m);

//---------------------------------------------------------------------------//
/*!
 * Monthly aggregates of a daily return series.
 *
 * Month t (1-based) covers days (t-1)m+1 .. tm; trailing days that do not
 * fill a month are dropped. For a month index t:
 *   forward(t)       = sum of r over days tm+1 .. (t+H)m,     0 <= t <= T-H
 *   forward_skip(t)  = sum of r over days tm+h+1 .. (t+H)m,  0 <= t <= T-H
 *   backward(t)      = sum of r^2 over days (t-H)m+1 .. tm,  H <= t <= T
 */
class MonthlyPanel
{
  public:
    MonthlyPanel(std::vector<double> const& returns, int m, int H, int h = 0);

    int days_per_month() const { return m_; }
    int horizon() const { return H_; }
    int skip() const { return h_; }
    long months() const { return T_; }

    std::vector<double> const& monthly_returns() const { return month_r_; }
    std::vector<double> const& monthly_rv() const { return month_rv_; }

    double forward(long t) const;
    double forward_skip(long t) const;
    double backward(long t) const;

  private:
    int m_, H_, h_;
    long T_;
    std::vector<double> month_r_, month_rv_;
    std::vector<long double> cum_r_;  // daily prefix sums, size T*m + 1
    std::vector<long double> cum_r2_;
};

// Correlation of forward(t) with backward(t) over t = H..T-H.
double rho_hat(MonthlyPanel const& panel);
// Correlation of forward_skip(t) with backward(t) over t = H+1..T-H.
double rho_tilde(MonthlyPanel const& panel);
// Correlation of forward(t) (or forward_skip) with backward(t) over
// t = first..last.
double rho_range(MonthlyPanel const& panel, long first, long last,
                 bool skip_returns);

double rho_hat(std::vector<double> const& returns,
               AggregationScheme const& scheme);
double rho_tilde(std::vector<double> const& returns,
                 AggregationScheme const& scheme, int h);

// Pearson correlation; throws DegenerateVariance for constant input.
double sample_correlation(std::vector<double> const& x,
                          std::vector<double> const& y);

}  // namespace lmpred
