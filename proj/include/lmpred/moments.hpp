#pragma once

#include <map>
#include <vector>

#include "lmpred/quadrature.hpp"

namespace lmpred
{
struct ModelParams
{
    double mu = 1.419188e-6;
    double lambda = 128.2085;
    double sigma_e = 0.0007289;
    double c = 1;
    double d = 0;
};

void validate(ModelParams const& p);

// Largest lag with nonzero dependence under d = 0.
int compute_h(double c);

// Limit of rho as the horizon grows: 2^{2d} - 1.
double rho_limit(double d);

//---------------------------------------------------------------------------//
/*!
 * Closed-form moments of daily counts and returns.
 *
 * Lag integrals are cached. For d > 0 and lags beyond lag_max the leading
 * large-lag form proportional to gamma_z(L) is used instead of quadrature.
 */
class MomentModel
{
  public:
    explicit MomentModel(ModelParams const& p, QuadratureConfig q = {},
                         int lag_max = 200);

    ModelParams const& params() const { return p_; }
    int h() const { return compute_h(p_.c); }

    // cov(A_L, A_0), cov(A_0, B_L), cov(B_L, B_0) where A = nu / lambda and
    // B = (nu / lambda)^2 for the daily integrated intensity nu.
    double cov_AA(long L);
    double cov_AB(long L);
    double cov_BB(long L);
    // int int exp(gamma(t - s)) ds dt
    double w2();
    NuMoments nu_moments();

    double mean_count();
    double var_count();
    double cov_count(long L);

    double mean_return();
    double var_return();
    // L = 0 gives the variance
    double cov_return(long L);
    double var_sqreturn();
    double cov_sqreturn(long L);
    // cov(r_L, r_0^2) = cov(r_0, r_L^2)
    double cov_return_sqreturn(long L);

    // Constants C with cov(.)_L ~ C gamma_z(L) as L grows.
    double asymptote_return() ;
    double asymptote_sqreturn();
    double asymptote_return_sqreturn();

  private:
    ModelParams p_;
    QuadratureConfig q_;
    int lag_max_;
    std::map<long, double> aa_, ab_, bb_;
    double w2_ = -1;
    bool have_nu_ = false;
    NuMoments nu_{};

    bool use_asymptote(long L) const;
    bool beyond_support(long L) const;
};

// Free-function forms of the moment formulas.
double mean_count(ModelParams const& p);
double var_counts(ModelParams const& p, QuadratureConfig const& q = {});
double cov_counts(ModelParams const& p, long L, QuadratureConfig const& q = {});
double var_returns(ModelParams const& p, QuadratureConfig const& q = {});
double cov_returns(ModelParams const& p, long L, QuadratureConfig const& q = {});
double var_sqreturns(ModelParams const& p, QuadratureConfig const& q = {});
double cov_sqreturns(ModelParams const& p, long L,
                     QuadratureConfig const& q = {});
double cov_return_sqreturn(ModelParams const& p, long L,
                           QuadratureConfig const& q = {});

// Covariance of non-overlapping H*m-day aggregated returns L windows apart:
// sum_{|q| < Hm} (Hm - |q|) gamma_r(L m + q).
double cov_aggregated_returns(MomentModel& model, int H, int m, long L);

//---------------------------------------------------------------------------//
struct MomentTable
{
    int h = 0;
    double mean_return = 0;
    double var_return = 0;
    double var_sqreturn = 0;
    std::vector<double> cov_returns;  // lags 1..h
    std::vector<double> cov_sqreturns;
    std::vector<double> cov_return_sqreturn;
    double A1 = 0;
    double A2 = 0;
    double S2 = 0;
};

MomentTable moment_table(ModelParams const& p, QuadratureConfig const& q = {});
MomentTable moment_table(MomentModel& model);

//---------------------------------------------------------------------------//
/*!
 * Returns driven by two independent Cox processes: r = r_1 + r_2.
 */
struct TwoShockParams
{
    ModelParams first;
    ModelParams second;
};

double var_returns(TwoShockParams const& p, QuadratureConfig const& q = {});
double cov_returns(TwoShockParams const& p, long L,
                   QuadratureConfig const& q = {});
double cov_return_sqreturn(TwoShockParams const& p, long L,
                           QuadratureConfig const& q = {});

}  // namespace lmpred
