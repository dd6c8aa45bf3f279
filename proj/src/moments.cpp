#include "lmpred/moments.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "lmpred/error.hpp"
#include "lmpred/fgn.hpp"

namespace lmpred
{
namespace
{
constexpr double e1 = std::numbers::e;
double const sqrt_e = std::sqrt(std::numbers::e);

double lookup(std::map<long, double>& cache, long L, auto&& compute)
{
    auto it = cache.find(L);
    if (it != cache.end())
        return it->second;
    double v = compute();
    cache.emplace(L, v);
    return v;
}
}  // namespace

void validate(ModelParams const& p)
{
    require(std::isfinite(p.mu), "mu must be finite");
    require(std::isfinite(p.lambda) && p.lambda > 0, "lambda must be positive");
    require(std::isfinite(p.sigma_e) && p.sigma_e >= 0,
            "sigma_e must be non-negative");
    validate_covariance(p.c, p.d);
}

int compute_h(double c)
{
    require(std::isfinite(c) && c > 0, "c must be positive");
    if (c < 1)
        return static_cast<int>(std::floor(1 / c)) + 1;
    return std::max(static_cast<int>(std::floor(1 / c - 1)) + 1, 1);
}

double rho_limit(double d)
{
    return std::exp2(2 * d) - 1;
}

MomentModel::MomentModel(ModelParams const& p, QuadratureConfig q,
                         int lag_max)
    : p_(p), q_(q), lag_max_(lag_max)
{
    validate(p);
    require(lag_max >= 1, "lag_max must be at least 1");
}

bool MomentModel::use_asymptote(long L) const
{
    return p_.d > 0 && std::labs(L) > lag_max_;
}

bool MomentModel::beyond_support(long L) const
{
    // Under d = 0 every lag integrand vanishes once L - 1 >= 1/c.
    return p_.d == 0 && std::labs(L) - 1 >= 1 / p_.c;
}

double MomentModel::w2()
{
    if (w2_ < 0)
        w2_ = double_exp_integral(p_.c, p_.d, q_);
    return w2_;
}

double MomentModel::cov_AA(long L)
{
    L = std::labs(L);
    if (beyond_support(L))
        return 0;
    if (use_asymptote(L))
        return e1 * std::expm1(gamma_z(L, p_.c, p_.d));
    return lookup(aa_, L, [&] {
        return e1 * weighted_lag_integral(L, p_.c, p_.d, q_);
    });
}

double MomentModel::cov_AB(long L)
{
    L = std::labs(L);
    if (beyond_support(L))
        return 0;
    if (use_asymptote(L))
        return e1 * sqrt_e * w2() * std::expm1(2 * gamma_z(L, p_.c, p_.d));
    return lookup(ab_, L, [&] {
        return e1 * sqrt_e * integrate_3d_ALB0(L, p_.c, p_.d, q_);
    });
}

double MomentModel::cov_BB(long L)
{
    L = std::labs(L);
    if (beyond_support(L))
        return 0;
    if (use_asymptote(L))
        return e1 * e1 * w2() * w2()
               * std::expm1(4 * gamma_z(L, p_.c, p_.d));
    return lookup(bb_, L, [&] {
        return e1 * e1 * integrate_4d_B0BL(L, p_.c, p_.d, q_);
    });
}

NuMoments MomentModel::nu_moments()
{
    if (!have_nu_)
    {
        double lam = p_.lambda;
        double w = w2();
        nu_.m1 = lam * sqrt_e;
        nu_.m2 = lam * lam * e1 * w;
        nu_.m3 = std::pow(lam, 3) * (cov_AB(0) + sqrt_e * e1 * w);
        nu_.m4 = std::pow(lam, 4) * (cov_BB(0) + e1 * e1 * w * w);
        have_nu_ = true;
    }
    return nu_;
}

double MomentModel::mean_count()
{
    return p_.lambda * sqrt_e;
}

double MomentModel::var_count()
{
    return p_.lambda * p_.lambda * cov_AA(0) + mean_count();
}

double MomentModel::cov_count(long L)
{
    if (L == 0)
        return var_count();
    return p_.lambda * p_.lambda * cov_AA(L);
}

double MomentModel::mean_return()
{
    return p_.mu * mean_count();
}

double MomentModel::var_return()
{
    double mu2 = p_.mu * p_.mu;
    double s2 = p_.sigma_e * p_.sigma_e;
    return mu2 * p_.lambda * p_.lambda * cov_AA(0) + mean_count() * (mu2 + s2);
}

double MomentModel::cov_return(long L)
{
    if (L == 0)
        return var_return();
    return p_.mu * p_.mu * p_.lambda * p_.lambda * cov_AA(L);
}

double MomentModel::var_sqreturn()
{
    NuMoments nu = nu_moments();
    double n2 = nu.m1 + nu.m2;
    double n3 = nu.m1 + 3 * nu.m2 + nu.m3;
    double n4 = nu.m1 + 7 * nu.m2 + 6 * nu.m3 + nu.m4;
    double mu = p_.mu;
    double s2 = p_.sigma_e * p_.sigma_e;
    double er4 = std::pow(mu, 4) * n4 + 6 * mu * mu * s2 * n3 + 3 * s2 * s2 * n2;
    double v = var_return();
    double m = mean_return();
    double out = er4 - v * v - 2 * m * m * v - std::pow(m, 4);
    if (out < 0)
        throw NegativeVariance("var(r^2) = " + std::to_string(out));
    return out;
}

double MomentModel::cov_sqreturn(long L)
{
    if (L == 0)
        return var_sqreturn();
    double mu2 = p_.mu * p_.mu;
    double k = mu2 + p_.sigma_e * p_.sigma_e;
    double lam = p_.lambda;
    return k * k * lam * lam * cov_AA(L)
           + 2 * mu2 * k * std::pow(lam, 3) * cov_AB(L)
           + mu2 * mu2 * std::pow(lam, 4) * cov_BB(L);
}

double MomentModel::cov_return_sqreturn(long L)
{
    double mu = p_.mu;
    double lam = p_.lambda;
    double s2 = p_.sigma_e * p_.sigma_e;
    double aa = cov_AA(L);
    return std::pow(mu, 3) * (std::pow(lam, 3) * cov_AB(L) + lam * lam * aa)
           + mu * s2 * lam * lam * aa;
}

double MomentModel::asymptote_return()
{
    return p_.mu * p_.mu * p_.lambda * p_.lambda * e1;
}

double MomentModel::asymptote_sqreturn()
{
    double mu2 = p_.mu * p_.mu;
    double k = mu2 + p_.sigma_e * p_.sigma_e;
    double lam = p_.lambda;
    double w = w2();
    return k * k * lam * lam * e1
           + 2 * mu2 * k * std::pow(lam, 3) * 2 * e1 * sqrt_e * w
           + mu2 * mu2 * std::pow(lam, 4) * 4 * e1 * e1 * w * w;
}

double MomentModel::asymptote_return_sqreturn()
{
    double mu = p_.mu;
    double lam = p_.lambda;
    double s2 = p_.sigma_e * p_.sigma_e;
    return std::pow(mu, 3)
               * (std::pow(lam, 3) * 2 * e1 * sqrt_e * w2() + lam * lam * e1)
           + mu * s2 * lam * lam * e1;
}

double mean_count(ModelParams const& p)
{
    return MomentModel(p).mean_count();
}
double var_counts(ModelParams const& p, QuadratureConfig const& q)
{
    return MomentModel(p, q).var_count();
}
double cov_counts(ModelParams const& p, long L, QuadratureConfig const& q)
{
    return MomentModel(p, q).cov_count(L);
}
double var_returns(ModelParams const& p, QuadratureConfig const& q)
{
    return MomentModel(p, q).var_return();
}
double cov_returns(ModelParams const& p, long L, QuadratureConfig const& q)
{
    return MomentModel(p, q).cov_return(L);
}
double var_sqreturns(ModelParams const& p, QuadratureConfig const& q)
{
    return MomentModel(p, q).var_sqreturn();
}
double cov_sqreturns(ModelParams const& p, long L, QuadratureConfig const& q)
{
    return MomentModel(p, q).cov_sqreturn(L);
}
double cov_return_sqreturn(ModelParams const& p, long L,
                           QuadratureConfig const& q)
{
    return MomentModel(p, q).cov_return_sqreturn(L);
}

double cov_aggregated_returns(MomentModel& model, int H, int m, long L)
{
    require(H >= 1 && m >= 1, "horizon and month length must be positive");
    long span = static_cast<long>(H) * m;
    double total = 0;
    for (long q = -(span - 1); q <= span - 1; ++q)
        total += static_cast<double>(span - std::labs(q))
                 * model.cov_return(std::labs(L * m + q));
    return total;
}

MomentTable moment_table(MomentModel& model)
{
    MomentTable t;
    t.h = model.h();
    t.mean_return = model.mean_return();
    t.var_return = model.var_return();
    t.var_sqreturn = model.var_sqreturn();
    for (int L = 1; L <= t.h; ++L)
    {
        t.cov_returns.push_back(model.cov_return(L));
        t.cov_sqreturns.push_back(model.cov_sqreturn(L));
        t.cov_return_sqreturn.push_back(model.cov_return_sqreturn(L));
    }
    auto r = [&](int u) { return u == 0 ? t.var_return : t.cov_returns[std::abs(u) - 1]; };
    auto r2 = [&](int u) {
        return u == 0 ? t.var_sqreturn : t.cov_sqreturns[std::abs(u) - 1];
    };
    t.A1 = t.var_return;
    t.A2 = t.var_sqreturn;
    for (int L = 1; L <= t.h; ++L)
    {
        t.A1 += 2 * r(L);
        t.A2 += 2 * r2(L);
    }
    double s = 0;
    for (int u = -t.h; u <= t.h; ++u)
        for (int v = -t.h; v <= t.h; ++v)
            s += r(u) * r2(v);
    t.S2 = 2.0 / 3.0 * s;
    return t;
}

MomentTable moment_table(ModelParams const& p, QuadratureConfig const& q)
{
    MomentModel model(p, q);
    return moment_table(model);
}

double var_returns(TwoShockParams const& p, QuadratureConfig const& q)
{
    return var_returns(p.first, q) + var_returns(p.second, q);
}

double cov_returns(TwoShockParams const& p, long L, QuadratureConfig const& q)
{
    return cov_returns(p.first, L, q) + cov_returns(p.second, L, q);
}

double cov_return_sqreturn(TwoShockParams const& p, long L,
                           QuadratureConfig const& q)
{
    MomentModel a(p.first, q);
    MomentModel b(p.second, q);
    // Cross terms: cov(r_{i,L}, 2 r_{i,0} r_{j,0}) = 2 E[r_j] cov_i(L).
    return a.cov_return_sqreturn(L) + b.cov_return_sqreturn(L)
           + 2 * b.mean_return() * a.cov_return(L)
           + 2 * a.mean_return() * b.cov_return(L);
}

}  // namespace lmpred
