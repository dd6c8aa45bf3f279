#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lmpred/error.hpp"
#include "lmpred/fgn.hpp"
#include "lmpred/moments.hpp"

using namespace lmpred;

namespace
{
double const e = std::numbers::e;

ModelParams paper_params(double c = 1, double d = 0)
{
    ModelParams p;
    p.c = c;
    p.d = d;
    return p;
}

// Lemma form of the aggregated-return covariance for h-dependent returns.
double aggregated_display(MomentModel& model, int H, int m, int L)
{
    auto g = [&](long k) { return model.cov_return(k); };
    long a = static_cast<long>(H - L) * m;
    double v = 0;
    if ((H - L) % 2 == 1)
    {
        double s = g(0);
        for (long k = 1; k <= m; ++k)
            s += 2 * g(k);
        v = a * s;
        for (long k = m + 1; k <= a; ++k)
            v += 2 * ((H - L + 1) * m - k) * g(k);
    }
    else
    {
        double s = g(0);
        for (long k = 1; k <= a; ++k)
            s += 2 * g(k);
        v = a * s;
    }
    for (long k = a + 1; k <= static_cast<long>(H + L) * m - 1; ++k)
        v += ((H + L) * m - k) * g(k);
    return v;
}
}  // namespace

TEST_SUITE("moments")
{
TEST_CASE("dependence lag")
{
    CHECK(compute_h(1) == 1);
    CHECK(compute_h(0.5) == 3);
    CHECK(compute_h(2) == 1);
    CHECK(compute_h(0.3) == 4);
    CHECK(compute_h(0.4) == 3);
}

TEST_CASE("limit of the correlation")
{
    CHECK(rho_limit(0) == 0);
    CHECK(rho_limit(0.3545) == doctest::Approx(0.634671).epsilon(1e-6));
    CHECK(rho_limit(0.25) == doctest::Approx(std::sqrt(2.0) - 1).epsilon(1e-14));
}

TEST_CASE("first and second moments at d = 0")
{
    auto p = paper_params();
    double lam = p.lambda, mu = p.mu, s = p.sigma_e;
    MomentModel m(p);
    CHECK(m.mean_count() == doctest::Approx(211.38008).epsilon(1e-7));
    CHECK(m.mean_count() == doctest::Approx(lam * std::sqrt(e)).epsilon(1e-15));
    CHECK(m.mean_return() == doctest::Approx(3.000e-4).epsilon(1e-3));
    CHECK(m.var_count()
          == doctest::Approx(lam * lam * e + lam * std::sqrt(e)).epsilon(1e-13));
    CHECK(m.var_count() == doctest::Approx(4.489e4).epsilon(1e-3));
    CHECK(m.var_return()
          == doctest::Approx(mu * mu * lam * lam * e
                             + lam * std::sqrt(e) * (mu * mu + s * s))
                 .epsilon(1e-13));
    CHECK(m.cov_return(1)
          == doctest::Approx(mu * mu * lam * lam * e * (e - 2.5)).epsilon(1e-13));
    CHECK(m.cov_count(1) == doctest::Approx(lam * lam * e * (e - 2.5)).epsilon(1e-13));
}

TEST_CASE("zero drift")
{
    auto p = paper_params(0.5, 0.2);
    p.mu = 0;
    MomentModel m(p);
    CHECK(m.mean_return() == 0);
    for (long L : {1, 2, 5, 300})
    {
        CHECK(m.cov_return(L) == 0);
        CHECK(m.cov_return_sqreturn(L) == 0);
    }
    auto t = moment_table(p);
    CHECK(t.A1 == doctest::Approx(p.lambda * std::sqrt(e) * p.sigma_e * p.sigma_e)
                      .epsilon(1e-14));
    CHECK(t.h == 3);

    p.sigma_e = 0;
    CHECK(MomentModel(p).var_sqreturn() == 0);
}

TEST_CASE("variance of squared returns without drift")
{
    // r | N ~ N(0, s^2 N): var(r^2) = 3 s^4 E[N^2] - s^4 E[N]^2
    for (double d : {0.0, 0.25})
    {
        auto p = paper_params(0.8, d);
        p.mu = 0;
        MomentModel m(p);
        double s4 = std::pow(p.sigma_e, 4);
        double n1 = m.mean_count();
        double n2 = m.var_count() + n1 * n1;
        CHECK(m.var_sqreturn() == doctest::Approx(s4 * (3 * n2 - n1 * n1)).epsilon(1e-12));
    }
}

TEST_CASE("conditional covariance assembly")
{
    // cov(r_0^2, r_L^2) = cov(E[r_0^2 | nu], E[r_L^2 | nu]) with
    // E[r^2 | nu] = mu^2 (nu^2 + nu) + s^2 nu
    auto p = paper_params(1.0741, 0.3545);
    MomentModel m(p);
    double mu2 = p.mu * p.mu, s2 = p.sigma_e * p.sigma_e, lam = p.lambda;
    for (long L : {1, 3, 10})
    {
        double nn = lam * lam * m.cov_AA(L);
        double bn = std::pow(lam, 3) * m.cov_AB(L);
        double bb = std::pow(lam, 4) * m.cov_BB(L);
        double ref = mu2 * mu2 * bb + 2 * mu2 * (mu2 + s2) * bn
                     + (mu2 + s2) * (mu2 + s2) * nn;
        CHECK(m.cov_sqreturn(L) == doctest::Approx(ref).epsilon(1e-13));
        double ref_rs = p.mu * mu2 * bn + p.mu * (mu2 + s2) * nn;
        CHECK(m.cov_return_sqreturn(L) == doctest::Approx(ref_rs).epsilon(1e-13));
        CHECK(m.cov_AA(L)
              == doctest::Approx(e * weighted_lag_integral(L, p.c, p.d)).epsilon(1e-13));
    }
}

TEST_CASE("h-dependence at d = 0")
{
    for (double c : {0.3, 0.5, 1.0, 2.0})
    {
        auto p = paper_params(c, 0);
        MomentModel m(p);
        int h = compute_h(c);
        for (long L = h + 1; L <= h + 4; ++L)
        {
            CHECK(m.cov_return(L) == 0);
            CHECK(m.cov_count(L) == 0);
            CHECK(m.cov_sqreturn(L) == 0);
            CHECK(m.cov_return_sqreturn(L) == 0);
        }
        CHECK(m.cov_return(1) > 0);
    }
}

TEST_CASE("positive predictability")
{
    for (double c : {0.5, 1.0, 2.0})
        for (double d : {0.0, 0.15, 0.35})
        {
            MomentModel m(paper_params(c, d));
            for (long L = 1; L <= m.h(); ++L)
            {
                // at d = 0 the covariance is exactly zero past the support
                if (m.cov_AA(L) > 0)
                    CHECK(m.cov_return_sqreturn(L) > 0);
                else
                    CHECK(m.cov_return_sqreturn(L) == 0);
            }
            if (d > 0)
                CHECK(m.cov_return_sqreturn(50) > 0);
        }
}

TEST_CASE("large-lag behaviour")
{
    auto p = paper_params(1, 0.35);
    MomentModel m(p);
    double mu2 = p.mu * p.mu, lam = p.lambda;
    double L = 1e6;
    double ratio = m.cov_return(1'000'000) / (mu2 * lam * lam * e * gamma_z(L, 1, 0.35));
    CHECK(ratio >= 0.99);
    CHECK(ratio <= 1.01);
    CHECK(m.asymptote_return() == doctest::Approx(mu2 * lam * lam * e).epsilon(1e-14));

    // substituted forms beyond the quadrature range stay continuous
    MomentModel far(p, {}, 100000);
    for (long k : {201, 500, 5000})
    {
        CAPTURE(k);
        CHECK(m.cov_AA(k) == doctest::Approx(far.cov_AA(k)).epsilon(1e-4));
        CHECK(m.cov_AB(k) == doctest::Approx(far.cov_AB(k)).epsilon(1e-4));
        CHECK(m.cov_BB(k) == doctest::Approx(far.cov_BB(k)).epsilon(1e-4));
    }
}

TEST_CASE("aggregated-return covariance")
{
    MomentModel m(paper_params(1, 0));
    int H = 2, mm = 3, L = 1;
    double brute = 0;
    for (int i = 1; i <= H * mm; ++i)
        for (int j = 1; j <= H * mm; ++j)
            brute += m.cov_return(std::abs(i + L * mm - j));
    CHECK(cov_aggregated_returns(m, H, mm, L) == doctest::Approx(brute).epsilon(1e-14));

    // adjacent windows share only the lags that straddle the boundary
    MomentModel m3(paper_params(0.5, 0));
    for (int Hh : {1, 3, 5})
    {
        double ref = 0;
        for (int k = 1; k <= 3; ++k)
            ref += k * m3.cov_return(k);
        CHECK(cov_aggregated_returns(m3, Hh, 20, Hh) == doctest::Approx(ref).epsilon(1e-14));
    }

    // odd/even closed form, valid for h <= m and L < H
    for (int Hh = 2; Hh <= 6; ++Hh)
        for (int LL = 1; LL < Hh; ++LL)
        {
            CAPTURE(Hh);
            CAPTURE(LL);
            CHECK(cov_aggregated_returns(m3, Hh, 5, LL)
                  == doctest::Approx(aggregated_display(m3, Hh, 5, LL)).epsilon(1e-13));
        }
    auto pz = paper_params(1, 0.2);
    pz.mu = 0;
    MomentModel mz(pz);
    CHECK(cov_aggregated_returns(mz, 3, 4, 3) == 0);
    CHECK(cov_aggregated_returns(mz, 3, 4, 2) > 0);
}

TEST_CASE("asymptotic variance factorizes")
{
    for (double c : {0.3, 0.5, 1.0, 2.0})
        for (double d : {0.0, 0.2})
        {
            auto t = moment_table(paper_params(c, d));
            CHECK(t.A1 > 0);
            CHECK(t.A2 > 0);
            CHECK(std::abs(t.S2 / (t.A1 * t.A2) - 2.0 / 3.0) < 1e-12 * 2.0 / 3.0);
            CHECK(t.cov_returns.size() == std::size_t(t.h));
        }
}

TEST_CASE("two independent shock processes")
{
    TwoShockParams tp{paper_params(1, 0.2), paper_params(1, 0.2)};
    tp.second.mu = 0;
    tp.second.sigma_e = 0;
    for (long L : {1, 2, 7})
    {
        CHECK(cov_return_sqreturn(tp, L)
              == doctest::Approx(cov_return_sqreturn(tp.first, L)).epsilon(1e-13));
        CHECK(cov_returns(tp, L) == doctest::Approx(cov_returns(tp.first, L)).epsilon(1e-13));
    }
    CHECK(var_returns(tp) == doctest::Approx(var_returns(tp.first)).epsilon(1e-13));

    // opposite drifts with a positive total still predict
    TwoShockParams mixed{paper_params(1, 0.2), paper_params(1, 0.2)};
    mixed.first.mu = 2e-6;
    mixed.second.mu = -1e-6;
    for (long L : {1, 2, 5})
        CHECK(cov_return_sqreturn(mixed, L) > 0);
}
}
