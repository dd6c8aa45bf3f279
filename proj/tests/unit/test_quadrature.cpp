#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lmpred/fgn.hpp"
#include "lmpred/quadrature.hpp"

using namespace lmpred;

namespace
{
// Midpoint rule on [-1,0]^3 of the triple integral in its original form.
double midpoint_3d(double L, double c, double d, int n)
{
    double h = 1.0 / n;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = -1 + (i + 0.5) * h;
    double s = 0;
    for (double a : x)
        for (double b : x)
        {
            double gst = 0;
            for (double u : x)
                gst += std::exp(gamma_z(b - u, c, d))
                       * std::expm1(gamma_z(a - b + L, c, d)
                                    + gamma_z(a - u + L, c, d));
            s += gst;
        }
    return s * h * h * h;
}

double midpoint_4d(double L, double c, double d, int n)
{
    double h = 1.0 / n;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = -1 + (i + 0.5) * h;
    double sum = 0;
    for (double s : x)
        for (double t : x)
            for (double u : x)
                for (double v : x)
                    sum += std::exp(gamma_z(s - t, c, d) + gamma_z(u - v, c, d))
                           * std::expm1(gamma_z(L + s - v, c, d)
                                        + gamma_z(L + s - u, c, d)
                                        + gamma_z(L + t - v, c, d)
                                        + gamma_z(L + t - u, c, d));
    return sum * h * h * h * h;
}

// Composite trapezoid of the one-dimensional weighted form.
double trapezoid_1d(double L, double c, double d, int n)
{
    double h = 2.0 / n, s = 0;
    for (int i = 0; i <= n; ++i)
    {
        double u = -1 + i * h;
        double f = (1 - std::abs(u)) * std::expm1(gamma_z(L + u, c, d));
        s += (i == 0 || i == n) ? f / 2 : f;
    }
    return s * h;
}

double rel_change(double a, double b)
{
    if (a == b)
        return 0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

QuadratureConfig doubled(QuadratureConfig q)
{
    return {2 * q.n1, 2 * q.n3, 2 * q.n4};
}
}  // namespace

TEST_SUITE("quadrature")
{
TEST_CASE("gauss-legendre rule on [-1, 0]")
{
    for (int n : {4, 20, 32, 64, 128})
    {
        auto const& g = gauss_legendre(n);
        REQUIRE(g.x.size() == std::size_t(n));
        for (int k = 0; k < 2 * n; ++k)
        {
            double s = 0;
            for (int i = 0; i < n; ++i)
                s += g.w[i] * std::pow(g.x[i], k);
            double exact = (k % 2 ? -1.0 : 1.0) / (k + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("closed forms without memory")
{
    // c = 1: W(0) = 2 int_0^1 w (e^w - 1) dw = 1, W(1) = e - 5/2
    CHECK(weighted_lag_integral(0, 1, 0) == doctest::Approx(1).epsilon(1e-13));
    CHECK(weighted_lag_integral(1, 1, 0)
          == doctest::Approx(std::exp(1.0) - 2.5).epsilon(1e-13));
    CHECK(weighted_lag_integral(2, 1, 0) == 0);
    CHECK(weighted_lag_integral(-1, 1, 0)
          == doctest::Approx(std::exp(1.0) - 2.5).epsilon(1e-13));
    CHECK(double_exp_integral(1, 0) == doctest::Approx(2).epsilon(1e-13));
    CHECK(integrate_3d_ALB0(2, 1, 0) == 0);
    CHECK(integrate_4d_B0BL(2, 1, 0) == 0);
    CHECK(integrate_4d_B0BL(4, 0.5, 0) == 0);
    CHECK(integrate_3d_ALB0(3, 0.5, 0) == 0);
    CHECK(integrate_3d_ALB0(2.5, 0.5, 0) > 0);
}

TEST_CASE("one-dimensional integrals against the trapezoid rule")
{
    for (double c : {0.5, 1.0, 2.0, 1.0741})
        for (double d : {0.0, 0.15, 0.35})
            for (double L : {0.0, 1.0, 2.0, 5.0})
            {
                CAPTURE(c);
                CAPTURE(d);
                CAPTURE(L);
                double ref = trapezoid_1d(L, c, d, 400000);
                CHECK(rel_change(weighted_lag_integral(L, c, d), ref) < 1e-8);
            }
}

TEST_CASE("triple and quadruple integrals against midpoint sums")
{
    double i3 = integrate_3d_ALB0(1, 1, 0);
    CHECK(i3 == doctest::Approx(midpoint_3d(1, 1, 0, 200)).epsilon(1e-4));
    double i3m = integrate_3d_ALB0(1, 1, 0.25);
    CHECK(i3m == doctest::Approx(midpoint_3d(1, 1, 0.25, 200)).epsilon(1e-4));
    double i3c = integrate_3d_ALB0(0, 0.7, 0.15);
    CHECK(i3c == doctest::Approx(midpoint_3d(0, 0.7, 0.15, 200)).epsilon(1e-4));

    double i4 = integrate_4d_B0BL(1, 1, 0);
    CHECK(i4 == doctest::Approx(midpoint_4d(1, 1, 0, 60)).epsilon(1e-3));
    double i4m = integrate_4d_B0BL(1, 1, 0.25);
    CHECK(i4m == doctest::Approx(midpoint_4d(1, 1, 0.25, 60)).epsilon(1e-3));
}

TEST_CASE("raw moments of the integrated intensity")
{
    double lambda = 3, c = 1.3, d = 0.2;
    auto m = integrate_nu_moments(lambda, c, d);
    CHECK(m.m1 == doctest::Approx(lambda * std::exp(0.5)).epsilon(1e-14));
    CHECK(m.m2
          == doctest::Approx(lambda * lambda * std::exp(1.0)
                             * double_exp_integral(c, d))
                 .epsilon(1e-12));

    int n = 100;
    double h = 1.0 / n, s3 = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                double a = (i + 0.5) * h, b = (j + 0.5) * h, e = (k + 0.5) * h;
                s3 += std::exp(gamma_z(a - b, c, d) + gamma_z(a - e, c, d)
                               + gamma_z(b - e, c, d));
            }
    s3 *= h * h * h * std::pow(lambda, 3) * std::exp(1.5);
    CHECK(m.m3 == doctest::Approx(s3).epsilon(1e-4));

    n = 40;
    h = 1.0 / n;
    double s4 = 0;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = (i + 0.5) * h;
    for (double a : x)
        for (double b : x)
            for (double e : x)
                for (double f : x)
                    s4 += std::exp(gamma_z(a - b, c, d) + gamma_z(a - e, c, d)
                                   + gamma_z(a - f, c, d) + gamma_z(b - e, c, d)
                                   + gamma_z(b - f, c, d) + gamma_z(e - f, c, d));
    s4 *= std::pow(h, 4) * std::pow(lambda, 4) * std::exp(2.0);
    CHECK(m.m4 == doctest::Approx(s4).epsilon(2e-3));
}

TEST_CASE("node doubling leaves results unchanged")
{
    QuadratureConfig q;
    for (double c : {0.5, 1.0, 2.0})
        for (double d : {0.0, 0.15, 0.35})
        {
            CAPTURE(c);
            CAPTURE(d);
            double w2 = double_exp_integral(c, d, q);
            CHECK(rel_change(w2, double_exp_integral(c, d, doubled(q))) < 1e-8);
            for (double L : {0.0, 1.0, 2.0, 5.0})
            {
                CAPTURE(L);
                CHECK(rel_change(weighted_lag_integral(L, c, d, q),
                                 weighted_lag_integral(L, c, d, doubled(q)))
                      < 1e-8);
                CHECK(rel_change(integrate_3d_ALB0(L, c, d, q),
                                 integrate_3d_ALB0(L, c, d, doubled(q)))
                      < 1e-5);
                CHECK(rel_change(integrate_4d_B0BL(L, c, d, q),
                                 integrate_4d_B0BL(L, c, d, doubled(q)))
                      < 1e-5);
            }
        }
}

TEST_CASE("large lags follow the covariance")
{
    double c = 1, d = 0.35;
    double L = 1e6;
    CHECK(weighted_lag_integral(L, c, d)
          == doctest::Approx(std::expm1(gamma_z(L, c, d))).epsilon(1e-6));
    double w2 = double_exp_integral(c, d);
    L = 1e4;
    double g = gamma_z(L, c, d);
    CHECK(integrate_3d_ALB0(L, c, d)
          == doctest::Approx(w2 * std::expm1(2 * g)).epsilon(1e-4));
    CHECK(integrate_4d_B0BL(L, c, d)
          == doctest::Approx(w2 * w2 * std::expm1(4 * g)).epsilon(1e-4));
}
}
