#include "lmpred/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lmpred/error.hpp"
#include "lmpred/fgn.hpp"

namespace lmpred
{
namespace
{
GaussRule build_rule(int n)
{
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i)
    {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1;
        for (int it = 0; it < 100; ++it)
        {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k)
            {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1)
                p0 = 1;
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16)
                break;
        }
        // recompute derivative at converged node
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k)
        {
            double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        double w = 2 / ((1 - z * z) * dp * dp);
        r.x[i] = 0.5 * (z - 1);
        r.w[i] = 0.5 * w;
    }
    return r;
}

constexpr int table_size = 257;

std::vector<GaussRule> const& rule_table()
{
    static std::vector<GaussRule> table = [] {
        std::vector<GaussRule> t(table_size);
        for (int n = 1; n < table_size; ++n)
            t[n] = build_rule(n);
        return t;
    }();
    return table;
}

GaussRule const& rule_for(int n)
{
    if (n < table_size)
        return rule_table()[n];
    return gauss_legendre(n);
}

void sort_cuts(std::vector<double>& cuts, double a, double b)
{
    double tol = 1e-12 * std::max(1.0, b - a);
    std::erase_if(cuts, [&](double v) {
        return !(v > a + tol && v < b - tol) || !std::isfinite(v);
    });
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double u, double v) { return v - u < tol; }),
               cuts.end());
}

// Gauss-Legendre over [a,b] split at the given interior points. Each piece
// gets a share of n nodes proportional to its length, but at least nmin.
// Pieces touching a point in `singular` always get the full n nodes.
template<class F>
double integrate_split(F const& f, double a, double b,
                       std::vector<double>& cuts, int n, int nmin,
                       std::initializer_list<double> singular = {})
{
    if (!(b > a))
        return 0;
    sort_cuts(cuts, a, b);
    double total = 0;
    double lo = a;
    double span = b - a;
    for (std::size_t i = 0; i <= cuts.size(); ++i)
    {
        double hi = i < cuts.size() ? cuts[i] : b;
        double len = hi - lo;
        int m = std::max(nmin, static_cast<int>(std::ceil(n * len / span)));
        for (double z : singular)
            if (std::fabs(z - lo) < 1e-12 || std::fabs(z - hi) < 1e-12)
                m = n;
        m = std::min(m, n);
        auto const& rule = rule_for(m);
        double s = 0;
        for (int k = 0; k < m; ++k)
            s += rule.w[k] * f(hi + rule.x[k] * len);
        total += s * len;
        lo = hi;
    }
    return total;
}

int min_nodes(int n)
{
    return std::max(4, n / 4);
}

double checked(double v, char const* what)
{
    if (!std::isfinite(v))
        throw QuadratureFailure(std::string("non-finite result in ") + what);
    return v;
}

void check_args(double L, double c, double d)
{
    validate_covariance(c, d);
    require(std::isfinite(L), "lag must be finite");
}

std::vector<double> unique_values(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return b - a < 1e-13; }),
            v.end());
    return v;
}
}  // namespace

GaussRule const& gauss_legendre(int n)
{
    require(n >= 1, "quadrature node count must be positive");
    if (n < table_size)
        return rule_table()[n];
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<GaussRule>> extra;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = extra[n];
    if (!slot)
        slot = std::make_unique<GaussRule>(build_rule(n));
    return *slot;
}

double weighted_lag_integral(double L, double c, double d,
                             QuadratureConfig const& q)
{
    check_args(L, c, d);
    std::vector<double> cuts{0, -L - 1 / c, -L, -L + 1 / c};
    auto f = [&](double u) {
        return (1 - std::fabs(u)) * std::expm1(gamma_z(L + u, c, d));
    };
    return checked(integrate_split(f, -1, 1, cuts, q.n1, q.n1),
                   "weighted_lag_integral");
}

double double_exp_integral(double c, double d, QuadratureConfig const& q)
{
    return weighted_lag_integral(0, c, d, q) + 1;
}

double integrate_3d_ALB0(double L, double c, double d,
                         QuadratureConfig const& q)
{
    check_args(L, c, d);
    int n = q.n3;
    int nmin = min_nodes(n);
    double ic = 1 / c;
    // Algebraic singularities of gamma_z only exist for d > 0.
    auto sing = [&](double v) {
        return d > 0 ? v : std::numeric_limits<double>::quiet_NaN();
    };

    std::vector<double> pcuts{0, ic, -ic, 2 * ic, -2 * ic};
    for (int s : {-1, 1})
        for (int j = -1; j <= 1; ++j)
            for (int k = -2; k <= 2; ++k)
                pcuts.push_back(s * L + j + k * ic);

    std::vector<double> ycuts;
    auto outer = [&](double p) {
        double ylo = -std::min(0.0, p) - 1;
        double yhi = 1 - std::max(0.0, p);
        ycuts.assign({0, -p});
        for (int k = -1; k <= 1; ++k)
        {
            ycuts.push_back(-L + k * ic);
            ycuts.push_back(-L - p + k * ic);
        }
        auto inner = [&](double y) {
            double hi = std::max({0.0, p, -y});
            double lo = std::min({0.0, p, -y});
            double ell = 1 - (hi - lo);
            if (ell <= 0)
                return 0.0;
            return ell
                   * std::expm1(gamma_z(L + y, c, d)
                                + gamma_z(L + y + p, c, d));
        };
        return std::exp(gamma_z(p, c, d))
               * integrate_split(inner, ylo, yhi, ycuts, n, n);
    };
    return checked(integrate_split(outer, -1, 1, pcuts, n, nmin,
                                   {sing(0), sing(ic), sing(-ic)}),
                   "integrate_3d_ALB0");
}

double integrate_4d_B0BL(double L, double c, double d,
                         QuadratureConfig const& q)
{
    check_args(L, c, d);
    int n = q.n4;
    int nmin = min_nodes(n);
    double ic = 1 / c;
    // Algebraic singularities of gamma_z only exist for d > 0.
    auto sing = [&](double v) {
        return d > 0 ? v : std::numeric_limits<double>::quiet_NaN();
    };

    // Constant parts of the kink locations in q (up to a multiple of p).
    std::vector<double> qconst;
    for (int j = -2; j <= 2; ++j)
        for (int k = -2; k <= 2; ++k)
            qconst.push_back(j + k * ic);
    for (int f : {-1, 1})
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k)
                qconst.push_back(j + f * L + k * ic);
    qconst = unique_values(qconst);

    std::vector<double> pcuts{0, ic, -ic};
    for (double a : qconst)
        for (double b : qconst)
        {
            if (std::fabs(a - b) < 2 + 1e-12)
            {
                pcuts.push_back(a - b);
                pcuts.push_back(0.5 * (a - b));
            }
        }
    pcuts = unique_values(pcuts);

    std::vector<double> qcuts;
    std::vector<double> xcuts;
    auto outer = [&](double p) {
        double gp = gamma_z(p, c, d);
        qcuts.clear();
        for (double a : qconst)
            for (int e = -1; e <= 1; ++e)
            {
                double v = e * p + a;
                if (v > -1 && v < 1)
                    qcuts.push_back(v);
            }
        auto middle = [&](double qv) {
            double xlo = std::max({-1.0, p - 1, qv - 1, p + qv - 1});
            double xhi = std::min({1.0, p + 1, qv + 1, p + qv + 1});
            xcuts.assign({0, p, qv, p + qv});
            for (int k = -1; k <= 1; ++k)
                for (double o : {0.0, p, qv, p + qv})
                    xcuts.push_back(-L + o + k * ic);
            auto inner = [&](double x) {
                double hi = std::max({0.0, x, x - p, qv});
                double lo = std::min({0.0, x, x - p, qv});
                double ell = 1 - (hi - lo);
                if (ell <= 0)
                    return 0.0;
                double s = gamma_z(L + x, c, d) + gamma_z(L + x - qv, c, d)
                           + gamma_z(L + x - p, c, d)
                           + gamma_z(L + x - p - qv, c, d);
                return ell * std::expm1(s);
            };
            return std::exp(gamma_z(qv, c, d))
                   * integrate_split(inner, xlo, xhi, xcuts, n, n);
        };
        return std::exp(gp)
               * integrate_split(middle, -1, 1, qcuts, n, nmin,
                                 {sing(0), sing(ic), sing(-ic), sing(p),
                                  sing(p + ic), sing(p - ic)});
    };
    return checked(integrate_split(outer, -1, 1, pcuts, n, nmin,
                                   {sing(0), sing(ic), sing(-ic)}),
                   "integrate_4d_B0BL");
}

NuMoments integrate_nu_moments(double lambda, double c, double d,
                               QuadratureConfig const& q)
{
    require(std::isfinite(lambda) && lambda > 0, "lambda must be positive");
    double e = std::numbers::e;
    double w2 = double_exp_integral(c, d, q);
    double j3 = integrate_3d_ALB0(0, c, d, q) + w2;
    double j4 = integrate_4d_B0BL(0, c, d, q) + w2 * w2;
    NuMoments m;
    m.m1 = lambda * std::sqrt(e);
    m.m2 = lambda * lambda * e * w2;
    m.m3 = std::pow(lambda, 3) * std::pow(e, 1.5) * j3;
    m.m4 = std::pow(lambda, 4) * e * e * j4;
    return m;
}

}  // namespace lmpred
