#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "lmpred/error.hpp"
#include "lmpred/moments.hpp"
#include "lmpred/rng.hpp"
#include "lmpred/simulate.hpp"

using namespace lmpred;

namespace
{
struct Running
{
    std::vector<double> v;
    void add(double x) { v.push_back(x); }
    double mean() const
    {
        double s = 0;
        for (double x : v)
            s += x;
        return s / v.size();
    }
    double se() const
    {
        double m = mean(), s = 0;
        for (double x : v)
            s += (x - m) * (x - m);
        return std::sqrt(s / (v.size() - 1) / v.size());
    }
};

// (1/(n-L)) sum (x_t - mx)(y_{t+L} - my) with known means
double known_mean_cov(std::vector<double> const& x, double mx,
                      std::vector<double> const& y, double my, std::size_t L)
{
    double s = 0;
    for (std::size_t t = 0; t + L < x.size(); ++t)
        s += (x[t] - mx) * (y[t + L] - my);
    return s / double(x.size() - L);
}

std::vector<double> as_double(std::vector<std::int64_t> const& c)
{
    return {c.begin(), c.end()};
}

std::vector<double> squares(std::vector<double> const& r)
{
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = r[i] * r[i];
    return out;
}
}  // namespace

TEST_SUITE("simulate")
{
TEST_CASE("grid length")
{
    PathConfig cfg;
    cfg.days = 83886;
    CHECK(fgn_length(cfg) == (std::size_t(1) << 22));
    cfg.days = 1;
    CHECK(fgn_length(cfg) == 64);
    cfg.days = 0;
    CHECK_THROWS_AS(validate(cfg), InvalidParameter);
}

TEST_CASE("cumulative intensity")
{
    PathConfig cfg;
    cfg.days = 10;
    cfg.steps_per_day = 4;
    std::vector<double> zeros(64, 0.0);
    auto lt = cumulative_intensity(zeros, 1, cfg);
    REQUIRE(lt.size() == 10);
    for (std::size_t k = 0; k < 10; ++k)
        CHECK(lt[k] == doctest::Approx(k + 1.0).epsilon(1e-15));

    ModelParams p;
    p.d = 0.3;
    cfg.days = 300;
    cfg.steps_per_day = 50;
    cfg.seed = 3;
    auto a = simulate_intensity(p, cfg);
    for (std::size_t k = 1; k < a.size(); ++k)
        CHECK_UNARY(a[k] > a[k - 1]);

    // E[lambda_tilde(k)] / k = lambda e^{1/2}
    Running per_day;
    for (std::uint64_t s = 0; s < 100; ++s)
    {
        cfg.seed = derive_seed(11, {s});
        auto x = simulate_intensity(p, cfg);
        per_day.add(x.back() / double(cfg.days));
    }
    double target = p.lambda * std::sqrt(std::numbers::e);
    CHECK(std::abs(per_day.mean() - target) < 4 * per_day.se());
}

TEST_CASE("counts from a given clock")
{
    PathConfig cfg;
    cfg.days = 5;
    std::vector<double> flat(5, 0.0);
    for (auto n : simulate_counts(flat, 100, cfg))
        CHECK(n == 0);

    std::vector<double> lt{1e4, 2e4, 3e4};
    cfg.days = 3;
    cfg.duration_pool = 100;
    CHECK_THROWS_AS(simulate_counts(lt, 100, cfg), DurationPoolExhausted);
}

TEST_CASE("path invariants and determinism")
{
    ModelParams p;
    p.d = 0.35;
    PathConfig cfg;
    cfg.days = 500;
    cfg.seed = 7;
    auto a = simulate_path(p, cfg);
    auto b = simulate_path(p, cfg);
    CHECK(a.returns == b.returns);
    CHECK(a.counts == b.counts);
    REQUIRE(a.returns.size() == 500);
    REQUIRE(a.log_price.size() == 500);
    double prev = 0;
    for (std::size_t k = 0; k < 500; ++k)
    {
        CHECK_UNARY(a.counts[k] >= 0);
        CHECK(a.log_price[k] - prev == a.returns[k]);
        prev = a.log_price[k];
    }
    cfg.seed = 8;
    CHECK(simulate_path(p, cfg).returns != a.returns);

    // the shock level does not move the count path
    ModelParams q = p;
    q.sigma_e = 0.01;
    cfg.seed = 7;
    CHECK(simulate_path(q, cfg).counts == a.counts);

    // shock-free paths return the counts themselves
    q.mu = 1;
    q.sigma_e = 0;
    auto s = simulate_path(q, cfg);
    for (std::size_t k = 0; k < 500; ++k)
        CHECK(s.returns[k] == double(s.counts[k]));

    auto [x, y] = simulate_path_pair(p, cfg, PathConfig{500, 50, 9});
    CHECK(x.returns == a.returns);
    CHECK(y.returns != a.returns);
}

TEST_CASE("two shock processes")
{
    TwoShockParams tp;
    tp.first.d = tp.second.d = 0.2;
    tp.second.mu = -0.5e-6;
    PathConfig cfg;
    cfg.days = 400;
    cfg.seed = 5;
    auto a = simulate_two_shock_path(tp, cfg);
    CHECK(a.returns == simulate_two_shock_path(tp, cfg).returns);

    TwoShockParams bad = tp;
    bad.second.mu = 2e-6;
    CHECK_THROWS_AS(simulate_two_shock_path(bad, cfg), InvalidDriftPair);
    bad.second.mu = -2e-6;
    CHECK_THROWS_AS(simulate_two_shock_path(bad, cfg), InvalidDriftPair);

    Running mean_r;
    cfg.days = 2000;
    for (std::uint64_t s = 0; s < 40; ++s)
    {
        cfg.seed = derive_seed(21, {s});
        auto path = simulate_two_shock_path(tp, cfg);
        double m = 0;
        for (double r : path.returns)
            m += r;
        mean_r.add(m / path.returns.size());
    }
    double target = (tp.first.mu * tp.first.lambda + tp.second.mu * tp.second.lambda)
                    * std::sqrt(std::numbers::e);
    CHECK(std::abs(mean_r.mean() - target) < 4 * mean_r.se());
}

TEST_CASE("simulated moments agree with closed forms")
{
    for (double d : {0.0, 0.35})
    {
        CAPTURE(d);
        ModelParams p;
        p.d = d;
        MomentModel model(p);
        double mn = model.mean_count(), mr = model.mean_return();
        double mr2 = model.var_return() + mr * mr;

        Running count_mean, count_var, count_cov2, ret_var, ret_cov1,
            ret_sq_cov1, sq_cov1;
        PathConfig c1, c2;
        c1.days = c2.days = 3000;
        for (std::uint64_t s = 0; s < 40; ++s)
        {
            c1.seed = derive_seed(31, {s, 0});
            c2.seed = derive_seed(31, {s, 1});
            auto [a, b] = simulate_path_pair(p, c1, c2);
            for (auto const* path : {&a, &b})
            {
                auto n = as_double(path->counts);
                auto const& r = path->returns;
                auto r2 = squares(r);
                double sum = 0;
                for (double x : n)
                    sum += x;
                count_mean.add(sum / n.size());
                count_var.add(known_mean_cov(n, mn, n, mn, 0));
                count_cov2.add(known_mean_cov(n, mn, n, mn, 2));
                ret_var.add(known_mean_cov(r, mr, r, mr, 0));
                ret_cov1.add(known_mean_cov(r, mr, r, mr, 1));
                ret_sq_cov1.add(known_mean_cov(r2, mr2, r, mr, 1));
                sq_cov1.add(known_mean_cov(r2, mr2, r2, mr2, 1));
            }
        }
        auto within = [](Running const& est, double target) {
            CAPTURE(est.mean());
            CAPTURE(target);
            CAPTURE(est.se());
            CHECK(std::abs(est.mean() - target) < 4 * est.se());
        };
        within(count_mean, mn);
        within(count_var, model.var_count());
        within(ret_var, model.var_return());
        within(ret_cov1, model.cov_return(1));
        within(ret_sq_cov1, model.cov_return_sqreturn(1));
        within(sq_cov1, model.cov_sqreturn(1));
        if (d == 0)
            within(count_cov2, 0.0);
        else
            within(count_cov2, model.cov_count(2));
    }
}
}
