#include "lmpred/inference.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "lmpred/error.hpp"
#include "lmpred/fft.hpp"
#include "lmpred/parallel.hpp"
#include "lmpred/rng.hpp"
#include "lmpred/simulate.hpp"
#include "lmpred/stats.hpp"

namespace lmpred
{
int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (char const* env = std::getenv("LMPRED_THREADS"))
    {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{
std::string kappa_note(double kappa)
{
    if (kappa <= 0 || kappa >= 1.0 / 3.0)
        return "kappa outside (0, 1/3): normal limit not guaranteed";
    return "";
}

double scale_for(AggregationScheme const& s, long months)
{
    return s.kind == AggregationScheme::Kind::power_law
               ? std::sqrt(std::pow(static_cast<double>(months), 1 - s.param))
               : 1.0;
}

std::vector<std::vector<double>>
statistics_for(std::vector<double> const& returns,
               std::vector<AggregationScheme> const& schemes, Statistic stat,
               int h)
{
    std::vector<std::vector<double>> out;
    for (auto const& s : schemes)
        out.push_back({scheme_statistic(returns, s, stat, h)});
    return out;
}
}  // namespace

double asymptotic_statistic(std::vector<double> const& returns, int m,
                            double kappa, int h)
{
    return scheme_statistic(returns, AggregationScheme::power_law(kappa, m),
                            Statistic::rho_tilde, h);
}

double scheme_statistic(std::vector<double> const& returns,
                        AggregationScheme const& scheme, Statistic stat, int h)
{
    long T = months_in(returns.size(), scheme.days_per_month);
    int H = resolve_horizon(scheme, T);
    MonthlyPanel panel(returns, scheme.days_per_month, H,
                       stat == Statistic::rho_tilde ? h : 0);
    double rho = stat == Statistic::rho_tilde ? rho_tilde(panel)
                                              : rho_hat(panel);
    return scale_for(scheme, T) * rho;
}

TestReport test_asymptotic(std::vector<double> const& returns, int m,
                           double kappa, double alpha,
                           ModelParams const& null_params)
{
    require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
    ModelParams p0 = null_params;
    p0.d = 0;
    MomentTable t = moment_table(p0);
    TestReport r;
    r.method = "asymptotic";
    r.alpha = alpha;
    r.param = kappa;
    r.null_params = p0;
    r.skip = t.h;
    r.months = months_in(returns.size(), m);
    r.horizon = resolve_horizon(AggregationScheme::power_law(kappa, m), r.months);
    r.statistic = asymptotic_statistic(returns, m, kappa, t.h);
    double sd = std::sqrt(t.S2 / (t.A1 * t.A2));
    r.critical_value = normal_quantile(1 - alpha) * sd;
    r.reject = r.statistic > r.critical_value;
    r.p_value = 1 - normal_cdf(r.statistic / sd);
    r.note = kappa_note(kappa);
    return r;
}

TestReport test_asymptotic(std::vector<std::int64_t> const& counts,
                           std::vector<double> const& returns, int m,
                           double kappa, double alpha,
                           EstimatorOptions const& opt)
{
    EstimatorOptions o = opt;
    o.fix_d_zero = true;
    EstimateReport est = estimate_all(counts, returns, o);
    return test_asymptotic(returns, m, kappa, alpha, est.params);
}

std::vector<std::vector<double>>
simulate_null_statistics(ModelParams const& params, std::size_t days,
                         std::vector<AggregationScheme> const& schemes,
                         Statistic stat, SimulationOptions const& opt)
{
    require(opt.replications >= 1, "need at least one replication");
    int h = compute_h(params.c);
    std::size_t B = opt.replications;
    std::vector<std::vector<double>> out(schemes.size(),
                                         std::vector<double>(B));
    auto cfg_for = [&](std::size_t b) {
        PathConfig cfg;
        cfg.days = days;
        cfg.steps_per_day = opt.steps_per_day;
        cfg.duration_pool = opt.duration_pool;
        cfg.seed = derive_seed(opt.seed, {b});
        return cfg;
    };
    auto record = [&](std::size_t b, DailySeries const& s) {
        auto v = statistics_for(s.returns, schemes, stat, h);
        for (std::size_t k = 0; k < schemes.size(); ++k)
            out[k][b] = v[k][0];
    };
    // Replications 2i and 2i+1 share one circulant FFT.
    std::size_t pairs = (B + 1) / 2;
    parallel_for(pairs, opt.threads, [&](std::size_t i) {
        std::size_t b = 2 * i;
        if (b + 1 < B)
        {
            auto [s0, s1] = simulate_path_pair(params, cfg_for(b), cfg_for(b + 1));
            record(b, s0);
            record(b + 1, s1);
        }
        else
        {
            record(b, simulate_path(params, cfg_for(b)));
        }
    });
    return out;
}

std::vector<TestReport>
test_bootstrap(std::vector<std::int64_t> const& counts,
               std::vector<double> const& returns,
               std::vector<AggregationScheme> const& schemes, double alpha,
               SimulationOptions const& opt, Statistic stat,
               EstimatorOptions const& est)
{
    require(alpha > 0 && alpha < 1, "alpha must lie in (0, 1)");
    require(!schemes.empty(), "no aggregation scheme given");
    EstimatorOptions o = est;
    o.fix_d_zero = true;
    ModelParams p0 = estimate_all(counts, returns, o).params;
    int h = compute_h(p0.c);
    long T = months_in(returns.size(), schemes.front().days_per_month);

    auto observed = statistics_for(returns, schemes, stat, h);
    auto null = simulate_null_statistics(p0, returns.size(), schemes, stat, opt);

    std::vector<TestReport> reports;
    for (std::size_t k = 0; k < schemes.size(); ++k)
    {
        TestReport r;
        r.method = schemes[k].kind == AggregationScheme::Kind::power_law
                       ? "bootstrap"
                       : "linear_simulated";
        r.alpha = alpha;
        r.param = schemes[k].param;
        r.months = T;
        r.horizon = resolve_horizon(schemes[k], T);
        r.skip = stat == Statistic::rho_tilde ? h : 0;
        r.replications = opt.replications;
        r.null_params = p0;
        r.statistic = observed[k][0];
        r.critical_value = quantile(null[k], 1 - alpha);
        r.reject = r.statistic > r.critical_value;
        std::size_t exceed = 0;
        for (double v : null[k])
            exceed += v >= r.statistic;
        r.p_value = (1.0 + exceed) / (1.0 + null[k].size());
        reports.push_back(r);
    }
    return reports;
}

TestReport test_bootstrap(std::vector<std::int64_t> const& counts,
                          std::vector<double> const& returns, int m,
                          double kappa, double alpha,
                          SimulationOptions const& opt, Statistic stat)
{
    return test_bootstrap(counts, returns,
                          {AggregationScheme::power_law(kappa, m)}, alpha, opt,
                          stat)
        .front();
}

TestReport test_linear_simulated(std::vector<std::int64_t> const& counts,
                                 std::vector<double> const& returns, int m,
                                 double theta, double alpha,
                                 SimulationOptions const& opt)
{
    return test_bootstrap(counts, returns,
                          {AggregationScheme::linear_growth(theta, m)}, alpha,
                          opt, Statistic::rho_hat)
        .front();
}

GphReport estimate_gph(std::vector<double> const& x, double exponent)
{
    require(exponent > 0 && exponent < 1, "GPH exponent must lie in (0, 1)");
    std::size_t n = x.size();
    if (n < 64)
        throw InsufficientData("GPH needs at least 64 observations");
    int band = static_cast<int>(std::floor(std::pow(static_cast<double>(n), exponent)));
    band = std::min<int>(band, static_cast<int>((n - 1) / 2));
    if (band < 4)
        throw InsufficientData("GPH bandwidth below 4 frequencies");
    double m = mean(x);
    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i)
        centered[i] = x[i] - m;
    auto f = fft_real(centered);
    std::vector<double> reg, logi;
    double norm = 2 * std::numbers::pi * static_cast<double>(n);
    for (int j = 1; j <= band; ++j)
    {
        double w = 2 * std::numbers::pi * j / static_cast<double>(n);
        double I = std::norm(f[j]) / norm;
        if (!(I > 0))
            throw DegenerateVariance("zero periodogram ordinate");
        reg.push_back(-2 * std::log(w));
        logi.push_back(std::log(I));
    }
    LinearFit fit = ols(reg, logi);
    return {fit.slope, fit.slope_se, band};
}

NormalityReport normality_diagnostic(std::vector<double> const& x)
{
    std::size_t n = x.size();
    if (n < 8)
        throw InsufficientData("normality diagnostic needs 8 observations");
    double m = mean(x);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x)
    {
        double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    double dn = static_cast<double>(n);
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (!(m2 > 0))
        throw DegenerateVariance("constant sample");
    NormalityReport r;
    r.skewness = m3 / std::pow(m2, 1.5);
    r.excess_kurtosis = m4 / (m2 * m2) - 3;
    double se_s = std::sqrt(6 * dn * (dn - 1) / ((dn - 2) * (dn + 1) * (dn + 3)));
    double se_k = 2 * se_s * std::sqrt((dn * dn - 1) / ((dn - 3) * (dn + 5)));
    r.z_skewness = r.skewness / se_s;
    r.z_kurtosis = r.excess_kurtosis / se_k;
    r.p_skewness = 2 * (1 - normal_cdf(std::fabs(r.z_skewness)));
    r.p_kurtosis = 2 * (1 - normal_cdf(std::fabs(r.z_kurtosis)));
    r.consistent_at_1pct = r.p_skewness > 0.01 && r.p_kurtosis > 0.01;
    return r;
}

McResult run_mc_experiment(McExperiment const& ex)
{
    validate(ex.params);
    require(ex.replications >= 1, "need at least one replication");
    require(!ex.months.empty() && !ex.schemes.empty(),
            "experiment needs months and schemes");
    int m = ex.days_per_month;
    int h = compute_h(ex.params.c);
    ModelParams null_params = ex.params;
    null_params.d = 0;
    std::size_t S = ex.schemes.size();
    std::size_t R = ex.replications;

    McResult result;
    for (std::size_t ti = 0; ti < ex.months.size(); ++ti)
    {
        long T = ex.months[ti];
        std::size_t days = static_cast<std::size_t>(T) * m;
        for (auto const& s : ex.schemes)
            resolve_horizon(s, T);

        std::vector<double> crit(S, std::numeric_limits<double>::quiet_NaN());
        if (ex.test == McTest::asymptotic)
        {
            MomentTable t = moment_table(null_params);
            double c = normal_quantile(1 - ex.alpha) * std::sqrt(t.S2 / (t.A1 * t.A2));
            crit.assign(S, c);
        }
        else if (ex.test == McTest::simulated)
        {
            SimulationOptions so = ex.sim;
            so.replications = ex.null_replications;
            so.seed = derive_seed(ex.seed, {0x6e756c6c, ti});
            auto null = simulate_null_statistics(null_params, days, ex.schemes,
                                                 Statistic::rho_hat, so);
            for (std::size_t k = 0; k < S; ++k)
                crit[k] = quantile(null[k], 1 - ex.alpha);
        }

        std::vector<std::vector<double>> rho(S, std::vector<double>(R));
        std::vector<std::vector<char>> rej(S, std::vector<char>(R, 0));
        auto cfg_for = [&](std::size_t r) {
            PathConfig cfg;
            cfg.days = days;
            cfg.steps_per_day = ex.sim.steps_per_day;
            cfg.duration_pool = ex.sim.duration_pool;
            cfg.seed = derive_seed(ex.seed, {ti, r});
            return cfg;
        };
        auto process = [&](std::size_t r, DailySeries const& s) {
            std::vector<TestReport> boot;
            if (ex.test == McTest::bootstrap)
            {
                SimulationOptions so = ex.sim;
                so.threads = 1;
                so.replications = ex.null_replications;
                so.seed = derive_seed(ex.seed, {ti, r, 0xB007});
                boot = test_bootstrap(s.counts, s.returns, ex.schemes, ex.alpha, so);
            }
            for (std::size_t k = 0; k < S; ++k)
            {
                auto const& sc = ex.schemes[k];
                int H = resolve_horizon(sc, T);
                MonthlyPanel panel(s.returns, m, H);
                rho[k][r] = rho_hat(panel);
                switch (ex.test)
                {
                    case McTest::none:
                        break;
                    case McTest::asymptotic:
                        rej[k][r] = scheme_statistic(s.returns, sc,
                                                     Statistic::rho_tilde, h)
                                    > crit[k];
                        break;
                    case McTest::simulated:
                        rej[k][r] = scheme_statistic(s.returns, sc,
                                                     Statistic::rho_hat, h)
                                    > crit[k];
                        break;
                    case McTest::bootstrap:
                        rej[k][r] = boot[k].reject;
                        break;
                }
            }
        };
        // Nested bootstraps parallelize over outer replications.
        std::size_t pairs = (R + 1) / 2;
        parallel_for(pairs, ex.sim.threads, [&](std::size_t i) {
            std::size_t r = 2 * i;
            if (r + 1 < R)
            {
                auto [a, b] = simulate_path_pair(ex.params, cfg_for(r), cfg_for(r + 1));
                process(r, a);
                process(r + 1, b);
            }
            else
            {
                process(r, simulate_path(ex.params, cfg_for(r)));
            }
        });

        for (std::size_t k = 0; k < S; ++k)
        {
            McCell cell;
            cell.framework = ex.schemes[k].name();
            cell.param = ex.schemes[k].param;
            cell.months = T;
            cell.replications = static_cast<int>(R);
            cell.mean_rho = mean(rho[k]);
            cell.var_rho = R > 1 ? variance_unbiased(rho[k]) : 0;
            if (ex.test == McTest::none)
            {
                cell.rejection_rate = std::numeric_limits<double>::quiet_NaN();
            }
            else
            {
                std::size_t count = 0;
                for (char c : rej[k])
                    count += c;
                cell.rejection_rate = static_cast<double>(count) / R;
            }
            cell.rho = std::move(rho[k]);
            result.cells.push_back(std::move(cell));
        }
    }

    if (ex.months.size() >= 2)
    {
        for (std::size_t k = 0; k < S; ++k)
        {
            std::vector<double> x, y;
            for (std::size_t i = k; i < result.cells.size(); i += S)
                if (auto const& c = result.cells[i]; c.var_rho > 0)
                {
                    x.push_back(std::log(static_cast<double>(c.months)));
                    y.push_back(std::log(c.var_rho));
                }
            if (x.size() < 2)
                continue;
            LinearFit f = ols(x, y);
            result.slopes.push_back({ex.schemes[k].name(), ex.schemes[k].param,
                                     f.intercept, f.slope, f.slope_se});
        }
    }
    return result;
}

void write_mc_csv(std::ostream& os, McResult const& r)
{
    auto num = [](double v) {
        char buf[64];
        if (std::isnan(v))
            return std::string();
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    os << "framework,param,T_tilde,reps,mean_rho,var_rho,rejection_rate,"
          "slope_cell_marker\n";
    for (auto const& c : r.cells)
        os << c.framework << ',' << num(c.param) << ',' << c.months << ','
           << c.replications << ',' << num(c.mean_rho) << ','
           << num(c.var_rho) << ',' << num(c.rejection_rate) << ",cell\n";
    // Slope rows: mean_rho holds the intercept, var_rho the slope.
    for (auto const& s : r.slopes)
        os << s.framework << ',' << num(s.param) << ",,,"
           << num(s.intercept) << ',' << num(s.slope) << ",,slope\n";
}

}  // namespace lmpred
