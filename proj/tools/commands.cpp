#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lmpred/config.hpp"
#include "lmpred/error.hpp"
#include "lmpred/estimate.hpp"
#include "lmpred/inference.hpp"
#include "lmpred/moments.hpp"
#include "lmpred/parallel.hpp"
#include "lmpred/rng.hpp"
#include "lmpred/series_io.hpp"
#include "lmpred/simulate.hpp"

namespace lmpred::cli
{
namespace
{
constexpr char const* version = "1.0.0";

struct Flags
{
    std::string config;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string in;
    std::optional<int> threads;
    std::optional<double> alpha;
    std::optional<double> kappa;
    std::optional<double> theta;
    std::optional<int> reps;
    std::optional<int> bootstrap_reps;
    bool linear = false;
};

void add_common(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "key = value configuration file");
    sub->add_option("--set", f.sets, "override one setting, key=value");
    sub->add_option("--seed", f.seed, "base random seed");
    sub->add_option("-o,--out", f.out, "output file (default stdout)");
    sub->add_option("--in", f.in, "input series CSV");
    sub->add_option("--threads", f.threads, "worker threads");
    sub->add_option("--alpha", f.alpha, "test level");
    sub->add_option("--kappa", f.kappa, "power-law horizon exponent");
    sub->add_option("--theta", f.theta, "linear horizon fraction");
    sub->add_option("--reps", f.reps, "Monte Carlo replications");
    sub->add_option("--bootstrap-reps", f.bootstrap_reps,
                    "null replications for simulated critical values");
}

RunConfig resolve(Flags const& f)
{
    RunConfig cfg;
    if (!f.config.empty())
        apply_config_file(cfg, f.config);
    for (auto const& s : f.sets)
    {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got " + s);
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (f.seed)
        cfg.seed = *f.seed;
    if (!f.in.empty())
        cfg.input = f.in;
    if (f.threads)
        cfg.threads = *f.threads;
    if (f.alpha)
        cfg.alpha = *f.alpha;
    if (f.kappa)
        cfg.kappa = *f.kappa;
    if (f.theta)
        cfg.theta = *f.theta;
    if (f.reps)
        cfg.reps = *f.reps;
    if (f.bootstrap_reps)
        cfg.bootstrap_reps = *f.bootstrap_reps;
    return cfg;
}

class Output
{
  public:
    Output(std::string const& path, std::string const& command,
           RunConfig const& cfg)
    {
        if (!path.empty())
        {
            file_.open(path);
            if (!file_)
                throw ConfigError("cannot write " + path);
        }
        os() << "# lmpred " << version << "\n";
        os() << "# command: " << command << "\n";
        os() << "# seed: " << cfg.seed << "\n";
        for (auto const& [k, v] : config_entries(cfg))
            os() << "# config: " << k << " = " << v << "\n";
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void comment(std::string const& key, std::string const& value)
    {
        os() << "# " << key << ": " << value << "\n";
    }

  private:
    std::ofstream file_;
};

std::string num(double v)
{
    return format_double(v);
}

PathConfig path_config(RunConfig const& cfg)
{
    PathConfig p;
    p.days = cfg.days;
    p.steps_per_day = cfg.steps_per_day;
    p.seed = cfg.seed;
    p.duration_pool = cfg.duration_pool;
    return p;
}

SimulationOptions sim_options(RunConfig const& cfg, int reps)
{
    SimulationOptions o;
    o.replications = reps;
    o.seed = derive_seed(cfg.seed, {0x6e756c6c});
    o.steps_per_day = cfg.steps_per_day;
    o.duration_pool = cfg.duration_pool;
    o.threads = resolve_threads(cfg.threads);
    return o;
}

EstimatorOptions estimator_options(RunConfig const& cfg)
{
    EstimatorOptions o;
    o.lag1 = cfg.lag1;
    o.lag2 = cfg.lag2;
    o.quad = cfg.quad;
    return o;
}

// Series from --in, or simulated from the configuration.
SeriesData load_series(RunConfig const& cfg, bool need_counts)
{
    SeriesData s;
    if (!cfg.input.empty())
    {
        s = read_series_csv(cfg.input);
    }
    else
    {
        DailySeries d = simulate_path(cfg.params, path_config(cfg));
        s.counts = d.counts;
        s.returns = d.returns;
        s.has_counts = true;
    }
    if (need_counts && !s.has_counts)
        throw InsufficientData("input has no 'count' column");
    return s;
}

void write_report(Output& out, TestReport const& r)
{
    auto& os = out.os();
    os << "key,value\n";
    os << "method," << r.method << "\n";
    os << "statistic," << num(r.statistic) << "\n";
    os << "critical_value," << num(r.critical_value) << "\n";
    os << "reject," << (r.reject ? 1 : 0) << "\n";
    os << "p_value," << num(r.p_value) << "\n";
    os << "alpha," << num(r.alpha) << "\n";
    os << "param," << num(r.param) << "\n";
    os << "months," << r.months << "\n";
    os << "horizon," << r.horizon << "\n";
    os << "skip," << r.skip << "\n";
    os << "replications," << r.replications << "\n";
    os << "null_mu," << num(r.null_params.mu) << "\n";
    os << "null_lambda," << num(r.null_params.lambda) << "\n";
    os << "null_sigma_e," << num(r.null_params.sigma_e) << "\n";
    os << "null_c," << num(r.null_params.c) << "\n";
    os << "note," << r.note << "\n";
}

int cmd_simulate(RunConfig const& cfg, Flags const& f)
{
    DailySeries s = simulate_path(cfg.params, path_config(cfg));
    Output out(f.out, "simulate", cfg);
    write_series_csv(out.os(), s);
    return 0;
}

int cmd_aggregate(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, false);
    AggregationScheme scheme = f.linear ? linear_scheme(cfg, cfg.theta)
                                        : power_scheme(cfg, cfg.kappa);
    long T = months_in(s.returns.size(), cfg.days_per_month);
    int H = resolve_horizon(scheme, T);
    int h = compute_h(cfg.params.c);
    MonthlyPanel panel(s.returns, cfg.days_per_month, H, std::min(h, H * cfg.days_per_month - 1));
    Output out(f.out, "aggregate", cfg);
    out.comment("scheme", scheme.name());
    out.comment("months", std::to_string(T));
    out.comment("horizon", std::to_string(H));
    out.comment("skip", std::to_string(panel.skip()));
    out.comment("rho_hat", num(rho_hat(panel)));
    out.comment("rho_tilde", num(rho_tilde(panel)));
    auto& os = out.os();
    os << "month,forward,forward_skip,backward\n";
    for (long t = H; t <= T - H; ++t)
        os << t << ',' << num(panel.forward(t)) << ','
           << num(panel.forward_skip(t)) << ',' << num(panel.backward(t))
           << "\n";
    return 0;
}

int cmd_moments(RunConfig const& cfg, Flags const& f)
{
    MomentModel model(cfg.params, cfg.quad);
    MomentTable t = moment_table(model);
    int lags = cfg.lags > 0 ? cfg.lags : t.h;
    NuMoments nu = model.nu_moments();
    Output out(f.out, "moments", cfg);
    auto& os = out.os();
    os << "quantity,lag,value\n";
    auto row = [&](char const* q, long L, double v) {
        os << q << ',' << L << ',' << num(v) << "\n";
    };
    row("h", 0, t.h);
    row("mean_count", 0, model.mean_count());
    row("var_count", 0, model.var_count());
    row("mean_return", 0, t.mean_return);
    row("var_return", 0, t.var_return);
    row("var_sqreturn", 0, t.var_sqreturn);
    row("nu_moment_1", 0, nu.m1);
    row("nu_moment_2", 0, nu.m2);
    row("nu_moment_3", 0, nu.m3);
    row("nu_moment_4", 0, nu.m4);
    for (long L = 1; L <= lags; ++L)
    {
        row("cov_count", L, model.cov_count(L));
        row("cov_return", L, model.cov_return(L));
        row("cov_sqreturn", L, model.cov_sqreturn(L));
        row("cov_return_sqreturn", L, model.cov_return_sqreturn(L));
    }
    row("A1", 0, t.A1);
    row("A2", 0, t.A2);
    row("S2", 0, t.S2);
    row("rho_limit", 0, rho_limit(cfg.params.d));
    if (cfg.params.d > 0)
    {
        row("asymptote_return", 0, model.asymptote_return());
        row("asymptote_sqreturn", 0, model.asymptote_sqreturn());
        row("asymptote_return_sqreturn", 0, model.asymptote_return_sqreturn());
    }
    return 0;
}

int cmd_estimate(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, true);
    EstimateReport r = estimate_all(s.counts, s.returns, estimator_options(cfg));
    Output out(f.out, "estimate", cfg);
    auto& os = out.os();
    os << "mu=" << num(r.params.mu) << "\n";
    os << "lambda=" << num(r.params.lambda) << "\n";
    os << "sigma_e=" << num(r.params.sigma_e) << "\n";
    os << "c=" << num(r.params.c) << "\n";
    os << "d=" << num(r.params.d) << "\n";
    os << "d_at_bound=" << (r.d_at_bound ? 1 : 0) << "\n";
    os << "sigma_e_negative=" << (r.sigma_e_negative ? 1 : 0) << "\n";
    os << "residual_lag1=" << num(r.residual_1) << "\n";
    os << "residual_lag2=" << num(r.residual_2) << "\n";
    return 0;
}

int cmd_gph(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, false);
    GphReport g = estimate_gph(s.returns, cfg.gph_exponent);
    Output out(f.out, "gph", cfg);
    auto& os = out.os();
    os << "key,value\n";
    os << "d," << num(g.d) << "\n";
    os << "se," << num(g.se) << "\n";
    os << "bandwidth," << g.bandwidth << "\n";
    return 0;
}

int cmd_test_asymptotic(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, true);
    TestReport r = test_asymptotic(s.counts, s.returns, cfg.days_per_month,
                                   cfg.kappa, cfg.alpha, estimator_options(cfg));
    if (!r.note.empty())
        std::cerr << "warning: " << r.note << "\n";
    Output out(f.out, "test-asymptotic", cfg);
    write_report(out, r);
    return 0;
}

int cmd_test_bootstrap(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, true);
    Statistic stat = cfg.statistic == "rho_tilde" ? Statistic::rho_tilde
                                                  : Statistic::rho_hat;
    TestReport r = test_bootstrap(s.counts, s.returns,
                                  {power_scheme(cfg, cfg.kappa)}, cfg.alpha,
                                  sim_options(cfg, cfg.bootstrap_reps), stat,
                                  estimator_options(cfg))
                       .front();
    Output out(f.out, "test-bootstrap", cfg);
    write_report(out, r);
    return 0;
}

int cmd_test_linear(RunConfig const& cfg, Flags const& f)
{
    SeriesData s = load_series(cfg, true);
    TestReport r = test_bootstrap(s.counts, s.returns,
                                  {linear_scheme(cfg, cfg.theta)}, cfg.alpha,
                                  sim_options(cfg, cfg.bootstrap_reps),
                                  Statistic::rho_hat, estimator_options(cfg))
                       .front();
    Output out(f.out, "test-linear", cfg);
    write_report(out, r);
    return 0;
}

int cmd_mc_table(RunConfig const& cfg, Flags const& f)
{
    McExperiment ex;
    ex.params = cfg.params;
    ex.days_per_month = cfg.days_per_month;
    ex.months = cfg.months;
    for (double k : cfg.kappas)
        ex.schemes.push_back(power_scheme(cfg, k));
    for (double t : cfg.thetas)
        ex.schemes.push_back(linear_scheme(cfg, t));
    ex.replications = cfg.reps;
    ex.seed = cfg.seed;
    ex.alpha = cfg.alpha;
    ex.null_replications = cfg.bootstrap_reps;
    if (cfg.test == "asymptotic")
        ex.test = McTest::asymptotic;
    else if (cfg.test == "simulated")
        ex.test = McTest::simulated;
    else if (cfg.test == "bootstrap")
        ex.test = McTest::bootstrap;
    ex.sim = sim_options(cfg, cfg.bootstrap_reps);
    McResult r = run_mc_experiment(ex);
    Output out(f.out, "mc-table", cfg);
    write_mc_csv(out.os(), r);
    return 0;
}
}  // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Simulation, moments, estimation and predictability tests "
                 "for a long-memory trade-intensity return model"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    Flags flags;
    using Handler = int (*)(RunConfig const&, Flags const&);
    std::vector<std::pair<CLI::App*, Handler>> subs;
    auto add = [&](char const* name, char const* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, flags);
        subs.emplace_back(sub, h);
        return sub;
    };
    add("simulate", "simulate one daily path", cmd_simulate);
    add("aggregate", "monthly windows and rho statistics", cmd_aggregate)
        ->add_flag("--linear", flags.linear, "use the linear-growth horizon");
    add("moments", "closed-form moments", cmd_moments);
    add("estimate", "moment estimates of the model parameters", cmd_estimate);
    add("gph", "log-periodogram estimate of d", cmd_gph);
    add("test-asymptotic", "normal-limit predictability test",
        cmd_test_asymptotic);
    add("test-bootstrap", "model-based bootstrap predictability test",
        cmd_test_bootstrap);
    add("test-linear", "linear-horizon test with simulated critical values",
        cmd_test_linear);
    add("mc-table", "Monte Carlo table of rho statistics", cmd_mc_table);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorKind::config);
    }

    try
    {
        for (auto const& [sub, handler] : subs)
            if (sub->parsed())
                return handler(resolve(flags), flags);
    }
    catch (Error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace lmpred::cli
