#include "lmpred/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lmpred/error.hpp"

namespace lmpred
{
namespace
{
std::string trim(std::string const& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string const& key, std::string const& v)
{
    double out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError("value for '" + key + "' is not a number: " + v);
    return out;
}

template<class Int>
Int to_int(std::string const& key, std::string const& v)
{
    Int out;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("value for '" + key + "' is not an integer: " + v);
    return out;
}

std::vector<std::string> split_list(std::string const& v)
{
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::string choose(std::string const& key, std::string const& v,
                   std::initializer_list<char const*> allowed)
{
    for (auto a : allowed)
        if (v == a)
            return v;
    std::string msg = "value for '" + key + "' must be one of";
    for (auto a : allowed)
        msg += std::string(" ") + a;
    throw ConfigError(msg + ", got " + v);
}

template<class T>
std::string join(std::vector<T> const& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i)
            out += ",";
        if constexpr (std::is_floating_point_v<T>)
            out += format_double(v[i]);
        else
            out += std::to_string(v[i]);
    }
    return out;
}
}  // namespace

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void apply_setting(RunConfig& cfg, std::string const& key,
                   std::string const& value)
{
    auto const& v = value;
    auto& p = cfg.params;
    if (key == "mu")
        p.mu = to_double(key, v);
    else if (key == "lambda")
        p.lambda = to_double(key, v);
    else if (key == "sigma_e")
        p.sigma_e = to_double(key, v);
    else if (key == "c")
        p.c = to_double(key, v);
    else if (key == "d")
        p.d = to_double(key, v);
    else if (key == "days")
        cfg.days = to_int<std::size_t>(key, v);
    else if (key == "steps_per_day")
        cfg.steps_per_day = to_int<int>(key, v);
    else if (key == "days_per_month")
        cfg.days_per_month = to_int<int>(key, v);
    else if (key == "seed")
        cfg.seed = to_int<std::uint64_t>(key, v);
    else if (key == "duration_pool")
        cfg.duration_pool = to_int<std::uint64_t>(key, v);
    else if (key == "kappa")
        cfg.kappa = to_double(key, v);
    else if (key == "theta")
        cfg.theta = to_double(key, v);
    else if (key == "alpha")
        cfg.alpha = to_double(key, v);
    else if (key == "reps")
        cfg.reps = to_int<int>(key, v);
    else if (key == "bootstrap_reps")
        cfg.bootstrap_reps = to_int<int>(key, v);
    else if (key == "threads")
        cfg.threads = to_int<int>(key, v);
    else if (key == "gph_exponent")
        cfg.gph_exponent = to_double(key, v);
    else if (key == "statistic")
        cfg.statistic = choose(key, v, {"rho_hat", "rho_tilde"});
    else if (key == "horizon_rounding")
        cfg.horizon_rounding = choose(key, v, {"floor", "nearest"});
    else if (key == "test")
        cfg.test = choose(key, v, {"none", "asymptotic", "simulated", "bootstrap"});
    else if (key == "months")
    {
        cfg.months.clear();
        for (auto const& s : split_list(v))
            cfg.months.push_back(to_int<long>(key, s));
    }
    else if (key == "kappas")
    {
        cfg.kappas.clear();
        for (auto const& s : split_list(v))
            cfg.kappas.push_back(to_double(key, s));
    }
    else if (key == "thetas")
    {
        cfg.thetas.clear();
        for (auto const& s : split_list(v))
            cfg.thetas.push_back(to_double(key, s));
    }
    else if (key == "lags")
        cfg.lags = to_int<int>(key, v);
    else if (key == "lag1")
        cfg.lag1 = to_int<int>(key, v);
    else if (key == "lag2")
        cfg.lag2 = to_int<int>(key, v);
    else if (key == "quad_n1")
        cfg.quad.n1 = to_int<int>(key, v);
    else if (key == "quad_n3")
        cfg.quad.n3 = to_int<int>(key, v);
    else if (key == "quad_n4")
        cfg.quad.n4 = to_int<int>(key, v);
    else if (key == "input")
        cfg.input = v;
    else
        throw ConfigError("unknown key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, std::string const& text,
                       std::string const& source)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos)
            throw ConfigError(where + "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try
        {
            apply_setting(cfg, key, value);
        }
        catch (ConfigError const& e)
        {
            std::string msg = e.what();
            auto colon = msg.find(": ");
            throw ConfigError(where + msg.substr(colon + 2));
        }
    }
}

void apply_config_file(RunConfig& cfg, std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), path);
}

std::vector<std::pair<std::string, std::string>>
config_entries(RunConfig const& cfg)
{
    auto const& p = cfg.params;
    auto f = format_double;
    return {
        {"mu", f(p.mu)},
        {"lambda", f(p.lambda)},
        {"sigma_e", f(p.sigma_e)},
        {"c", f(p.c)},
        {"d", f(p.d)},
        {"days", std::to_string(cfg.days)},
        {"steps_per_day", std::to_string(cfg.steps_per_day)},
        {"days_per_month", std::to_string(cfg.days_per_month)},
        {"seed", std::to_string(cfg.seed)},
        {"duration_pool", std::to_string(cfg.duration_pool)},
        {"kappa", f(cfg.kappa)},
        {"theta", f(cfg.theta)},
        {"alpha", f(cfg.alpha)},
        {"reps", std::to_string(cfg.reps)},
        {"bootstrap_reps", std::to_string(cfg.bootstrap_reps)},
        {"threads", std::to_string(cfg.threads)},
        {"gph_exponent", f(cfg.gph_exponent)},
        {"statistic", cfg.statistic},
        {"horizon_rounding", cfg.horizon_rounding},
        {"test", cfg.test},
        {"months", join(cfg.months)},
        {"kappas", join(cfg.kappas)},
        {"thetas", join(cfg.thetas)},
        {"lags", std::to_string(cfg.lags)},
        {"lag1", std::to_string(cfg.lag1)},
        {"lag2", std::to_string(cfg.lag2)},
        {"quad_n1", std::to_string(cfg.quad.n1)},
        {"quad_n3", std::to_string(cfg.quad.n3)},
        {"quad_n4", std::to_string(cfg.quad.n4)},
        {"input", cfg.input},
    };
}

namespace
{
HorizonRounding rounding_of(RunConfig const& cfg)
{
    return cfg.horizon_rounding == "nearest" ? HorizonRounding::nearest
                                             : HorizonRounding::floor;
}
}  // namespace

AggregationScheme power_scheme(RunConfig const& cfg, double kappa)
{
    auto s = AggregationScheme::power_law(kappa, cfg.days_per_month);
    s.rounding = rounding_of(cfg);
    return s;
}

AggregationScheme linear_scheme(RunConfig const& cfg, double theta)
{
    auto s = AggregationScheme::linear_growth(theta, cfg.days_per_month);
    s.rounding = rounding_of(cfg);
    return s;
}

}  // namespace lmpred
