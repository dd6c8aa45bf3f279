#include "lmpred/simulate.hpp"

#include <cmath>
#include <string>

#include "lmpred/error.hpp"
#include "lmpred/fgn.hpp"
#include "lmpred/rng.hpp"

namespace lmpred
{
namespace
{
std::shared_ptr<CirculantEmbedding const>
embedding_for(ModelParams const& p, PathConfig const& cfg)
{
    return cached_embedding(fgn_length(cfg), 1.0 / cfg.steps_per_day, p.c,
                            p.d);
}

// Prices and returns from counts and per-day Gaussian shock sums.
void fill_prices(DailySeries& s, ModelParams const& p, PathConfig const& cfg)
{
    RandomStream shocks(cfg.seed, Substream::shocks);
    std::size_t T = s.counts.size();
    s.log_price.resize(T);
    s.returns.resize(T);
    std::int64_t n_cum = 0;
    double shock_cum = 0;
    double prev = 0;
    for (std::size_t k = 0; k < T; ++k)
    {
        n_cum += s.counts[k];
        // Sum of counts[k] iid N(0, sigma^2) shocks.
        double z = shocks.normal();
        shock_cum += p.sigma_e * std::sqrt(static_cast<double>(s.counts[k])) * z;
        double lp = p.mu * static_cast<double>(n_cum) + shock_cum;
        s.log_price[k] = lp;
        s.returns[k] = lp - prev;
        prev = lp;
    }
}

DailySeries path_from_fgn(std::vector<double> const& fgn, ModelParams const& p,
                          PathConfig const& cfg)
{
    DailySeries s;
    s.lambda_tilde = cumulative_intensity(fgn, p.lambda, cfg);
    s.counts = simulate_counts(s.lambda_tilde, p.lambda, cfg);
    fill_prices(s, p, cfg);
    return s;
}
}  // namespace

void validate(PathConfig const& cfg)
{
    require(cfg.days >= 1, "path length T must be at least one day");
    require(cfg.steps_per_day >= 1, "steps per day M must be positive");
    require(cfg.duration_pool >= 1, "duration pool must be positive");
}

std::size_t fgn_length(PathConfig const& cfg)
{
    return next_power_of_two(cfg.days * static_cast<std::size_t>(cfg.steps_per_day));
}

std::vector<double> cumulative_intensity(std::vector<double> const& fgn,
                                         double lambda, PathConfig const& cfg)
{
    std::size_t M = cfg.steps_per_day;
    require(fgn.size() >= cfg.days * M, "fGn sample shorter than T*M");
    std::vector<double> out(cfg.days);
    double clock = 0;
    for (std::size_t k = 0; k < cfg.days; ++k)
    {
        double day = 0;
        for (std::size_t j = k * M; j < (k + 1) * M; ++j)
            day += std::exp(fgn[j]);
        clock += day / static_cast<double>(M);
        out[k] = lambda * clock;
    }
    return out;
}

std::vector<double> simulate_intensity(ModelParams const& p,
                                       PathConfig const& cfg)
{
    validate(p);
    validate(cfg);
    FgnGenerator gen(embedding_for(p, cfg), cfg.seed);
    return cumulative_intensity(gen.next(), p.lambda, cfg);
}

std::vector<std::int64_t> simulate_counts(std::vector<double> const& lambda_tilde,
                                          double lambda, PathConfig const& cfg)
{
    require(lambda > 0, "lambda must be positive");
    RandomStream durations(cfg.seed, Substream::durations);
    std::vector<std::int64_t> counts(lambda_tilde.size());
    std::uint64_t draws = 1;
    double next_arrival = durations.exponential() / lambda;
    for (std::size_t k = 0; k < lambda_tilde.size(); ++k)
    {
        double clock = lambda_tilde[k] / lambda;
        std::int64_t n = 0;
        while (next_arrival <= clock)
        {
            ++n;
            if (draws >= cfg.duration_pool)
                throw DurationPoolExhausted(
                    "more than " + std::to_string(cfg.duration_pool)
                    + " durations needed by day " + std::to_string(k + 1));
            next_arrival += durations.exponential() / lambda;
            ++draws;
        }
        counts[k] = n;
    }
    return counts;
}

DailySeries simulate_path(ModelParams const& p, PathConfig const& cfg)
{
    validate(p);
    validate(cfg);
    FgnGenerator gen(embedding_for(p, cfg), cfg.seed);
    return path_from_fgn(gen.next(), p, cfg);
}

std::pair<DailySeries, DailySeries>
simulate_path_pair(ModelParams const& p, PathConfig const& first,
                   PathConfig const& second)
{
    validate(p);
    validate(first);
    validate(second);
    require(first.days == second.days
                && first.steps_per_day == second.steps_per_day,
            "paired paths need the same T and M");
    FgnGenerator gen(embedding_for(p, first), first.seed);
    std::vector<double> a, b;
    gen.next_pair(a, b);
    return {path_from_fgn(a, p, first), path_from_fgn(b, p, second)};
}

DailySeries simulate_two_shock_path(TwoShockParams const& p,
                                    PathConfig const& cfg)
{
    validate(p.first);
    validate(p.second);
    validate(cfg);
    if (!(p.first.mu > 0 && p.second.mu <= 0 && p.first.mu + p.second.mu > 0))
        throw InvalidDriftPair("need mu_1 > 0 >= mu_2 and mu_1 + mu_2 > 0");
    PathConfig c1 = cfg, c2 = cfg;
    c1.seed = derive_seed(cfg.seed, {1});
    c2.seed = derive_seed(cfg.seed, {2});

    std::vector<double> x1, x2;
    if (p.first.c == p.second.c && p.first.d == p.second.d)
    {
        FgnGenerator gen(embedding_for(p.first, c1), c1.seed);
        gen.next_pair(x1, x2);
    }
    else
    {
        x1 = FgnGenerator(embedding_for(p.first, c1), c1.seed).next();
        x2 = FgnGenerator(embedding_for(p.second, c2), c2.seed).next();
    }
    DailySeries s1 = path_from_fgn(x1, p.first, c1);
    DailySeries s2 = path_from_fgn(x2, p.second, c2);

    DailySeries out;
    out.lambda_tilde.resize(cfg.days);
    out.counts.resize(cfg.days);
    out.log_price.resize(cfg.days);
    out.returns.resize(cfg.days);
    double prev = 0;
    for (std::size_t k = 0; k < cfg.days; ++k)
    {
        out.lambda_tilde[k] = s1.lambda_tilde[k] + s2.lambda_tilde[k];
        out.counts[k] = s1.counts[k] + s2.counts[k];
        out.log_price[k] = s1.log_price[k] + s2.log_price[k];
        out.returns[k] = out.log_price[k] - prev;
        prev = out.log_price[k];
    }
    return out;
}

}  // namespace lmpred
