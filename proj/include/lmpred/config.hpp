#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmpred/aggregate.hpp"
#include "lmpred/moments.hpp"
#include "lmpred/quadrature.hpp"

namespace lmpred
{
//---------------------------------------------------------------------------//
/*!
 * Resolved run configuration shared by all subcommands.
 */
struct RunConfig
{
    ModelParams params;
    std::size_t days = 5000;
    int steps_per_day = 50;
    int days_per_month = 20;
    std::uint64_t seed = 1;
    std::uint64_t duration_pool = 1'000'000'000;
    double kappa = 0.1;
    double theta = 0.05;
    double alpha = 0.05;
    int reps = 100;
    int bootstrap_reps = 1000;
    int threads = 0;
    double gph_exponent = 0.5;
    std::string statistic = "rho_hat";
    std::string horizon_rounding = "nearest";
    std::string test = "none";
    std::vector<long> months{131, 262, 524};
    std::vector<double> kappas{0.1, 0.3, 0.5, 0.7};
    std::vector<double> thetas{};
    int lags = 0;  // 0: h lags under d = 0, 200 otherwise
    int lag1 = 1;
    int lag2 = 2;
    QuadratureConfig quad{};
    std::string input;
};

// Apply one key/value pair; throws ConfigError naming the key.
void apply_setting(RunConfig& cfg, std::string const& key,
                   std::string const& value);

// Parse "key = value" lines; '#' starts a comment. Errors carry the line.
void apply_config_text(RunConfig& cfg, std::string const& text,
                       std::string const& source = "config");
void apply_config_file(RunConfig& cfg, std::string const& path);

// Every key with its resolved value, in a fixed order.
std::vector<std::pair<std::string, std::string>>
config_entries(RunConfig const& cfg);

std::string format_double(double v);

AggregationScheme power_scheme(RunConfig const& cfg, double kappa);
AggregationScheme linear_scheme(RunConfig const& cfg, double theta);

}  // namespace lmpred
