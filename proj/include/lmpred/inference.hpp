#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmpred/aggregate.hpp"
#include "lmpred/estimate.hpp"
#include "lmpred/moments.hpp"

namespace lmpred
{
struct TestReport
{
    std::string method;
    double statistic = 0;
    double critical_value = 0;
    bool reject = false;
    double p_value = 0;
    double alpha = 0.05;
    double param = 0;  // kappa or theta
    long months = 0;
    int horizon = 0;
    int skip = 0;      // h, for the skipped-return statistic
    int replications = 0;
    ModelParams null_params;
    std::string note;
};

// sqrt(T^{1-kappa}) * rho_tilde with skip h.
double asymptotic_statistic(std::vector<double> const& returns, int m,
                            double kappa, int h);

// Normal-limit test of rho_tilde; S^2, A1, A2 from the model at the given
// null parameters (d is set to zero).
TestReport test_asymptotic(std::vector<double> const& returns, int m,
                           double kappa, double alpha,
                           ModelParams const& null_params);

// Same, with the null parameters estimated from the series under d = 0.
TestReport test_asymptotic(std::vector<std::int64_t> const& counts,
                           std::vector<double> const& returns, int m,
                           double kappa, double alpha,
                           EstimatorOptions const& opt = {});

enum class Statistic
{
    rho_hat,    // sqrt(T^{1-kappa}) * rho_hat (power law) or rho_hat (linear)
    rho_tilde,  // sqrt(T^{1-kappa}) * rho_tilde with skip h
};

struct SimulationOptions
{
    int replications = 1000;
    std::uint64_t seed = 0;
    int steps_per_day = 50;
    std::uint64_t duration_pool = 1'000'000'000;
    int threads = 1;
};

// Statistic of one series under one aggregation scheme.
double scheme_statistic(std::vector<double> const& returns,
                        AggregationScheme const& scheme, Statistic stat,
                        int h);

// Null distribution of the statistics: one vector per scheme, each of
// length opt.replications, from paths of `days` days at params.
std::vector<std::vector<double>>
simulate_null_statistics(ModelParams const& params, std::size_t days,
                         std::vector<AggregationScheme> const& schemes,
                         Statistic stat, SimulationOptions const& opt);

// Simulation-based tests with null parameters estimated under d = 0. The
// same null paths are reused across schemes.
std::vector<TestReport>
test_bootstrap(std::vector<std::int64_t> const& counts,
               std::vector<double> const& returns,
               std::vector<AggregationScheme> const& schemes, double alpha,
               SimulationOptions const& opt,
               Statistic stat = Statistic::rho_hat,
               EstimatorOptions const& est = {});

TestReport test_bootstrap(std::vector<std::int64_t> const& counts,
                          std::vector<double> const& returns, int m,
                          double kappa, double alpha,
                          SimulationOptions const& opt,
                          Statistic stat = Statistic::rho_hat);

TestReport test_linear_simulated(std::vector<std::int64_t> const& counts,
                                 std::vector<double> const& returns, int m,
                                 double theta, double alpha,
                                 SimulationOptions const& opt);

//---------------------------------------------------------------------------//
struct GphReport
{
    double d = 0;
    double se = 0;
    int bandwidth = 0;
};

// Log-periodogram regression of log I(w_j) on -2 log w_j, j = 1..n^exponent.
GphReport estimate_gph(std::vector<double> const& x, double exponent);

struct NormalityReport
{
    double skewness = 0;
    double excess_kurtosis = 0;
    double z_skewness = 0;
    double z_kurtosis = 0;
    double p_skewness = 0;
    double p_kurtosis = 0;
    bool consistent_at_1pct = false;
};

NormalityReport normality_diagnostic(std::vector<double> const& x);

//---------------------------------------------------------------------------//
enum class McTest
{
    none,
    asymptotic,        // population null ingredients, rho_tilde
    simulated,         // critical value from null paths at the true c, d = 0
    bootstrap,         // estimated null per replication
};

struct McExperiment
{
    ModelParams params;
    int days_per_month = 20;
    std::vector<long> months;                // T_tilde grid
    std::vector<AggregationScheme> schemes;  // share paths within a T_tilde row
    int replications = 100;
    std::uint64_t seed = 0;
    McTest test = McTest::none;
    double alpha = 0.05;
    int null_replications = 1000;  // simulated critical values / bootstrap
    SimulationOptions sim{};
};

struct McCell
{
    std::string framework;
    double param = 0;
    long months = 0;
    int replications = 0;
    double mean_rho = 0;
    double var_rho = 0;
    double rejection_rate = 0;  // NaN without a test
    std::vector<double> rho;    // per-replication rho_hat
};

struct McSlope
{
    std::string framework;
    double param = 0;
    double intercept = 0;
    double slope = 0;
    double slope_se = 0;
};

struct McResult
{
    std::vector<McCell> cells;
    std::vector<McSlope> slopes;  // log var(rho_hat) on log T_tilde
};

McResult run_mc_experiment(McExperiment const& ex);

void write_mc_csv(std::ostream& os, McResult const& r);

}  // namespace lmpred
