#pragma once

#include <cstdint>
#include <vector>

#include "lmpred/moments.hpp"
#include "lmpred/quadrature.hpp"

namespace lmpred
{
// Sample (or population) moments the estimators are built from.
struct SampleMoments
{
    double mean_count = 0;
    double mean_return = 0;
    double var_count = 0;
    double var_return = 0;
    double cov_count_1 = 0;  // count autocovariance at the first lag
    double cov_count_2 = 0;  // ... and at the second lag
};

struct EstimatorOptions
{
    int lag1 = 1;
    int lag2 = 2;
    double c_min = 0.05;
    double c_max = 20;
    double d_max = 0.49;
    int max_iter = 200;     // bisection steps per search
    double tol = 1e-13;     // bracket width, relative
    bool fix_d_zero = false;
    QuadratureConfig quad{};
};

struct EstimateReport
{
    ModelParams params;
    bool d_at_bound = false;
    bool sigma_e_negative = false;  // implied shock variance < 0; sigma_e set to 0
    int outer_iterations = 0;
    double residual_1 = 0;  // model minus target at lag1, relative
    double residual_2 = 0;
};

SampleMoments sample_moments(std::vector<std::int64_t> const& counts,
                             std::vector<double> const& returns,
                             EstimatorOptions const& opt = {});

// Population moments of the model at the estimator's lags.
SampleMoments population_moments(ModelParams const& p,
                                 EstimatorOptions const& opt = {});

// Solve lambda^2 e W(lag1; c, d) = target for c with d fixed.
double solve_c(double target, double lambda, double d,
               EstimatorOptions const& opt = {});

EstimateReport estimate_from_moments(SampleMoments const& s,
                                     EstimatorOptions const& opt = {});

EstimateReport estimate_all(std::vector<std::int64_t> const& counts,
                            std::vector<double> const& returns,
                            EstimatorOptions const& opt = {});

}  // namespace lmpred
