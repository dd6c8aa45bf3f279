#pragma once

#include <vector>

namespace lmpred
{
struct GaussRule
{
    std::vector<double> x;  // nodes on [-1, 0]
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1, 0]; cached per n.
GaussRule const& gauss_legendre(int n);

struct QuadratureConfig
{
    int n1 = 64;  // 1-D integrals
    int n3 = 32;  // reduced triple integrals
    int n4 = 20;  // reduced quadruple integrals
};

// int_{-1}^{1} (1 - |u|) (exp(gamma_z(L + u)) - 1) du
//   = int_{[-1,0]^2} (exp(gamma_z(L + t - s)) - 1) ds dt
double weighted_lag_integral(double L, double c, double d,
                             QuadratureConfig const& q = {});

// int_{[-1,0]^2} exp(gamma_z(t - s)) ds dt
double double_exp_integral(double c, double d, QuadratureConfig const& q = {});

// int_{[-1,0]^3} e^{g(t-u)} [e^{g(s-t+L) + g(s-u+L)} - 1] du dt ds
double integrate_3d_ALB0(double L, double c, double d,
                         QuadratureConfig const& q = {});

// int_{[-1,0]^4} e^{g(s-t) + g(u-v)}
//   [e^{g(L+s-v) + g(L+s-u) + g(L+t-v) + g(L+t-u)} - 1]
double integrate_4d_B0BL(double L, double c, double d,
                         QuadratureConfig const& q = {});

// Raw moments E[nu^p], p = 1..4, of the daily integrated intensity.
struct NuMoments
{
    double m1, m2, m3, m4;
};
NuMoments integrate_nu_moments(double lambda, double c, double d,
                               QuadratureConfig const& q = {});

}  // namespace lmpred
