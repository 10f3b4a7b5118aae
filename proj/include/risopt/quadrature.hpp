#pragma once
// Gauss-Laguerre quadrature (weight e^-x on [0, inf)) for expectations of the
// form E[f(X)] with X exponential: E[f(X)] = int_0^inf e^-t f(mean*t) dt.
#include <functional>
#include <vector>

namespace risopt {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes/weights via Golub-Welsch (symmetric tridiagonal eigenproblem).
QuadratureRule gauss_laguerre(int n);

// Shared 96-node rule (computed once).
const QuadratureRule& gauss_laguerre_96();

// E[f(X)], X ~ Exponential(mean), by Gauss-Laguerre after substituting
// x = mean * t.
double average_over_exponential(const std::function<double(double)>& f, double mean,
                                const QuadratureRule& rule);

// Reference integrator for the same expectation: iteratively refined
// trapezoid on [0, t_max]. Used once per rectifier model as a self-check of
// the Gauss-Laguerre result.
double average_over_exponential_trapezoid(const std::function<double(double)>& f, double mean,
                                          double abs_tol, double t_max = 60.0);

}  // namespace risopt
