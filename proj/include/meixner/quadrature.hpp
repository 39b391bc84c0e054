#ifndef MEIXNER_QUADRATURE_HPP
#define MEIXNER_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace meixner {

// Nodes and weights for int_0^inf x^alpha e^{-x} f(x) dx ~ sum w_i f(x_i)
// (generalized Gauss-Laguerre, alpha > -1).
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLaguerreRule gauss_laguerre(int order, double alpha);

// Recursive adaptive Simpson on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40);

// int_0^{2pi} e^{z cos(theta)} dtheta = 2 pi sum_n (z^2/4)^n / (n!)^2, summed
// until the term falls below 1e-18 of the running sum.
double periodic_exp_integral(double z);

} // namespace meixner

#endif
