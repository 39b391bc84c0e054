#include "meixner/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "meixner/errors.hpp"

namespace meixner {

GaussLaguerreRule gauss_laguerre(int order, double alpha) {
    if (order < 1) throw InvalidParam("gauss_laguerre order must be >= 1");
    if (alpha <= -1.0) throw InvalidParam("gauss_laguerre requires alpha > -1");
    const int n = order;
    GaussLaguerreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    double x = 0.0;
    for (int i = 0; i < n; ++i) {
        // standard initial guesses for the ascending roots
        if (i == 0) {
            x = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
        } else if (i == 1) {
            x += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
        } else {
            const double ai = i - 1;
            x += ((1.0 + 2.55 * ai) / (1.9 * ai) +
                  1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
                 (x - rule.nodes[i - 2]) / (1.0 + 0.3 * alpha);
        }
        double p1 = 0.0, p2 = 0.0, pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // recurrence for L_n^alpha and its derivative at x
            p1 = 1.0;
            p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0 + alpha - x) * p2 - (j - 1.0 + alpha) * p3) / j;
            }
            pp = (n * p1 - (n + alpha) * p2) / x;
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] =
            -std::exp(std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n))) /
            (pp * n * p2);
    }
    return rule;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double m, double fm, double whole,
                    double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double periodic_exp_integral(double z) {
    const double q = 0.25 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n < 10000; ++n) {
        term *= q / (static_cast<double>(n) * n);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 2.0 * M_PI * sum;
}

} // namespace meixner
