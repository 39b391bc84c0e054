#include "meixner/dist3.hpp"

#include <cmath>
#include <thread>

#include "meixner/quadrature.hpp"

namespace meixner {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double radial2(const Point3& v) { return v(0) * v(0) + v(1) * v(1); }

// Draws are keyed by (seed, draw index), so splitting them across threads
// changes nothing about the output.
template <typename DrawOne>
std::vector<Point3> sample_batch(std::size_t n, std::uint64_t seed,
                                 const DrawOne& draw_one) {
    std::vector<Point3> out(n);
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            RngStream rng(seed, k);
            out[k] = draw_one(rng);
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                              n / 65536 + 1);
    if (workers <= 1) {
        fill(0, n);
        return out;
    }
    std::vector<std::thread> threads;
    const std::size_t stripe = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * stripe;
        const std::size_t end = std::min(n, begin + stripe);
        if (begin < end) threads.emplace_back(fill, begin, end);
    }
    for (std::thread& t : threads) t.join();
    return out;
}

} // namespace

bool in_laplace_domain(double a, const Point3& s) {
    return std::abs(a) * std::sqrt(radial2(s)) < 1.0 - a * s(2);
}

bool in_cone(const Point3& x) { return x(2) > std::sqrt(radial2(x)); }

bool in_shifted_cone(double a, const Point3& x) {
    const double h = x(2) / a + 1.0 / (a * a);
    return h > 0.0 && h * h > radial2(x) / (a * a);
}

double laplace_closed_form(const CanonicalGamma3& g, const Point3& s) {
    if (!in_laplace_domain(g.a, s))
        throw OutOfDomain("point is outside the Laplace domain D");
    const double a = g.a;
    const double q = (1.0 - a * s(2)) * (1.0 - a * s(2)) - a * a * radial2(s);
    return std::exp(-s(2) / a) * std::pow(q, -g.p());
}

double density(const CanonicalGamma3& g, const Point3& x) {
    const double a = g.a;
    if (a >= 1.0)
        throw InvalidParam("no density exists at a = 1 (surface-supported law)");
    if (!in_shifted_cone(a, x)) return 0.0;
    const double p = g.p();
    const double h = x(2) / a + 1.0 / (a * a);
    const double base = h * h - radial2(x) / (a * a);
    // log C_a = -[(1/a^2 - 3/2) ln 2 + 3 ln a + ln Gamma_Omega(p)],
    // Gamma_Omega(p) = (2 pi)^{1/2} Gamma(p) Gamma(p - 1/2)
    const double log_c = -((1.0 / (a * a) - 1.5) * std::log(2.0) + 3.0 * std::log(a) +
                           0.5 * std::log(kTwoPi) + std::lgamma(p) +
                           std::lgamma(p - 0.5));
    return std::exp(log_c - h + g.interior_exponent() * std::log(base));
}

Point3 sample_interior_one(const CanonicalGamma3& g, RngStream& rng) {
    const double a = g.a;
    if (a >= 1.0) throw InvalidParam("interior sampler requires 0 < a < 1");
    const double q = g.interior_exponent(); // > -1
    const double theta = kTwoPi * rng.uniform01();
    // w = tan^2(phi) ~ Beta(1, q + 2) by inverse CDF
    const double w = 1.0 - std::pow(rng.uniform_open(), 1.0 / (q + 1.0));
    const double phi = std::atan(std::sqrt(w));
    const double cos_phi = std::cos(phi);
    const double r = rng.gamma(1.0 / (a * a)) / cos_phi;
    const Point3 y(r * std::sin(phi) * std::cos(theta),
                   r * std::sin(phi) * std::sin(theta), r * cos_phi);
    return a * y - Point3(0.0, 0.0, 1.0 / a);
}

std::vector<Point3> sample_interior(const CanonicalGamma3& g, std::size_t n,
                                    std::uint64_t seed) {
    if (g.a >= 1.0) throw InvalidParam("interior sampler requires 0 < a < 1");
    return sample_batch(n, seed,
                        [&](RngStream& rng) { return sample_interior_one(g, rng); });
}

Point3 sample_surface_one(double a, RngStream& rng) {
    if (std::abs(a) != 1.0)
        throw InvalidParam("surface sampler requires a = 1 or a = -1");
    const double theta = kTwoPi * rng.uniform01();
    const double r = rng.exponential();
    const Point3 y(r * std::cos(theta), r * std::sin(theta), r);
    return a * (y - Point3(0.0, 0.0, 1.0));
}

std::vector<Point3> sample_surface(double a, std::size_t n, std::uint64_t seed) {
    if (std::abs(a) != 1.0)
        throw InvalidParam("surface sampler requires a = 1 or a = -1");
    return sample_batch(n, seed,
                        [&](RngStream& rng) { return sample_surface_one(a, rng); });
}

Point3 sample_case2_one(const std::array<Marginal1D, 3>& components, const Mat& U,
                        RngStream& rng) {
    Point3 v;
    for (int k = 0; k < 3; ++k) {
        const Marginal1D& m = components[k];
        if (m.kind == Marginal1D::Kind::Gaussian) {
            v(k) = m.scale * rng.normal() + m.shift;
        } else {
            v(k) = m.scale * rng.gamma(m.shape) + m.shift;
        }
    }
    return U.transpose() * v;
}

std::vector<Point3> sample_case2(const std::array<Marginal1D, 3>& components,
                                 const Mat& U, std::size_t n, std::uint64_t seed) {
    if (orthogonality_defect(U) > 1e-10)
        throw NotOrthogonal("sample_case2: U is not orthogonal");
    return sample_batch(n, seed, [&](RngStream& rng) {
        return sample_case2_one(components, U, rng);
    });
}

double cone_lt_closed_form(double p, const Point3& t) {
    const double m = t(2) * t(2) - radial2(t);
    return kTwoPi * std::tgamma(2.0 * p + 2.0) * std::pow(m, -p - 1.5);
}

double cylinder_lt_closed_form(const Point3& t) {
    return kTwoPi / std::sqrt(t(2) * t(2) - radial2(t));
}

namespace {

void check_minus_cone(const Point3& t) {
    if (!(t(2) < 0.0) || radial2(t) >= t(2) * t(2))
        throw DomainError("t must lie in -Omega (t3 < 0, t1^2 + t2^2 < t3^2); "
                          "the integral diverges otherwise");
}

} // namespace

double quadrature_cone_lt(double p, const Point3& t) {
    check_minus_cone(t);
    if (!(p > -1.0)) throw InvalidParam("cone exponent must satisfy p > -1");

    const double b = std::sqrt(radial2(t));
    const double t3 = -t(2); // > 0
    const auto rule = gauss_laguerre(64, 2.0 * p + 2.0);

    // r integral at fixed phi, rate-rescaled by lambda = t3 cos(phi):
    // int_0^inf r^{2p+2} e^{-lambda r} Itheta(r sin(phi) b) dr
    //   = lambda^{-(2p+3)} sum_i w_i Itheta(c x_i),  c = b tan(phi) / t3
    auto radial = [&](double phi) {
        const double lam = t3 * std::cos(phi);
        const double c = b * std::tan(phi) / t3;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * periodic_exp_integral(c * rule.nodes[i]);
        return std::pow(lam, -(2.0 * p + 3.0)) * sum;
    };

    if (p >= 0.0) {
        auto integrand = [&](double phi) {
            const double c2 = std::cos(2.0 * phi);
            const double jac = std::sin(phi) * (p == 0.0 ? 1.0 : std::pow(c2, p));
            if (jac == 0.0) return 0.0;
            return jac * radial(phi);
        };
        return adaptive_simpson(integrand, 0.0, M_PI / 4.0, 1e-10);
    }

    // -1 < p < 0: (cos 2phi)^p blows up at phi = pi/4. Change variables
    // twice: w = tan^2(phi) turns the integral into
    //   (2 t3^{2p+3})^{-1} int_0^1 (1-w)^p S(w) dw,
    // S(w) = sum_i w_i Itheta(b sqrt(w)/t3 x_i), and xi = 1 - (1-w)^{p+1}
    // absorbs the endpoint singularity exactly.
    auto s_of_w = [&](double w) {
        const double c = b * std::sqrt(w) / t3;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * periodic_exp_integral(c * rule.nodes[i]);
        return sum;
    };
    auto integrand = [&](double xi) {
        const double w = 1.0 - std::pow(1.0 - xi, 1.0 / (p + 1.0));
        return s_of_w(w);
    };
    const double inner = adaptive_simpson(integrand, 0.0, 1.0, 1e-10) / (p + 1.0);
    return 0.5 * std::pow(t3, -(2.0 * p + 3.0)) * inner;
}

double quadrature_cylinder_lt(const Point3& t) {
    check_minus_cone(t);
    const double t3 = -t(2);
    const auto rule = gauss_laguerre(96, 0.0);
    const int m = 512; // periodic trapezoid resolution for the theta integral
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i] / t3;
        double theta_sum = 0.0;
        for (int k = 0; k < m; ++k) {
            const double th = kTwoPi * k / m;
            theta_sum += std::exp(r * (t(0) * std::cos(th) + t(1) * std::sin(th)));
        }
        total += rule.weights[i] * (kTwoPi / m) * theta_sum;
    }
    return total / t3;
}

} // namespace meixner
