#ifndef MEIXNER_DIST3_HPP
#define MEIXNER_DIST3_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "meixner/classify3.hpp"
#include "meixner/rng.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

using Point3 = Eigen::Vector3d;

// Cone-supported canonical law with parameter 0 < a <= 1: Laplace transform
// e^{-s3/a} (-a^2 s1^2 - a^2 s2^2 + (1 - a s3)^2)^{-1/(2a^2)}. Density on
// the open shifted cone for a < 1; surface measure on the cone for a = 1.
struct CanonicalGamma3 {
    double a;

    explicit CanonicalGamma3(double a_) : a(a_) {
        if (!(a > 0.0) || a > 1.0)
            throw InvalidParam("canonical parameter must satisfy 0 < a <= 1, got " +
                               std::to_string(a_));
    }

    double p() const { return 1.0 / (2.0 * a * a); }           // >= 1/2
    double interior_exponent() const { return p() - 1.5; }     // > -1 iff a < 1
};

// Laplace domain D = { s : |a| sqrt(s1^2+s2^2) < 1 - a s3 }.
bool in_laplace_domain(double a, const Point3& s);
// Open upper cone x3 > sqrt(x1^2 + x2^2).
bool in_cone(const Point3& x);
// Shifted cone Omega_a: (x3/a + 1/a^2)^2 > (x1^2+x2^2)/a^2 and x3/a + 1/a^2 > 0.
bool in_shifted_cone(double a, const Point3& x);

double laplace_closed_form(const CanonicalGamma3& g, const Point3& s);

// Density on Omega_a (requires a < 1); 0 outside.
double density(const CanonicalGamma3& g, const Point3& x);

// One draw of the interior law (0 < a < 1) from its own stream.
Point3 sample_interior_one(const CanonicalGamma3& g, RngStream& rng);
std::vector<Point3> sample_interior(const CanonicalGamma3& g, std::size_t n,
                                    std::uint64_t seed);

// One draw of the a = +/-1 surface law.
Point3 sample_surface_one(double a, RngStream& rng);
std::vector<Point3> sample_surface(double a, std::size_t n, std::uint64_t seed);

// Independent per-component Gamma/Gaussian draws assembled and mapped back
// through U^T.
Point3 sample_case2_one(const std::array<Marginal1D, 3>& components, const Mat& U,
                        RngStream& rng);
std::vector<Point3> sample_case2(const std::array<Marginal1D, 3>& components,
                                 const Mat& U, std::size_t n, std::uint64_t seed);

// Numerical Laplace transform of (x3^2 - x1^2 - x2^2)^p on the cone, for
// t in -Omega and p > -1; the closed form is
// 2 pi Gamma(2p+2) (t3^2 - t1^2 - t2^2)^{-p - 3/2}.
double quadrature_cone_lt(double p, const Point3& t);
double cone_lt_closed_form(double p, const Point3& t);

// Numerical Laplace transform of the cylinder push-forward surface measure;
// closed form 2 pi / sqrt(t3^2 - t1^2 - t2^2).
double quadrature_cylinder_lt(const Point3& t);
double cylinder_lt_closed_form(const Point3& t);

} // namespace meixner

#endif
