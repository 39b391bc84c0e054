#ifndef MEIXNER_RATIONAL_HPP
#define MEIXNER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace meixner {

// Exact arithmetic scalar for the rational mode. Doubles convert exactly
// (every finite double is a dyadic rational), so "exact mode" means exact
// over the binary values actually stored in the spec.
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
    static double abs(double x) { return x < 0 ? -x : x; }
};

template <>
struct ScalarOps<Rational> {
    static Rational from_double(double x) { return Rational(x); }
    static double to_double(const Rational& x) { return x.convert_to<double>(); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

} // namespace meixner

#endif
