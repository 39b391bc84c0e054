#ifndef MEIXNER_RNG_HPP
#define MEIXNER_RNG_HPP

#include <cmath>
#include <cstdint>

#include "meixner/errors.hpp"

namespace meixner {

// Counter-based stream: the state is derived by mixing (seed, stream), so
// stream k of a given seed is the same no matter which thread draws it or in
// which order streams are consumed. One stream per Monte Carlo draw.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(mix(seed ^ 0x5851f42d4c957f2dull) + stream);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // [0, 1), 53-bit resolution
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // strictly inside (0, 1); safe under log()
    double uniform_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double exponential() { return -std::log(uniform_open()); }

    // Gamma(shape, 1) via Marsaglia-Tsang, with the u^{1/shape} boost for
    // shape < 1.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw InvalidParam("gamma shape must be positive");
        if (shape < 1.0)
            return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdull;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ull;
        z ^= z >> 33;
        return z;
    }

    std::uint64_t state_;
};

} // namespace meixner

#endif
