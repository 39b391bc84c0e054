#ifndef MEIXNER_CLASSIFY3_HPP
#define MEIXNER_CLASSIFY3_HPP

#include <array>
#include <string>

#include "meixner/integrability.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

// Law of one normalized coordinate (mean 0, variance 1): standard Gaussian
// when b = 0, otherwise X = scale * G + shift with G ~ Gamma(shape, 1) and
// Laplace transform e^{-s/b} (1 - b s)^{-1/b^2}.
struct Marginal1D {
    enum class Kind { Gaussian, Gamma };
    Kind kind = Kind::Gaussian;
    double b = 0.0;
    double shape = 0.0; // 1/b^2 for Gamma
    double scale = 1.0; // b for Gamma, stddev for Gaussian
    double shift = 0.0; // -1/b for Gamma
};

Marginal1D marginal_params_1d(double b);

// E[e^{sX}] of the normalized 1D law: e^{s^2/2} for the Gaussian case,
// e^{-s/b} (1 - b s)^{-1/b^2} for b != 0 (requires b s < 1).
double marginal_laplace(const Marginal1D& m, double s);

// Outcome of the d=3 dichotomy. CaseI: a single cone-supported law with
// parameter a after rotation by U. CaseII: three independent Gamma/Gaussian
// components after rotation by U. Rejected: the tensor fails the canonical
// pattern or the positivity gate.
struct Classification3 {
    enum class Kind { CaseI, CaseII, Rejected };

    Kind kind = Kind::Rejected;
    Mat U;             // rotate_tensor(alpha, U) is canonical/diagonal
    double a = 0.0;    // CaseI parameter, 0 < a <= 1
    std::array<Marginal1D, 3> components{}; // CaseII per-coordinate laws
    std::string reason;                     // Rejected only
    ObstructionReport obstructions;         // Rejected only
};

Classification3 classify(const SymmetricCubicTensor& t, double tol = 1e-9);

} // namespace meixner

#endif
