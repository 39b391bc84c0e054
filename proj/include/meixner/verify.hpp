#ifndef MEIXNER_VERIFY_HPP
#define MEIXNER_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "meixner/classify3.hpp"
#include "meixner/dist3.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

// Single source of truth for every tolerance the harness applies.
struct VerifyConfig {
    double tol_exact = 1e-12;     // exact algebraic identities
    double tol_symbolic = 1e-9;   // symbolic expansion vs float evaluation
    double tol_operator = 1e-7;   // operator residuals, coefficient extraction
    double tol_axioms = 1e-8;     // commutation-rule residuals on F_{N-2}
    double tol_quadrature = 1e-6; // cone quadrature, relative
    double tol_quadrature_cylinder = 1e-8;
    double mc_sigmas = 4.0;       // Monte Carlo acceptance band in standard errors

    std::uint64_t seed = 42;
    enum class Profile { Quick, Full } profile = Profile::Full;
    int chaos_degree = 4;

    std::size_t draws() const {
        return profile == Profile::Quick ? 100000u : 1000000u;
    }
};

struct VerifyCheck {
    std::string name;
    std::string description;
    double tolerance = 0.0;
    double observed = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string skip_reason;
    double wall_ms = 0.0;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks; // sorted by name

    bool pass() const {
        for (const auto& c : checks)
            if (!c.skipped && !c.pass) return false;
        return true;
    }
};

struct PdeResidual {
    double closed_form = 0.0;       // analytic gradient vs (I-B)^{-1} phi s
    double finite_difference = 0.0; // central differences vs the same
};

// Residual of the gradient system nabla phi = (I - B(s))^{-1} phi(s) s for
// the canonical law with parameter a, at the given points of D. A nonzero
// exponent_perturbation multiplies the exponent of the closed form by
// (1 + eps), for sensitivity checks of the harness itself.
PdeResidual pde_residual(double a, const std::vector<Point3>& points,
                         double exponent_perturbation = 0.0);

// Max over a grid with ||s||_inf <= min(0.02, R/2) of
// max(0, |taylor partial sum - closed form| - analytic tail bound).
double taylor_vs_closed_form(double a, int max_degree);

VerifyReport full_suite(const MeixnerSpec& spec, const VerifyConfig& config);

} // namespace meixner

#endif
