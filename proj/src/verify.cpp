#include "meixner/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>

#include "meixner/chaos.hpp"
#include "meixner/integrability.hpp"
#include "meixner/moments.hpp"
#include "meixner/rng.hpp"

namespace meixner {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// residual of nabla phi = (I - B(s))^{-1} phi(s) s for a caller-supplied phi
struct GenericPde {
    const SymmetricCubicTensor* tensor;
    std::function<double(const Vec&)> phi;
    std::function<Vec(const Vec&)> grad; // analytic; empty -> skip that variant

    double rhs_residual(const Vec& s, const Vec& grad_phi) const {
        const int d = tensor->dimension();
        Mat B = Mat::Zero(d, d);
        for (int k = 0; k < d; ++k) B += s(k) * slice_matrix(*tensor, k);
        const Vec rhs = (Mat::Identity(d, d) - B).partialPivLu().solve(phi(s) * s);
        return (grad_phi - rhs).norm();
    }

    Vec fd_gradient(const Vec& s) const {
        const int d = static_cast<int>(s.size());
        Vec g(d);
        for (int i = 0; i < d; ++i) {
            const double h = 1e-6 * std::max(1.0, std::abs(s(i)));
            Vec sp = s, sm = s;
            sp(i) += h;
            sm(i) -= h;
            g(i) = (phi(sp) - phi(sm)) / (2.0 * h);
        }
        return g;
    }
};

PdeResidual run_pde(const GenericPde& pde, const std::vector<Point3>& points) {
    PdeResidual out;
    for (const Point3& p : points) {
        const Vec s = p;
        if (pde.grad)
            out.closed_form =
                std::max(out.closed_form, pde.rhs_residual(s, pde.grad(s)));
        out.finite_difference =
            std::max(out.finite_difference, pde.rhs_residual(s, pde.fd_gradient(s)));
    }
    return out;
}

} // namespace

PdeResidual pde_residual(double a, const std::vector<Point3>& points,
                         double exponent_perturbation) {
    const double p = (1.0 + exponent_perturbation) / (2.0 * a * a);
    for (const Point3& s : points)
        if (!in_laplace_domain(a, s))
            throw OutOfDomain("pde_residual: point outside the Laplace domain");

    const SymmetricCubicTensor tensor = canonical_tensor(a);
    GenericPde pde;
    pde.tensor = &tensor;
    pde.phi = [a, p](const Vec& s) {
        const double q =
            (1.0 - a * s(2)) * (1.0 - a * s(2)) - a * a * (s(0) * s(0) + s(1) * s(1));
        return std::exp(-s(2) / a) * std::pow(q, -p);
    };
    pde.grad = [a, p, &pde](const Vec& s) {
        const double q =
            (1.0 - a * s(2)) * (1.0 - a * s(2)) - a * a * (s(0) * s(0) + s(1) * s(1));
        Vec dlog(3);
        dlog(0) = 2.0 * p * a * a * s(0) / q;
        dlog(1) = 2.0 * p * a * a * s(1) / q;
        dlog(2) = -1.0 / a + 2.0 * p * a * (1.0 - a * s(2)) / q;
        return Vec(pde.phi(s) * dlog);
    };
    return run_pde(pde, points);
}

double taylor_vs_closed_form(double a, int max_degree) {
    const MeixnerSpec spec{canonical_tensor(a)};
    MomentTable tbl(spec);
    const CanonicalGamma3 g(a);
    const double extent = std::min(0.02, 0.5 * laplace_radius(spec));
    double worst = 0.0;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                Vec s(3);
                s << extent * i, extent * j, extent * k;
                const double approx = taylor_laplace(tbl, s, max_degree);
                const double exact = laplace_closed_form(g, s);
                const double tail = taylor_tail_bound(spec, s, max_degree);
                worst = std::max(worst, std::abs(approx - exact) - tail);
            }
    return std::max(worst, 0.0);
}

namespace {

struct SuiteRunner {
    VerifyReport report;

    void add(const std::string& name, const std::string& description, double tol,
             const std::function<double()>& observe) {
        VerifyCheck c;
        c.name = name;
        c.description = description;
        c.tolerance = tol;
        const auto t0 = Clock::now();
        try {
            c.observed = observe();
            c.pass = c.observed <= tol;
        } catch (const std::exception& e) {
            c.observed = std::numeric_limits<double>::infinity();
            c.pass = false;
            c.description += " [error: " + std::string(e.what()) + "]";
        }
        c.wall_ms = ms_since(t0);
        report.checks.push_back(std::move(c));
    }

    void skip(const std::string& name, const std::string& description,
              const std::string& reason) {
        VerifyCheck c;
        c.name = name;
        c.description = description;
        c.skipped = true;
        c.skip_reason = reason;
        report.checks.push_back(std::move(c));
    }
};

struct MomentStat {
    double mean = 0.0;
    double se = 0.0;
};

// sample mean and its standard error for f over the draws
template <typename F>
MomentStat sample_stat(const std::vector<Point3>& pts, F&& f) {
    double sum = 0.0, sum2 = 0.0;
    for (const Point3& x : pts) {
        const double v = f(x);
        sum += v;
        sum2 += v * v;
    }
    const double n = static_cast<double>(pts.size());
    MomentStat s;
    s.mean = sum / n;
    const double var = std::max(sum2 / n - s.mean * s.mean, 0.0);
    s.se = std::max(std::sqrt(var / n), 1e-300);
    return s;
}

std::vector<Point3> pde_check_points(std::uint64_t seed,
                                     const std::function<bool(const Point3&)>& ok) {
    std::vector<Point3> pts;
    RngStream rng(seed, 0x9d5);
    while (pts.size() < 20) {
        Point3 s(0.05 * (2.0 * rng.uniform01() - 1.0),
                 0.05 * (2.0 * rng.uniform01() - 1.0),
                 0.05 * (2.0 * rng.uniform01() - 1.0));
        if (ok(s)) pts.push_back(s);
    }
    return pts;
}

} // namespace

VerifyReport full_suite(const MeixnerSpec& spec, const VerifyConfig& config) {
    SuiteRunner runner;
    const int d = spec.dimension();

    runner.add("a_lcc", "linear consistency: beta symmetric PSD, normalization", 0.0,
               [&] {
                   const LccReport rep = validate_lcc(spec);
                   return static_cast<double>(rep.violations.size());
               });

    runner.add("b_necessary_conditions",
               "obstruction identities C_{ij}t . B(t)^n t vanish for n <= d-1",
               config.tol_symbolic, [&] {
                   const ObstructionReport rep =
                       necessary_conditions(spec.alpha, config.tol_symbolic);
                   double worst = 0.0;
                   for (const auto& e : rep.entries)
                       worst = std::max(worst, e.max_abs_normalized);
                   return worst;
               });

    const bool normalized = spec.is_normalized();
    if (!normalized) {
        for (const char* name :
             {"c_classify", "d_chaos_axioms", "e_chaos_meixner1", "f_pde_closed_form",
              "g_pde_finite_difference", "h_taylor_vs_closed_form",
              "i_quadrature_cone", "j_quadrature_cylinder", "k_sampler_support",
              "l_sampler_moments", "m_sampler_laplace"})
            runner.skip(name, "", "spec is not normalized (beta != I or mean != 0)");
        std::sort(runner.report.checks.begin(), runner.report.checks.end(),
                  [](const VerifyCheck& a, const VerifyCheck& b) {
                      return a.name < b.name;
                  });
        return runner.report;
    }

    Classification3 cls;
    bool classified = false;
    if (d == 3) {
        try {
            cls = classify(spec.alpha, config.tol_symbolic);
            classified = true;
        } catch (const std::exception&) {
            classified = false;
        }
    }

    if (d != 3) {
        runner.skip("c_classify", "", "classification requires dimension 3");
    } else {
        runner.add("c_classify",
                   "dichotomy: Case I cone law / Case II product law", 0.0, [&] {
                       if (!classified)
                           throw InvalidParam("classification failed to run");
                       return cls.kind == Classification3::Kind::Rejected ? 1.0 : 0.0;
                   });
    }

    const bool accepted =
        d == 3 && classified && cls.kind != Classification3::Kind::Rejected;
    if (!accepted) {
        const std::string reason =
            d != 3 ? "classification requires dimension 3"
                   : "tensor rejected; downstream verification targets undefined";
        for (const char* name :
             {"d_chaos_axioms", "e_chaos_meixner1", "f_pde_closed_form",
              "g_pde_finite_difference", "h_taylor_vs_closed_form",
              "i_quadrature_cone", "j_quadrature_cylinder", "k_sampler_support",
              "l_sampler_moments", "m_sampler_laplace"})
            runner.skip(name, "", reason);
        std::sort(runner.report.checks.begin(), runner.report.checks.end(),
                  [](const VerifyCheck& a, const VerifyCheck& b) {
                      return a.name < b.name;
                  });
        return runner.report;
    }

    // chaos oracle
    const int N = config.chaos_degree;
    runner.add("d_chaos_axioms",
               "commutation rules and semi-quantum symmetry on F_{N-2}",
               config.tol_axioms, [&] {
                   MomentTable tbl(spec);
                   const ChaosBasis basis = build_chaos_basis(tbl, N);
                   const OperatorSet ops = build_operators(basis, tbl);
                   return check_axioms(ops, N - 2).max();
               });
    runner.add("e_chaos_meixner1",
               "commutator coefficients recover alpha and beta on F_{N-1}",
               config.tol_operator, [&] {
                   MomentTable tbl(spec);
                   const ChaosBasis basis = build_chaos_basis(tbl, N);
                   const OperatorSet ops = build_operators(basis, tbl);
                   const Meixner1Fit fit = check_meixner1(ops, N - 1);
                   double worst = fit.max_residual;
                   for (int i = 0; i < d; ++i)
                       for (int j = 0; j < d; ++j) {
                           for (int k = 0; k < d; ++k)
                               worst = std::max(worst, std::abs(fit.b[i](j, k) -
                                                                spec.alpha(i, j, k)));
                           worst = std::max(worst,
                                            std::abs(fit.c(i, j) - spec.beta(i, j)));
                       }
                   return worst;
               });

    // canonical representative: rotated tensor and its closed-form transform
    const bool case1 = cls.kind == Classification3::Kind::CaseI;
    const SymmetricCubicTensor rotated = rotate_tensor(spec.alpha, cls.U);
    std::function<double(const Vec&)> phi_rot;
    std::function<Vec(const Vec&)> grad_rot;
    std::function<bool(const Point3&)> in_dom;
    if (case1) {
        const double a = cls.a;
        const CanonicalGamma3 g(a);
        phi_rot = [g](const Vec& s) { return laplace_closed_form(g, Point3(s)); };
        grad_rot = [a, phi_rot](const Vec& s) {
            const double q = (1.0 - a * s(2)) * (1.0 - a * s(2)) -
                             a * a * (s(0) * s(0) + s(1) * s(1));
            const double phi = phi_rot(s);
            Vec g3(3);
            g3 << phi * s(0) / q, phi * s(1) / q,
                phi * (s(2) + a * (s(0) * s(0) + s(1) * s(1) - s(2) * s(2))) / q;
            return g3;
        };
        in_dom = [a](const Point3& s) { return in_laplace_domain(a, s); };
    } else {
        const auto comps = cls.components;
        phi_rot = [comps](const Vec& s) {
            double v = 1.0;
            for (int k = 0; k < 3; ++k) v *= marginal_laplace(comps[k], s(k));
            return v;
        };
        grad_rot = [comps, phi_rot](const Vec& s) {
            const double phi = phi_rot(s);
            Vec g3(3);
            for (int k = 0; k < 3; ++k) {
                const double b = comps[k].b;
                g3(k) = phi * s(k) / (1.0 - b * s(k));
            }
            return g3;
        };
        in_dom = [comps](const Point3& s) {
            for (int k = 0; k < 3; ++k)
                if (comps[k].b * s(k) >= 1.0) return false;
            return true;
        };
    }

    {
        const std::vector<Point3> pts = pde_check_points(config.seed, in_dom);
        GenericPde pde;
        pde.tensor = &rotated;
        pde.phi = phi_rot;
        pde.grad = grad_rot;
        PdeResidual res;
        bool ran = false;
        auto ensure = [&] {
            if (!ran) {
                res = run_pde(pde, pts);
                ran = true;
            }
        };
        runner.add("f_pde_closed_form",
                   "gradient system residual, analytic gradient", config.tol_exact,
                   [&] {
                       ensure();
                       return res.closed_form;
                   });
        runner.add("g_pde_finite_difference",
                   "gradient system residual, central differences",
                   config.tol_operator, [&] {
                       ensure();
                       return res.finite_difference;
                   });
    }

    runner.add("h_taylor_vs_closed_form",
               "moment partial sums reproduce the closed-form transform",
               config.tol_symbolic, [&] {
                   MomentTable tbl(spec);
                   const double extent = std::min(0.02, 0.5 * laplace_radius(spec));
                   double worst = 0.0;
                   for (int i = -1; i <= 1; ++i)
                       for (int j = -1; j <= 1; ++j)
                           for (int k = -1; k <= 1; ++k) {
                               Vec s(3);
                               s << extent * i, extent * j, extent * k;
                               const Vec rs = cls.U * s;
                               if (!in_dom(Point3(rs))) continue;
                               const double approx = taylor_laplace(tbl, s, 6);
                               const double tail = taylor_tail_bound(spec, s, 6);
                               worst = std::max(worst, std::abs(approx - phi_rot(rs)) -
                                                           tail);
                           }
                   return std::max(worst, 0.0);
               });

    runner.add("i_quadrature_cone",
               "cone Laplace quadrature matches 2 pi Gamma(2p+2) (t3^2-t1^2-t2^2)^{-p-3/2}",
               config.tol_quadrature, [&] {
                   double worst = 0.0;
                   for (double p : {0.0, 0.5, 1.0, 2.5})
                       for (const Point3& t :
                            {Point3(0, 0, -1), Point3(0.3, 0, -1),
                             Point3(0.2, -0.2, -0.8)}) {
                           const double exact = cone_lt_closed_form(p, t);
                           worst = std::max(
                               worst,
                               std::abs(quadrature_cone_lt(p, t) - exact) / exact);
                       }
                   return worst;
               });
    runner.add("j_quadrature_cylinder",
               "cylinder push-forward quadrature matches 2 pi / sqrt(t3^2-t1^2-t2^2)",
               config.tol_quadrature_cylinder, [&] {
                   double worst = 0.0;
                   for (const Point3& t : {Point3(0, 0, -1), Point3(0.5, 0, -1),
                                           Point3(0, 0, -2), Point3(0.3, 0.4, -1.2)}) {
                       const double exact = cylinder_lt_closed_form(t);
                       worst = std::max(
                           worst, std::abs(quadrature_cylinder_lt(t) - exact) / exact);
                   }
                   return worst;
               });

    // samplers: draw once, reuse for support/moment/laplace checks
    std::vector<Point3> draws;
    std::string sampler_kind;
    if (case1 && cls.a < 1.0) {
        draws = sample_interior(CanonicalGamma3(cls.a), config.draws(), config.seed);
        sampler_kind = "interior";
    } else if (case1) {
        draws = sample_surface(1.0, config.draws(), config.seed);
        sampler_kind = "surface";
    } else {
        draws = sample_case2(cls.components, Mat::Identity(3, 3), config.draws(),
                             config.seed);
        sampler_kind = "case2";
    }

    runner.add("k_sampler_support", "draws honor the support constraint", 0.0, [&] {
        if (sampler_kind == "interior") {
            std::size_t violations = 0;
            for (const Point3& x : draws)
                if (!in_shifted_cone(cls.a, x)) ++violations;
            return static_cast<double>(violations);
        }
        if (sampler_kind == "surface") {
            double worst = 0.0;
            for (const Point3& x : draws) {
                const double lhs = x(0) * x(0) + x(1) * x(1);
                const double rhs = (x(2) + 1.0) * (x(2) + 1.0);
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + rhs));
            }
            return worst > 1e-12 ? 1.0 : 0.0;
        }
        return 0.0; // product law has full support
    });

    runner.add("l_sampler_moments",
               "sample mean/covariance/third moments within the Monte Carlo band",
               config.mc_sigmas, [&] {
                   double worst = 0.0;
                   for (int r = 0; r < 3; ++r) {
                       const MomentStat s =
                           sample_stat(draws, [r](const Point3& x) { return x(r); });
                       worst = std::max(worst, std::abs(s.mean) / s.se);
                   }
                   for (int r = 0; r < 3; ++r)
                       for (int s2 = r; s2 < 3; ++s2) {
                           const MomentStat s = sample_stat(
                               draws, [&](const Point3& x) { return x(r) * x(s2); });
                           const double target = r == s2 ? 1.0 : 0.0;
                           worst = std::max(worst, std::abs(s.mean - target) / s.se);
                       }
                   // draws follow the rotated representative, so third moments
                   // target 2 * rotated alpha
                   for (const auto& [i, j, k] : rotated.canonical_triples()) {
                       const MomentStat s = sample_stat(draws, [&](const Point3& x) {
                           return x(i) * x(j) * x(k);
                       });
                       const double target = 2.0 * rotated(i, j, k);
                       worst = std::max(worst, std::abs(s.mean - target) / s.se);
                   }
                   return worst;
               });

    runner.add("m_sampler_laplace",
               "Monte Carlo Laplace values within the band around the closed form",
               config.mc_sigmas, [&] {
                   const double r = 0.04;
                   const std::vector<Point3> pts = {
                       Point3(r, 0, 0), Point3(0, r, 0), Point3(0, 0, r),
                       Point3(0, 0, -r), Point3(r / 1.7320508, r / 1.7320508,
                                                r / 1.7320508)};
                   double worst = 0.0;
                   for (const Point3& s : pts) {
                       if (!in_dom(s)) continue;
                       const MomentStat st = sample_stat(draws, [&](const Point3& x) {
                           return std::exp(s.dot(x));
                       });
                       worst = std::max(worst, std::abs(st.mean - phi_rot(s)) / st.se);
                   }
                   return worst;
               });

    std::sort(runner.report.checks.begin(), runner.report.checks.end(),
              [](const VerifyCheck& a, const VerifyCheck& b) { return a.name < b.name; });
    return runner.report;
}

} // namespace meixner
