#include <doctest.h>

#include <cmath>

#include "meixner/moments.hpp"
#include "meixner/rng.hpp"
#include "meixner/tensor_io.hpp"
#include "meixner/verify.hpp"

using namespace meixner;

namespace {

std::vector<Point3> domain_points(double a, int count, std::uint64_t seed) {
    std::vector<Point3> pts;
    RngStream rng(seed, 0);
    while (static_cast<int>(pts.size()) < count) {
        Point3 s(0.05 * (2 * rng.uniform01() - 1), 0.05 * (2 * rng.uniform01() - 1),
                 0.05 * (2 * rng.uniform01() - 1));
        if (in_laplace_domain(a, s)) pts.push_back(s);
    }
    return pts;
}

const VerifyCheck& check_named(const VerifyReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return c;
    throw std::logic_error("missing check " + name);
}

} // namespace

TEST_CASE("pde residual of the closed-form transform") {
    SUBCASE("zero at the origin") {
        const PdeResidual res = pde_residual(0.5, {Point3::Zero()});
        CHECK(res.closed_form < 1e-15);
        CHECK(res.finite_difference < 1e-10);
    }
    SUBCASE("small at 20 random domain points for a in {0.3, 0.6, 0.9}") {
        for (double a : {0.3, 0.6, 0.9}) {
            const PdeResidual res = pde_residual(a, domain_points(a, 20, 17));
            CHECK(res.closed_form < 1e-12);
            CHECK(res.finite_difference < 1e-7);
        }
    }
    SUBCASE("a tampered exponent is caught") {
        const PdeResidual res =
            pde_residual(0.5, domain_points(0.5, 20, 17), 0.01);
        CHECK(res.closed_form > 1e-3);
        CHECK(res.finite_difference > 1e-3);
    }
    SUBCASE("points outside the domain are rejected") {
        CHECK_THROWS_AS(pde_residual(0.5, {Point3(0, 0, 3)}), OutOfDomain);
    }
}

TEST_CASE("taylor partial sums against the closed form") {
    CHECK(taylor_vs_closed_form(0.5, 6) < 1e-9);
    CHECK(taylor_vs_closed_form(0.9, 6) < 1e-9);
    CHECK(taylor_vs_closed_form(0.5, 0) < 1e-9); // tail bound swallows |phi - 1|
}

TEST_CASE("full suite on the canonical tensor") {
    VerifyConfig config;
    config.profile = VerifyConfig::Profile::Quick;
    const MeixnerSpec spec{canonical_tensor(0.5)};
    const VerifyReport rep = full_suite(spec, config);
    for (const auto& c : rep.checks) {
        INFO(c.name, " observed=", c.observed, " tol=", c.tolerance);
        CHECK_FALSE(c.skipped);
        CHECK(c.pass);
    }
    CHECK(rep.pass());
}

TEST_CASE("full suite on a diagonal (Case II) tensor") {
    VerifyConfig config;
    config.profile = VerifyConfig::Profile::Quick;
    SymmetricCubicTensor t(3);
    t.set(0, 0, 0, 0.5);
    t.set(2, 2, 2, -0.4);
    const VerifyReport rep = full_suite(MeixnerSpec{t}, config);
    for (const auto& c : rep.checks) {
        INFO(c.name, " observed=", c.observed, " tol=", c.tolerance);
        CHECK_FALSE(c.skipped);
        CHECK(c.pass);
    }
}

TEST_CASE("full suite on a rejected tensor skips the downstream checks") {
    VerifyConfig config;
    config.profile = VerifyConfig::Profile::Quick;
    const VerifyReport rep = full_suite(MeixnerSpec{canonical_tensor(0.5, 1.0)}, config);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(check_named(rep, "b_necessary_conditions").pass);
    CHECK_FALSE(check_named(rep, "c_classify").pass);
    CHECK(check_named(rep, "d_chaos_axioms").skipped);
    CHECK(check_named(rep, "l_sampler_moments").skipped);
    CHECK_FALSE(check_named(rep, "l_sampler_moments").skip_reason.empty());
}

TEST_CASE("taylor check is sensitive to a tampered closed form") {
    // the detection floor is the analytic tail bound (~3e-4 on this grid);
    // a relative error above it must flip the corrected deviation
    const MeixnerSpec spec{canonical_tensor(0.5)};
    MomentTable tbl{spec};
    const CanonicalGamma3 g(0.5);
    Vec s(3);
    s << 0.0, 0.0, 0.02;
    const double tampered = 1.001 * laplace_closed_form(g, Point3(s));
    const double dev = std::abs(taylor_laplace(tbl, s, 6) - tampered);
    CHECK(dev - taylor_tail_bound(spec, s, 6) > 1e-4);
    // while the honest value sits far below the floor
    const double honest =
        std::abs(taylor_laplace(tbl, s, 6) - laplace_closed_form(g, Point3(s)));
    CHECK(honest < 1e-9);
}

TEST_CASE("accepted Case I tensors always pass the necessary conditions") {
    RngStream rng(5150, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Mat A(3, 3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = rng.normal();
        const Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ();
        const SymmetricCubicTensor t =
            rotate_tensor(canonical_tensor(0.3 + 0.07 * trial), Q);
        const Classification3 cls = classify(t);
        REQUIRE(cls.kind == Classification3::Kind::CaseI);
        CHECK(necessary_conditions(t).pass);
    }
}

TEST_CASE("reports are deterministic for a fixed seed and config") {
    VerifyConfig config;
    config.profile = VerifyConfig::Profile::Quick;
    config.seed = 1234;
    const MeixnerSpec spec{canonical_tensor(0.5)};
    const std::string first = verify_report_to_json(full_suite(spec, config)).dump();
    const std::string second = verify_report_to_json(full_suite(spec, config)).dump();
    CHECK(first == second);
}

TEST_CASE("checks are ordered by name") {
    VerifyConfig config;
    config.profile = VerifyConfig::Profile::Quick;
    const VerifyReport rep = full_suite(MeixnerSpec{canonical_tensor(0.5, 1.0)}, config);
    for (std::size_t i = 1; i < rep.checks.size(); ++i)
        CHECK(rep.checks[i - 1].name < rep.checks[i].name);
}
