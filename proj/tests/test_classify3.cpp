#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "meixner/classify3.hpp"

using namespace meixner;

namespace {

Mat random_orthogonal(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Mat A(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) A(r, c) = normal(gen);
    return Eigen::HouseholderQR<Mat>(A).householderQ();
}

SymmetricCubicTensor diagonal_tensor(double b0, double b1, double b2) {
    SymmetricCubicTensor t(3);
    t.set(0, 0, 0, b0);
    t.set(1, 1, 1, b1);
    t.set(2, 2, 2, b2);
    return t;
}

} // namespace

TEST_CASE("canonical tensor classifies as Case I") {
    const Classification3 cls = classify(canonical_tensor(0.5));
    REQUIRE(cls.kind == Classification3::Kind::CaseI);
    CHECK(cls.a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(orthogonality_defect(cls.U) < 1e-10);
    const SymmetricCubicTensor r = rotate_tensor(canonical_tensor(0.5), cls.U);
    const SymmetricCubicTensor expected = canonical_tensor(cls.a);
    for (const auto& [i, j, k] : r.canonical_triples())
        CHECK(r(i, j, k) == doctest::Approx(expected(i, j, k)).epsilon(1e-10));
}

TEST_CASE("round trip through random rotations recovers a") {
    for (double a : {0.2, 0.5, 0.9, 1.0}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Mat Q = random_orthogonal(1000 * seed + 7);
            const SymmetricCubicTensor rotated =
                rotate_tensor(canonical_tensor(a), Q);
            const Classification3 cls = classify(rotated);
            REQUIRE(cls.kind == Classification3::Kind::CaseI);
            CHECK(std::abs(cls.a - a) < 1e-8);
            // the recovered canonical representative is unique even though U
            // is not
            const SymmetricCubicTensor rec = rotate_tensor(rotated, cls.U);
            const SymmetricCubicTensor expected = canonical_tensor(a);
            for (const auto& [i, j, k] : rec.canonical_triples())
                CHECK(std::abs(rec(i, j, k) - expected(i, j, k)) < 1e-8);
        }
    }
}

TEST_CASE("diagonal commuting tensors classify as Case II") {
    const SymmetricCubicTensor t = diagonal_tensor(0.3, 0.0, -0.7);
    const Classification3 cls = classify(t);
    REQUIRE(cls.kind == Classification3::Kind::CaseII);
    CHECK(orthogonality_defect(cls.U) < 1e-10);

    const SymmetricCubicTensor r = rotate_tensor(t, cls.U);
    for (const auto& [i, j, k] : r.canonical_triples())
        if (!(i == j && j == k)) CHECK(std::abs(r(i, j, k)) < 1e-9);

    std::array<double, 3> bs;
    for (int k = 0; k < 3; ++k) {
        bs[k] = cls.components[k].b;
        CHECK(cls.components[k].b == doctest::Approx(r(k, k, k)).epsilon(1e-9));
    }
    std::sort(bs.begin(), bs.end());
    CHECK(bs[0] == doctest::Approx(-0.7));
    CHECK(bs[1] == doctest::Approx(0.0));
    CHECK(bs[2] == doctest::Approx(0.3));
    int gaussians = 0;
    for (const auto& c : cls.components)
        if (c.kind == Marginal1D::Kind::Gaussian) ++gaussians;
    CHECK(gaussians == 1);
}

TEST_CASE("rotated product tensors classify as Case II") {
    const Mat Q = random_orthogonal(55);
    const SymmetricCubicTensor t =
        rotate_tensor(diagonal_tensor(0.4, 0.25, -0.3), Q);
    const Classification3 cls = classify(t);
    REQUIRE(cls.kind == Classification3::Kind::CaseII);
    // b's are defined up to per-component sign (flipping a row of U mirrors
    // that marginal), so compare magnitudes and the full reconstruction
    std::array<double, 3> bs;
    for (int k = 0; k < 3; ++k) bs[k] = std::abs(cls.components[k].b);
    std::sort(bs.begin(), bs.end());
    CHECK(bs[0] == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(bs[1] == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(bs[2] == doctest::Approx(0.4).epsilon(1e-8));

    SymmetricCubicTensor diag(3);
    for (int k = 0; k < 3; ++k) diag.set(k, k, k, cls.components[k].b);
    const SymmetricCubicTensor rebuilt = rotate_tensor(diag, Mat(cls.U.transpose()));
    for (const auto& [i, j, k] : t.canonical_triples())
        CHECK(rebuilt(i, j, k) == doctest::Approx(t(i, j, k)).epsilon(1e-8));
}

TEST_CASE("all-zero tensor is the standard Gaussian product") {
    const Classification3 cls = classify(SymmetricCubicTensor(3));
    REQUIRE(cls.kind == Classification3::Kind::CaseII);
    for (const auto& c : cls.components)
        CHECK(c.kind == Marginal1D::Kind::Gaussian);
}

TEST_CASE("b != a obstruction rejects") {
    const Classification3 cls = classify(canonical_tensor(0.5, 1.0));
    REQUIRE(cls.kind == Classification3::Kind::Rejected);
    CHECK_FALSE(cls.obstructions.pass);
}

TEST_CASE("positivity gate rejects a = 1.2 and accepts a = 1") {
    const Classification3 rejected = classify(canonical_tensor(1.2));
    REQUIRE(rejected.kind == Classification3::Kind::Rejected);
    CHECK_FALSE(rejected.reason.empty());

    const Classification3 boundary = classify(canonical_tensor(1.0));
    REQUIRE(boundary.kind == Classification3::Kind::CaseI);
    CHECK(boundary.a == doctest::Approx(1.0));
}

TEST_CASE("negative a is reflected to the positive representative") {
    const Classification3 cls = classify(canonical_tensor(-0.5));
    REQUIRE(cls.kind == Classification3::Kind::CaseI);
    CHECK(cls.a == doctest::Approx(0.5));
}

TEST_CASE("rejected tensors also fail the necessary conditions") {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        SymmetricCubicTensor t(3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                for (int k = j; k < 3; ++k) t.set(i, j, k, unif(gen));
        const Classification3 cls = classify(t);
        if (cls.kind == Classification3::Kind::Rejected)
            CHECK_FALSE(necessary_conditions(t).pass);
    }
}

TEST_CASE("dimension gate") {
    CHECK_THROWS_AS(classify(SymmetricCubicTensor(2)), DimensionNot3);
}

TEST_CASE("marginal parameters of the normalized 1D laws") {
    SUBCASE("b = 0 is the standard Gaussian") {
        const Marginal1D m = marginal_params_1d(0.0);
        CHECK(m.kind == Marginal1D::Kind::Gaussian);
        CHECK(m.scale == 1.0);
        CHECK(m.shift == 0.0);
    }
    SUBCASE("b = 1 is the centered standard exponential") {
        const Marginal1D m = marginal_params_1d(1.0);
        CHECK(m.kind == Marginal1D::Kind::Gamma);
        CHECK(m.shape == doctest::Approx(1.0));
        CHECK(m.scale == doctest::Approx(1.0));
        CHECK(m.shift == doctest::Approx(-1.0));
    }
    SUBCASE("b = 0.5") {
        const Marginal1D m = marginal_params_1d(0.5);
        CHECK(m.shape == doctest::Approx(4.0));
        CHECK(m.scale == doctest::Approx(0.5));
        CHECK(m.shift == doctest::Approx(-2.0));
    }
    SUBCASE("log-derivative of the transform solves psi' = s/(1 - b s)") {
        for (double b : {0.0, 0.3, 1.0, -0.6}) {
            const Marginal1D m = marginal_params_1d(b);
            for (double s : {-0.2, 0.0, 0.1, 0.4}) {
                if (b * s >= 1.0) continue;
                const double h = 1e-6;
                const double dpsi = (std::log(marginal_laplace(m, s + h)) -
                                     std::log(marginal_laplace(m, s - h))) /
                                    (2.0 * h);
                CHECK(dpsi == doctest::Approx(s / (1.0 - b * s)).epsilon(1e-7));
            }
        }
    }
}
