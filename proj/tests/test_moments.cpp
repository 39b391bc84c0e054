#include <doctest.h>

#include <cmath>

#include "meixner/moments.hpp"

using namespace meixner;

namespace {

// Independent oracle for the third-coordinate marginal of the canonical
// family: X3 = a G - 1/a with G ~ Gamma(1/a^2, 1), so
// E[X3^n] = sum_i C(n,i) a^i (-1/a)^{n-i} E[G^i] with E[G^i] rising factorial.
double marginal_moment_oracle(double a, int n) {
    const double k = 1.0 / (a * a);
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        double rising = 1.0;
        for (int j = 0; j < i; ++j) rising *= k + j;
        double binom = 1.0;
        for (int j = 0; j < i; ++j) binom = binom * (n - j) / (j + 1);
        sum += binom * std::pow(a, i) * std::pow(-1.0 / a, n - i) * rising;
    }
    return sum;
}

MultiIndex e3_power(int n) { return MultiIndex{0, 0, n}; }

} // namespace

TEST_CASE("moment recursion base cases") {
    MomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}};
    CHECK(tbl.moment(MultiIndex{0, 0, 0}) == 1.0);
    for (int r = 0; r < 3; ++r) CHECK(tbl.moment(MultiIndex(3).plus(r)) == 0.0);
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
            CHECK(tbl.moment(MultiIndex(3).plus(r).plus(s)) ==
                  doctest::Approx(r == s ? 1.0 : 0.0).epsilon(1e-14));
}

TEST_CASE("third moments equal 2 alpha for every triple") {
    const double a = 0.5;
    const SymmetricCubicTensor t = canonical_tensor(a);
    MomentTable tbl{MeixnerSpec{t}};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            for (int k = j; k < 3; ++k) {
                const MultiIndex idx = MultiIndex(3).plus(i).plus(j).plus(k);
                CHECK(tbl.moment(idx) ==
                      doctest::Approx(2.0 * t(i, j, k)).epsilon(1e-13));
            }
    CHECK(tbl.moment(e3_power(3)) == doctest::Approx(2 * a));
}

TEST_CASE("marginal moments match the shifted-Gamma oracle") {
    for (double a : {0.25, 0.5, 0.75}) {
        MomentTable tbl{MeixnerSpec{canonical_tensor(a)}};
        for (int n = 0; n <= 8; ++n) {
            const double expected = marginal_moment_oracle(a, n);
            CHECK(tbl.moment(e3_power(n)) ==
                  doctest::Approx(expected).epsilon(1e-11));
        }
    }
    // frozen worked value: E[X3^4] = 3 + 6 a^2 = 4.5 at a = 0.5
    MomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}};
    CHECK(marginal_moment_oracle(0.5, 4) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK(tbl.moment(e3_power(4)) == doctest::Approx(4.5).epsilon(1e-13));
}

TEST_CASE("pivot policies agree on the canonical family") {
    for (auto policy : {PivotPolicy::LowestIndex, PivotPolicy::HighestCount,
                        PivotPolicy::AllAndCompare}) {
        MomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}, policy};
        CHECK(tbl.moment(e3_power(6)) ==
              doctest::Approx(marginal_moment_oracle(0.5, 6)).epsilon(1e-11));
    }
    MomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}};
    CHECK(tbl.pivot_disagreement(10) < 1e-9);
}

TEST_CASE("tampered family b = 2a is pivot-inconsistent at degree >= 4") {
    const MeixnerSpec spec{canonical_tensor(0.5, 1.0)};
    MomentTable probe{spec};
    CHECK(probe.pivot_disagreement(3) < 1e-12);
    // first disagreement shows at degree 5 and is far above threshold
    CHECK(probe.pivot_disagreement(6) > 1e-3);

    MomentTable strict{spec, PivotPolicy::AllAndCompare};
    CHECK_THROWS_AS(strict.ensure_degree(6), PivotInconsistency);
}

TEST_CASE("permutation equivariance") {
    const SymmetricCubicTensor t = canonical_tensor(0.4);
    // X' = P X with P the cyclic permutation e0->e1->e2->e0
    Mat P = Mat::Zero(3, 3);
    P(0, 1) = P(1, 2) = P(2, 0) = 1.0;
    const SymmetricCubicTensor tp = rotate_tensor(t, P);
    MomentTable tbl{MeixnerSpec{t}};
    MomentTable tblp{MeixnerSpec{tp}};
    for (const MultiIndex& m : multi_indices_up_to(3, 6)) {
        // X'_i = X_{perm(i)} with perm = (1,2,0); E[X'^m] = E[X^{m o perm}]
        MultiIndex permuted(3);
        permuted[1] = m[0];
        permuted[2] = m[1];
        permuted[0] = m[2];
        CHECK(tblp.moment(m) ==
              doctest::Approx(tbl.moment(permuted)).epsilon(1e-10));
    }
}

TEST_CASE("moment bound") {
    const MeixnerSpec canonical{canonical_tensor(0.5)};
    SUBCASE("worked values") {
        CHECK(moment_growth_constant(canonical) == 2.5);
        CHECK(moment_bound(canonical, MultiIndex{1, 1, 0}) == doctest::Approx(12.5));
        const MeixnerSpec zero{SymmetricCubicTensor(3)};
        CHECK(moment_bound(zero, MultiIndex{1, 1, 1}) == doctest::Approx(6.0));
        CHECK(moment_bound(canonical, MultiIndex{0, 0, 0}) == 1.0);
    }
    SUBCASE("bounds every moment up to degree 10") {
        MomentTable tbl{canonical};
        for (const MultiIndex& m : multi_indices_up_to(3, 10))
            CHECK(std::abs(tbl.moment(m)) <= moment_bound(canonical, m));
    }
}

TEST_CASE("laplace radius") {
    CHECK(laplace_radius(MeixnerSpec{canonical_tensor(0.5)}) ==
          doctest::Approx(1.0 / 15.0));
    CHECK(laplace_radius(MeixnerSpec{SymmetricCubicTensor(3)}) ==
          doctest::Approx(1.0 / 6.0));
    CHECK(laplace_radius(MeixnerSpec{SymmetricCubicTensor(1)}) ==
          doctest::Approx(0.5));
}

TEST_CASE("taylor partial sums of the Laplace transform") {
    MomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}};
    SUBCASE("value 1 at the origin") {
        CHECK(taylor_laplace(tbl, Vec::Zero(3), 0) == 1.0);
        CHECK(taylor_laplace(tbl, Vec::Zero(3), 8) == 1.0);
    }
    SUBCASE("marginal direction matches e^{-s/a} (1-as)^{-1/a^2}") {
        Vec s(3);
        s << 0, 0, 0.05;
        const double closed = std::exp(-0.1) * std::pow(1.0 - 0.025, -4.0);
        CHECK(taylor_laplace(tbl, s, 6) == doctest::Approx(closed).epsilon(1e-6));
    }
    SUBCASE("diagonal direction within 1e-7 of the closed form") {
        Vec s(3);
        s << 0.03, 0.03, 0.03;
        const double a = 0.5;
        const double q = (1.0 - a * s(2)) * (1.0 - a * s(2)) -
                         a * a * (s(0) * s(0) + s(1) * s(1));
        const double closed = std::exp(-s(2) / a) * std::pow(q, -2.0);
        CHECK(taylor_laplace(tbl, s, 8) == doctest::Approx(closed).epsilon(1e-7));
    }
}

TEST_CASE("degree cap is enforced with explicit override") {
    MomentTable capped{MeixnerSpec{canonical_tensor(0.5)}, PivotPolicy::LowestIndex,
                       1e-9, 4};
    CHECK_THROWS_AS(capped.moment(e3_power(5)), InvalidParam);
    MomentTable raised{MeixnerSpec{canonical_tensor(0.5)}, PivotPolicy::LowestIndex,
                       1e-9, 20};
    CHECK(std::isfinite(raised.moment(e3_power(18))));
}

TEST_CASE("rational mode is exact") {
    RationalMomentTable tbl{MeixnerSpec{canonical_tensor(0.5)}};
    SUBCASE("third moments are exactly 2 alpha") {
        CHECK(tbl.moment(MultiIndex{0, 0, 3}) == Rational(1));
        CHECK(tbl.moment(MultiIndex{1, 1, 1}) == Rational(0));
        CHECK(tbl.moment(MultiIndex{2, 0, 1}) == Rational(1));
    }
    SUBCASE("fourth marginal moment is exactly 9/2") {
        CHECK(tbl.moment(MultiIndex{0, 0, 4}) == Rational(9, 2));
    }
    SUBCASE("pivot choices coincide exactly for a valid tensor") {
        RationalMomentTable other{MeixnerSpec{canonical_tensor(0.5)},
                                  PivotPolicy::HighestCount};
        for (const MultiIndex& m : multi_indices_up_to(3, 8))
            CHECK(tbl.moment(m) == other.moment(m));
    }
}

TEST_CASE("recursion requires a centered spec") {
    Vec mean(3);
    mean << 0.1, 0, 0;
    const MeixnerSpec spec{canonical_tensor(0.5), Mat::Identity(3, 3), mean};
    CHECK_THROWS_AS(MomentTable{spec}, InvalidParam);
}
