#ifndef MEIXNER_CHAOS_EXACT_HPP
#define MEIXNER_CHAOS_EXACT_HPP

#include <vector>

#include "meixner/moments.hpp"
#include "meixner/multi_index.hpp"
#include "meixner/rational.hpp"

namespace meixner {

// Dense matrix over the exact rational scalar; just enough algebra for the
// operator checks.
class RatMat {
public:
    RatMat() = default;
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

    static RatMat identity(int n);
    RatMat operator*(const RatMat& o) const;
    RatMat operator+(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    RatMat scaled(const Rational& s) const;
    RatMat left_cols(int c) const;
    Rational max_abs() const;
    bool is_zero() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

// Exact counterpart of the chaos basis: per-degree Gram-Schmidt over the
// rational moment inner product. Vectors are orthogonal but not normalized
// (normalizing needs square roots); squared norms are carried instead.
struct ExactChaosBasis {
    int max_degree = 0;
    std::vector<MultiIndex> monomials;
    std::vector<std::vector<Rational>> vectors; // per basis vector, monomial coords
    std::vector<Rational> norms2;
    std::vector<int> degree_of;
    std::vector<int> dims;

    int dim_F(int m) const;
};

// Operator matrices over the exact basis. The grading split and the algebra
// of compositions are basis-independent, so commutator identities that hold
// for the law hold exactly here.
struct ExactOperatorSet {
    int max_degree = 0;
    std::vector<int> degree_of;
    std::vector<int> dims;
    std::vector<Rational> norms2;
    std::vector<RatMat> X;
    std::vector<RatMat> lower, keep, raise;
    std::vector<RatMat> U;

    int dim_F(int m) const;
};

struct ExactAxiomReport {
    Rational minus_minus, minus_zero, zero_zero, zero_plus, plus_plus, semi_quantum;

    bool all_zero() const {
        return minus_minus == 0 && minus_zero == 0 && zero_zero == 0 &&
               zero_plus == 0 && plus_plus == 0 && semi_quantum == 0;
    }
    double max() const;
};

struct ExactMeixner1Fit {
    std::vector<std::vector<std::vector<Rational>>> b; // [i][j][k]
    std::vector<std::vector<Rational>> c;              // [i][j]
    Rational max_residual2;                            // squared Frobenius

    bool exact_fit() const { return max_residual2 == 0; }
};

ExactChaosBasis build_chaos_basis_exact(RationalMomentTable& tbl, int max_degree);
ExactOperatorSet build_operators_exact(const ExactChaosBasis& basis,
                                       RationalMomentTable& tbl);

struct ExactMeixner2Fit {
    Rational max_abs_coefficient;
    Rational max_residual2;

    bool exact_fit() const { return max_residual2 == 0; }
};

ExactAxiomReport check_axioms_exact(const ExactOperatorSet& ops, int m);
ExactMeixner1Fit check_meixner1_exact(const ExactOperatorSet& ops, int m);
ExactMeixner2Fit check_meixner2_exact(const ExactOperatorSet& ops, int m);

// Exact duality defect: max |<a+(i) e_a, e_b> - <e_a, a-(i) e_b>| over the
// truncation-exact region (rows and columns of degree <= N-1).
Rational duality_defect_exact(const ExactOperatorSet& ops);

// Max |entry| over blocks with |row degree - column degree| >= 2.
Rational off_band_leakage_exact(const ExactOperatorSet& ops);

} // namespace meixner

#endif
