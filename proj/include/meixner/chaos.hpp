#ifndef MEIXNER_CHAOS_HPP
#define MEIXNER_CHAOS_HPP

#include <vector>

#include "meixner/moments.hpp"
#include "meixner/multi_index.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

// Orthonormal degree-graded basis of F_N reconstructed from moments alone:
// column k of `vectors` holds monomial coordinates of a basis vector of
// G_{degree_of[k]} under the inner product <X^u, X^v> = E[X^{u+v}].
struct ChaosBasis {
    int max_degree = 0;
    std::vector<MultiIndex> monomials; // basis of F_N, by degree then lex
    Mat vectors;                       // monomials x chaos columns
    std::vector<int> degree_of;        // per column
    std::vector<int> dims;             // dim G_n per degree

    int dim_F(int m) const; // dim of F_m = dims[0] + ... + dims[m]
};

// Matrices of the multiplication operators on F_N in chaos coordinates and
// their grading blocks: lower/keep/raise partition X by the degree change of
// (row, column), so lower + keep + raise reproduces X entry for entry.
struct OperatorSet {
    int max_degree = 0;
    std::vector<int> degree_of;
    std::vector<int> dims;
    std::vector<Mat> X;     // per variable
    std::vector<Mat> lower; // a^-(i): row degree <  column degree
    std::vector<Mat> keep;  // a^0(i): row degree == column degree
    std::vector<Mat> raise; // a^+(i): row degree >  column degree
    std::vector<Mat> U;     // lower + keep/2
    std::vector<Mat> V;     // raise + keep/2

    int dim_F(int m) const;
};

// Residual Frobenius norms of the five commutation rules plus the
// semi-quantum symmetry [U_i, X_j] = [U_j, X_i], all compositions restricted
// to F_m (requires m <= N-2 so nothing leaks past the truncation).
struct AxiomReport {
    double minus_minus = 0.0; // [a-(i), a-(j)] = 0
    double minus_zero = 0.0;  // [a-(i), a0(j)] = [a-(j), a0(i)]
    double zero_zero = 0.0;   // [a0(i), a0(j)] = [a-(j), a+(i)] - [a-(i), a+(j)]
    double zero_plus = 0.0;   // [a0(i), a+(j)] = [a0(j), a+(i)]
    double plus_plus = 0.0;   // [a+(i), a+(j)] = 0
    double semi_quantum = 0.0;

    double max() const;
};

// Least-squares extraction of the defining coefficients. For n = 1 the
// commutator [U_i, X_j] restricted to F_m is fitted onto span{X_1..X_d, I};
// b should recover alpha(i,j,.) and c should recover beta(i,j).
struct Meixner1Fit {
    std::vector<Mat> b; // b[i](j,k) = fitted coefficient of X_k in [U_i, X_j]
    Mat c;              // c(i,j) = fitted coefficient of I
    Mat residual;       // Frobenius residual per (i,j)
    double max_residual = 0.0;
};

// For n = 2 the double commutator [[U_i, X_i1], X_i2] is fitted onto
// span{X_j - 2 U_j}; for a 1-Meixner vector all coefficients vanish.
struct Meixner2Fit {
    double max_abs_coefficient = 0.0;
    double max_residual = 0.0;
};

ChaosBasis build_chaos_basis(MomentTable& tbl, int max_degree);
OperatorSet build_operators(const ChaosBasis& basis, MomentTable& tbl);

AxiomReport check_axioms(const OperatorSet& ops, int m);
Meixner1Fit check_meixner1(const OperatorSet& ops, int m);
Meixner2Fit check_meixner2(const OperatorSet& ops, int m);

// Largest |entry| of any block P_{G_{n+k}} X_i P_{G_n} with |k| >= 2; zero
// for an exact truncated multiplication operator.
double off_band_leakage(const OperatorSet& ops);

} // namespace meixner

#endif
