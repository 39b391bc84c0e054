#ifndef MEIXNER_INTEGRABILITY_HPP
#define MEIXNER_INTEGRABILITY_HPP

#include <unordered_map>
#include <vector>

#include "meixner/moments.hpp"
#include "meixner/multi_index.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

// Homogeneous polynomial in t_1..t_d with real coefficients, stored sparsely
// by exponent multi-index. All stored indices have total degree `degree`.
class HomogeneousPoly {
public:
    HomogeneousPoly(int dimension, int degree)
        : dimension_(dimension), degree_(degree) {}

    int dimension() const { return dimension_; }
    int degree() const { return degree_; }

    double coefficient(const MultiIndex& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? 0.0 : it->second;
    }
    void add(const MultiIndex& m, double v);

    const std::unordered_map<MultiIndex, double, MultiIndexHash>& coefficients() const {
        return coeffs_;
    }

    double max_abs_coefficient() const;
    double evaluate(const Vec& t) const;

    // product with the linear form sum_r c(r) t_r; raises the degree by one
    HomogeneousPoly times_linear_form(const Vec& c) const;

    HomogeneousPoly& operator+=(const HomogeneousPoly& o);

private:
    int dimension_;
    int degree_;
    std::unordered_map<MultiIndex, double, MultiIndexHash> coeffs_;
};

struct ObstructionEntry {
    int i = 0;
    int j = 0;
    int n = 1;
    double max_abs_raw = 0.0;        // largest |coefficient| of the identity
    double max_abs_normalized = 0.0; // raw / max|alpha|^{n+1}
    HomogeneousPoly poly{1, 0};
};

struct ObstructionReport {
    double tol = 1e-9;
    std::vector<ObstructionEntry> entries; // all pairs i<j, n in [1, d-1]
    bool pass = true;                      // every normalized coefficient <= tol
};

// C_{i,j} = A_i A_j - A_j A_i of the slice matrices; skew-symmetric.
Mat commutator(const SymmetricCubicTensor& t, int i, int j);

// The degree-(n+2) polynomial (C_{i,j} t) . (B(t)^n t) with
// B(t) = t_1 A_1 + ... + t_d A_d, expanded exactly over the monomial basis.
HomogeneousPoly obstruction_polynomial(const SymmetricCubicTensor& t, int i, int j,
                                       int n);

// The finite family of necessary integrability conditions: the polynomial
// above vanishes identically for every pair i<j and every n in [1, d-1].
ObstructionReport necessary_conditions(const SymmetricCubicTensor& t,
                                       double tol = 1e-9);

// exp(M) by scaling and squaring with a Taylor core (||M/2^k|| <= 0.5).
Mat matrix_exponential(const Mat& M);

// Max over the grid of |F(exp(s C_{i,j}) xi) - F(xi)|.
double flow_invariance(const SymmetricCubicTensor& t, int i, int j, const Vec& xi,
                       const std::vector<double>& grid);

// Max over `trials` random unit vectors v of
// |cubic_form(t, v) - (1/2) E[(v.X)^3]| with third moments from the table.
double cubic_matches_third_moments(const SymmetricCubicTensor& t, MomentTable& tbl,
                                   int trials, std::uint64_t seed = 7);

} // namespace meixner

#endif
