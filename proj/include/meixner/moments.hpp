#ifndef MEIXNER_MOMENTS_HPP
#define MEIXNER_MOMENTS_HPP

#include <unordered_map>
#include <vector>

#include "meixner/multi_index.hpp"
#include "meixner/rational.hpp"
#include "meixner/tensor.hpp"

namespace meixner {

enum class PivotPolicy {
    LowestIndex,  // first coordinate with positive count
    HighestCount, // coordinate with the largest count (lowest index on ties)
    AllAndCompare // every valid pivot; disagreement beyond tol is an error
};

// Joint moments E[X^i] of a centered spec by the commutator recursion
//
//   E[X^i] = sum_{p,r} j_p alpha(w,p,r) E[X^{j - e_p + e_r}]
//          + sum_p    j_p beta(w,p)    E[X^{j - e_p}],
//
// where w is the pivot coordinate with i_w >= 1 and j = i - e_w. Values are
// memoized and filled degree layer by degree layer, so every lookup on the
// right-hand side is already present. Not internally synchronized: confine a
// table to one thread.
template <typename T>
class BasicMomentTable {
public:
    explicit BasicMomentTable(MeixnerSpec spec,
                              PivotPolicy policy = PivotPolicy::LowestIndex,
                              double compare_tol = 1e-9, int degree_cap = 16);

    const MeixnerSpec& spec() const { return spec_; }
    PivotPolicy policy() const { return policy_; }
    int degree_cap() const { return degree_cap_; }

    T moment(const MultiIndex& idx);
    double moment_double(const MultiIndex& idx) {
        return ScalarOps<T>::to_double(moment(idx));
    }

    // Fill every multi-index of total degree <= n.
    void ensure_degree(int n);

    // Max relative disagreement between pivot choices over all indices of
    // total degree <= max_degree. Ignores the configured policy and never
    // throws PivotInconsistency.
    double pivot_disagreement(int max_degree);

private:
    T compute_with_pivot(const MultiIndex& idx, int w) const;
    std::vector<int> valid_pivots(const MultiIndex& idx) const;
    T evaluate(const MultiIndex& idx) const; // policy-dispatched, uses memo

    MeixnerSpec spec_;
    PivotPolicy policy_;
    double compare_tol_;
    int degree_cap_;
    int filled_degree_ = 0;
    std::vector<std::vector<T>> alpha_; // alpha_[w] flattened d x d slice
    std::vector<T> beta_;               // flattened d x d
    std::unordered_map<MultiIndex, T, MultiIndexHash> memo_;
};

using MomentTable = BasicMomentTable<double>;
using RationalMomentTable = BasicMomentTable<Rational>;

// K = max(d*A + B, 1) with A = max|alpha|, B = max|beta|.
double moment_growth_constant(const MeixnerSpec& spec);

// K^{|i|} |i|! upper bound on |E[X^i]|.
double moment_bound(const MeixnerSpec& spec, const MultiIndex& idx);

// R = 1/(2Kd): the Taylor series of the Laplace transform converges
// absolutely for ||t||_inf < R.
double laplace_radius(const MeixnerSpec& spec);

// Partial sum sum_{n<=N} E[(t.X)^n]/n! expanded over multi-indices.
template <typename T>
double taylor_laplace(BasicMomentTable<T>& tbl, const Vec& t, int max_degree);

// Geometric tail bound for the truncation error of taylor_laplace, from the
// moment estimate: sum_{n>N} (||t||_inf / R)^n / (1 - ||t||_inf / R).
double taylor_tail_bound(const MeixnerSpec& spec, const Vec& t, int max_degree);

} // namespace meixner

#endif
