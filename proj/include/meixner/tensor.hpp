#ifndef MEIXNER_TENSOR_HPP
#define MEIXNER_TENSOR_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "meixner/errors.hpp"

namespace meixner {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Fully symmetric rank-3 coefficient tensor. Only sorted triples i <= j <= k
// are stored; any permutation of a triple reads the same slot, so symmetry
// holds by construction.
class SymmetricCubicTensor {
public:
    explicit SymmetricCubicTensor(int dimension);

    int dimension() const { return d_; }

    double operator()(int i, int j, int k) const;
    void set(int i, int j, int k, double value);

    // Max |alpha| over all entries.
    double max_abs() const;

    // Distinct sorted triples (i <= j <= k), lexicographic.
    std::vector<std::array<int, 3>> canonical_triples() const;

    // Number of distinct permutations of the triple: 1, 3, or 6.
    static int multiplicity(int i, int j, int k);

    bool operator==(const SymmetricCubicTensor& o) const {
        return d_ == o.d_ && entries_ == o.entries_;
    }

private:
    void check_index(int i, int j, int k) const;
    int rank(int i, int j, int k) const; // canonical slot of sorted triple

    int d_;
    std::vector<double> entries_;
};

// Commutator coefficients of a candidate 1-Meixner vector: [U_i, X_j] =
// sum_k alpha(i,j,k) X_k + beta(i,j) I, plus the mean used for centering.
// In normalized mode beta = I and mean = 0.
struct MeixnerSpec {
    SymmetricCubicTensor alpha;
    Mat beta;
    Vec mean;

    explicit MeixnerSpec(SymmetricCubicTensor a)
        : alpha(std::move(a)),
          beta(Mat::Identity(alpha.dimension(), alpha.dimension())),
          mean(Vec::Zero(alpha.dimension())) {}

    MeixnerSpec(SymmetricCubicTensor a, Mat b, Vec m)
        : alpha(std::move(a)), beta(std::move(b)), mean(std::move(m)) {}

    int dimension() const { return alpha.dimension(); }
    bool is_normalized(double tol = 1e-12) const;
};

struct LccReport {
    bool beta_symmetric = true;
    bool beta_psd = true;
    bool normalized = true;       // beta = I and mean = 0
    bool tensor_symmetric = true; // structural, always true
    std::vector<std::string> violations;

    bool pass() const { return beta_symmetric && beta_psd && normalized; }
};

struct AffineMap {
    Mat weight; // W
    Vec shift;  // s
};

SymmetricCubicTensor tensor_from_entries(
    int dimension, const std::vector<std::tuple<int, int, int, double>>& raw);

// Slice A_k with (A_k)(r,s) = alpha(k,r,s); symmetric by tensor symmetry.
Mat slice_matrix(const SymmetricCubicTensor& t, int k);

// F(v) = sum over all index triples of alpha(i,j,k) v_i v_j v_k.
double cubic_form(const SymmetricCubicTensor& t, const Vec& v);

// Coefficients of the linearly transformed vector UX for orthogonal U:
// alpha'(i,j,k) = sum U(i,p) U(j,q) U(k,r) alpha(p,q,r).
SymmetricCubicTensor rotate_tensor(const SymmetricCubicTensor& t, const Mat& U);

// Spectral norm of U^T U - I.
double orthogonality_defect(const Mat& U);

LccReport validate_lcc(const MeixnerSpec& spec, bool expect_normalized = true);

// E[X_i X_j X_k] = 2 alpha(i,j,k) for a normalized spec.
double third_moment(const SymmetricCubicTensor& t, int i, int j, int k);

// Whitening map: W cov W^T = I, s = -W mean, W symmetric (inverse square
// root via eigendecomposition).
AffineMap standardize(const Vec& mean, const Mat& cov);

// The d=3 one-parameter family with alpha(0,0,2)=alpha(1,1,2)=a and
// alpha(2,2,2)=b (all under permutation symmetry); b defaults to a.
SymmetricCubicTensor canonical_tensor(double a);
SymmetricCubicTensor canonical_tensor(double a, double b);

} // namespace meixner

#endif
