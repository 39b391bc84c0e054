#include "meixner/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace meixner {

namespace {

inline std::array<int, 3> sorted(int i, int j, int k) {
    std::array<int, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    return t;
}

inline int tri(int n) { return n * (n + 1) / 2; }
inline int tet(int n) { return n * (n + 1) * (n + 2) / 6; }

} // namespace

SymmetricCubicTensor::SymmetricCubicTensor(int dimension) : d_(dimension) {
    if (dimension <= 0)
        throw DimensionMismatch("tensor dimension must be positive, got " +
                                std::to_string(dimension));
    entries_.assign(tet(d_), 0.0);
}

void SymmetricCubicTensor::check_index(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i >= d_ || j >= d_ || k >= d_)
        throw IndexOutOfRange("tensor index (" + std::to_string(i) + "," +
                              std::to_string(j) + "," + std::to_string(k) +
                              ") out of range for dimension " + std::to_string(d_));
}

int SymmetricCubicTensor::rank(int i, int j, int k) const {
    // rank of the sorted triple i <= j <= k among all sorted triples over
    // {0..d-1}, lexicographic
    const auto [a, b, c] = sorted(i, j, k);
    return (tet(d_) - tet(d_ - a)) + (tri(d_ - a) - tri(d_ - b)) + (c - b);
}

double SymmetricCubicTensor::operator()(int i, int j, int k) const {
    check_index(i, j, k);
    return entries_[rank(i, j, k)];
}

void SymmetricCubicTensor::set(int i, int j, int k, double value) {
    check_index(i, j, k);
    entries_[rank(i, j, k)] = value;
}

double SymmetricCubicTensor::max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<std::array<int, 3>> SymmetricCubicTensor::canonical_triples() const {
    std::vector<std::array<int, 3>> out;
    out.reserve(entries_.size());
    for (int i = 0; i < d_; ++i)
        for (int j = i; j < d_; ++j)
            for (int k = j; k < d_; ++k) out.push_back({i, j, k});
    return out;
}

int SymmetricCubicTensor::multiplicity(int i, int j, int k) {
    if (i == j && j == k) return 1;
    if (i == j || j == k || i == k) return 3;
    return 6;
}

bool MeixnerSpec::is_normalized(double tol) const {
    const int d = dimension();
    return (beta - Mat::Identity(d, d)).cwiseAbs().maxCoeff() <= tol &&
           mean.cwiseAbs().maxCoeff() <= tol;
}

SymmetricCubicTensor tensor_from_entries(
    int dimension, const std::vector<std::tuple<int, int, int, double>>& raw) {
    SymmetricCubicTensor t(dimension);
    std::vector<bool> seen(dimension * (dimension + 1) * (dimension + 2) / 6, false);
    std::vector<std::array<int, 3>> triples = t.canonical_triples();
    // map from canonical triple to its position for the `seen` bookkeeping
    auto pos_of = [&](int i, int j, int k) {
        std::array<int, 3> s{i, j, k};
        std::sort(s.begin(), s.end());
        return static_cast<int>(std::lower_bound(triples.begin(), triples.end(), s) -
                                triples.begin());
    };
    for (const auto& [i, j, k, v] : raw) {
        const double existing = t(i, j, k); // bounds-checked here
        const int pos = pos_of(i, j, k);
        if (seen[pos]) {
            const double scale = std::max({1.0, std::abs(existing), std::abs(v)});
            if (std::abs(existing - v) > 1e-12 * scale)
                throw ConflictingEntry(
                    "permutation-equivalent entries disagree at (" + std::to_string(i) +
                    "," + std::to_string(j) + "," + std::to_string(k) + "): " +
                    std::to_string(existing) + " vs " + std::to_string(v));
            continue;
        }
        seen[pos] = true;
        t.set(i, j, k, v);
    }
    return t;
}

Mat slice_matrix(const SymmetricCubicTensor& t, int k) {
    const int d = t.dimension();
    if (k < 0 || k >= d)
        throw IndexOutOfRange("slice index " + std::to_string(k) +
                              " out of range for dimension " + std::to_string(d));
    Mat A(d, d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) A(r, s) = t(k, r, s);
    return A;
}

double cubic_form(const SymmetricCubicTensor& t, const Vec& v) {
    const int d = t.dimension();
    if (v.size() != d)
        throw DimensionMismatch("cubic_form: vector size " + std::to_string(v.size()) +
                                " vs tensor dimension " + std::to_string(d));
    double f = 0.0;
    for (const auto& [i, j, k] : t.canonical_triples()) {
        const double a = t(i, j, k);
        if (a == 0.0) continue;
        f += SymmetricCubicTensor::multiplicity(i, j, k) * a * v(i) * v(j) * v(k);
    }
    return f;
}

double orthogonality_defect(const Mat& U) {
    const Mat M = U.transpose() * U - Mat::Identity(U.cols(), U.cols());
    // M is symmetric, so the spectral norm is the largest |eigenvalue|
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

SymmetricCubicTensor rotate_tensor(const SymmetricCubicTensor& t, const Mat& U) {
    const int d = t.dimension();
    if (U.rows() != d || U.cols() != d)
        throw DimensionMismatch("rotate_tensor: matrix is " + std::to_string(U.rows()) +
                                "x" + std::to_string(U.cols()) + ", tensor dimension " +
                                std::to_string(d));
    if (orthogonality_defect(U) > 1e-10)
        throw NotOrthogonal("rotate_tensor: U^T U deviates from identity beyond 1e-10");

    // contract one slot at a time
    auto at = [&](const std::vector<double>& full, int i, int j, int k) {
        return full[(i * d + j) * d + k];
    };
    std::vector<double> cur(d * d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) cur[(i * d + j) * d + k] = t(i, j, k);

    for (int slot = 0; slot < 3; ++slot) {
        std::vector<double> next(d * d * d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) {
                    double s = 0.0;
                    for (int p = 0; p < d; ++p) {
                        // contract the leading slot, then rotate it to the back so
                        // three passes touch all slots
                        s += U(i, p) * at(cur, p, j, k);
                    }
                    next[(j * d + k) * d + i] = s;
                }
        cur = std::move(next);
    }

    SymmetricCubicTensor out(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = j; k < d; ++k) out.set(i, j, k, at(cur, i, j, k));
    return out;
}

LccReport validate_lcc(const MeixnerSpec& spec, bool expect_normalized) {
    LccReport rep;
    const int d = spec.dimension();
    const double scale = std::max(1.0, spec.beta.cwiseAbs().maxCoeff());

    if ((spec.beta - spec.beta.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        rep.beta_symmetric = false;
        rep.violations.push_back("beta is not symmetric");
    }
    if (rep.beta_symmetric) {
        Eigen::SelfAdjointEigenSolver<Mat> es(spec.beta);
        if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, spec.beta.trace())) {
            rep.beta_psd = false;
            rep.violations.push_back("beta is not positive semidefinite");
        }
    } else {
        rep.beta_psd = false;
        rep.violations.push_back("beta PSD check skipped (asymmetric)");
    }
    if (expect_normalized) {
        if ((spec.beta - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            rep.normalized = false;
            rep.violations.push_back("normalized mode requires beta = identity");
        }
        if (spec.mean.cwiseAbs().maxCoeff() > 1e-12) {
            rep.normalized = false;
            rep.violations.push_back("normalized mode requires mean = 0");
        }
    }
    return rep;
}

double third_moment(const SymmetricCubicTensor& t, int i, int j, int k) {
    return 2.0 * t(i, j, k);
}

AffineMap standardize(const Vec& mean, const Mat& cov) {
    const int d = static_cast<int>(cov.rows());
    if (cov.cols() != d || mean.size() != d)
        throw DimensionMismatch("standardize: mean/cov dimensions disagree");
    Eigen::SelfAdjointEigenSolver<Mat> es(cov);
    const Vec lambda = es.eigenvalues();
    if (lambda.minCoeff() < 1e-12 * std::max(1.0, cov.trace()))
        throw SingularCovariance("covariance is numerically singular (degenerate vector)");
    const Vec inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
    AffineMap map;
    map.weight = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
    map.shift = -map.weight * mean;
    return map;
}

SymmetricCubicTensor canonical_tensor(double a) { return canonical_tensor(a, a); }

SymmetricCubicTensor canonical_tensor(double a, double b) {
    SymmetricCubicTensor t(3);
    t.set(0, 0, 2, a);
    t.set(1, 1, 2, a);
    t.set(2, 2, 2, b);
    return t;
}

} // namespace meixner
