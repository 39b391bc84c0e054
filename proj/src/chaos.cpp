#include "meixner/chaos.hpp"

#include <cmath>

namespace meixner {

namespace {

int dim_F_impl(const std::vector<int>& dims, int m) {
    int total = 0;
    for (int n = 0; n <= m && n < static_cast<int>(dims.size()); ++n)
        total += dims[n];
    return total;
}

MultiIndex index_sum(const MultiIndex& u, const MultiIndex& v) {
    MultiIndex s(u.dimension());
    for (int r = 0; r < u.dimension(); ++r) s[r] = u[r] + v[r];
    return s;
}

} // namespace

int ChaosBasis::dim_F(int m) const { return dim_F_impl(dims, m); }
int OperatorSet::dim_F(int m) const { return dim_F_impl(dims, m); }

double AxiomReport::max() const {
    double m = minus_minus;
    m = std::max(m, minus_zero);
    m = std::max(m, zero_zero);
    m = std::max(m, zero_plus);
    m = std::max(m, plus_plus);
    m = std::max(m, semi_quantum);
    return m;
}

ChaosBasis build_chaos_basis(MomentTable& tbl, int max_degree) {
    const int d = tbl.spec().dimension();
    const int N = max_degree;
    ChaosBasis basis;
    basis.max_degree = N;
    basis.monomials = multi_indices_up_to(d, N);
    const int M = static_cast<int>(basis.monomials.size());

    // Gram matrix of monomials under the moment inner product
    Mat G(M, M);
    for (int u = 0; u < M; ++u)
        for (int v = u; v < M; ++v)
            G(u, v) = G(v, u) =
                tbl.moment_double(index_sum(basis.monomials[u], basis.monomials[v]));

    basis.vectors = Mat::Zero(M, M);
    basis.degree_of.clear();
    basis.dims.assign(N + 1, 0);
    int built = 0;

    int block_start = 0;
    for (int n = 0; n <= N; ++n) {
        const int block_size =
            static_cast<int>(multi_indices_of_degree(d, n).size());
        // residual covariance of the degree-n monomials after projecting out
        // everything already built (the Schur complement of the Gram block)
        Mat P(built, block_size);
        if (built > 0)
            P = basis.vectors.leftCols(built).transpose() *
                G.middleCols(block_start, block_size);
        Mat S = G.block(block_start, block_start, block_size, block_size);
        if (built > 0) S -= P.transpose() * P;

        Eigen::SelfAdjointEigenSolver<Mat> es(S);
        const Vec lambda = es.eigenvalues(); // ascending
        const double lmax = std::max(lambda.maxCoeff(), 0.0);
        const double cutoff = 1e-12 * std::max(lmax, 1e-300);
        double lmin_kept = 0.0;
        int kept = 0;
        for (int j = block_size - 1; j >= 0; --j) {
            if (lambda(j) <= cutoff) break;
            lmin_kept = lambda(j);
            ++kept;
        }
        if (kept > 0 && lmax / lmin_kept > 1e12)
            throw IllConditioned(
                "degree-" + std::to_string(n) + " Gram block has condition above "
                "1e12 in float mode; use the exact rational mode");

        for (int j = block_size - 1; j >= block_size - kept; --j) {
            Vec coeff = Vec::Zero(M);
            const Vec q = es.eigenvectors().col(j);
            for (int c = 0; c < block_size; ++c)
                coeff(block_start + c) += q(c);
            if (built > 0) coeff -= basis.vectors.leftCols(built) * (P * q);
            basis.vectors.col(built + (block_size - 1 - j)) =
                coeff / std::sqrt(lambda(j));
        }
        built += kept;
        basis.dims[n] = kept;
        for (int j = 0; j < kept; ++j) basis.degree_of.push_back(n);
        block_start += block_size;
    }
    basis.vectors.conservativeResize(M, built);
    return basis;
}

OperatorSet build_operators(const ChaosBasis& basis, MomentTable& tbl) {
    const int d = tbl.spec().dimension();
    const int M = static_cast<int>(basis.monomials.size());
    const int K = static_cast<int>(basis.vectors.cols());

    OperatorSet ops;
    ops.max_degree = basis.max_degree;
    ops.degree_of = basis.degree_of;
    ops.dims = basis.dims;
    ops.X.reserve(d);

    for (int i = 0; i < d; ++i) {
        // T(u,v) = E[X^{u+v+e_i}] so that <X_i e_a, e_b> = b^T T a
        Mat T(M, M);
        for (int u = 0; u < M; ++u)
            for (int v = u; v < M; ++v)
                T(u, v) = T(v, u) = tbl.moment_double(
                    index_sum(basis.monomials[u], basis.monomials[v]).plus(i));
        ops.X.push_back(basis.vectors.transpose() * T * basis.vectors);
    }

    for (int i = 0; i < d; ++i) {
        Mat lower = Mat::Zero(K, K), keep = Mat::Zero(K, K), raise = Mat::Zero(K, K);
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c) {
                if (ops.degree_of[r] < ops.degree_of[c])
                    lower(r, c) = ops.X[i](r, c);
                else if (ops.degree_of[r] == ops.degree_of[c])
                    keep(r, c) = ops.X[i](r, c);
                else
                    raise(r, c) = ops.X[i](r, c);
            }
        ops.U.push_back(lower + 0.5 * keep);
        ops.V.push_back(raise + 0.5 * keep);
        ops.lower.push_back(std::move(lower));
        ops.keep.push_back(std::move(keep));
        ops.raise.push_back(std::move(raise));
    }
    return ops;
}

double off_band_leakage(const OperatorSet& ops) {
    double worst = 0.0;
    const int K = static_cast<int>(ops.degree_of.size());
    for (const Mat& X : ops.X)
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c)
                if (std::abs(ops.degree_of[r] - ops.degree_of[c]) >= 2)
                    worst = std::max(worst, std::abs(X(r, c)));
    return worst;
}

namespace {

double commutator_residual(const Mat& A, const Mat& B, const Mat& rhs, int cols) {
    const Mat lhs = A * B - B * A;
    return (lhs.leftCols(cols) - rhs.leftCols(cols)).norm();
}

} // namespace

AxiomReport check_axioms(const OperatorSet& ops, int m) {
    if (m > ops.max_degree - 2)
        throw InvalidParam("axiom check needs m <= N-2 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);
    const int K = static_cast<int>(ops.degree_of.size());
    const Mat zero = Mat::Zero(K, K);

    AxiomReport rep;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Mat& am_i = ops.lower[i];
            const Mat& am_j = ops.lower[j];
            const Mat& a0_i = ops.keep[i];
            const Mat& a0_j = ops.keep[j];
            const Mat& ap_i = ops.raise[i];
            const Mat& ap_j = ops.raise[j];

            rep.minus_minus = std::max(
                rep.minus_minus, commutator_residual(am_i, am_j, zero, cols));
            rep.plus_plus = std::max(
                rep.plus_plus, commutator_residual(ap_i, ap_j, zero, cols));
            rep.minus_zero = std::max(
                rep.minus_zero,
                commutator_residual(am_i, a0_j, am_j * a0_i - a0_i * am_j, cols));
            rep.zero_plus = std::max(
                rep.zero_plus,
                commutator_residual(a0_i, ap_j, a0_j * ap_i - ap_i * a0_j, cols));
            rep.zero_zero = std::max(
                rep.zero_zero,
                commutator_residual(a0_i, a0_j,
                                    (am_j * ap_i - ap_i * am_j) -
                                        (am_i * ap_j - ap_j * am_i),
                                    cols));
            rep.semi_quantum = std::max(
                rep.semi_quantum,
                commutator_residual(ops.U[i], ops.X[j],
                                    ops.U[j] * ops.X[i] - ops.X[i] * ops.U[j], cols));
        }
    }
    return rep;
}

Meixner1Fit check_meixner1(const OperatorSet& ops, int m) {
    if (m > ops.max_degree - 1)
        throw InvalidParam("n=1 extraction needs m <= N-1 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);
    const int K = static_cast<int>(ops.degree_of.size());

    // regressors: X_1..X_d and I, all restricted to columns of F_m
    std::vector<Mat> reg;
    for (int k = 0; k < d; ++k) reg.push_back(ops.X[k].leftCols(cols));
    reg.push_back(Mat::Identity(K, K).leftCols(cols));

    Mat gram(d + 1, d + 1);
    for (int u = 0; u <= d; ++u)
        for (int v = u; v <= d; ++v)
            gram(u, v) = gram(v, u) = (reg[u].cwiseProduct(reg[v])).sum();
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    if (es.eigenvalues().minCoeff() <=
        1e-12 * std::max(es.eigenvalues().maxCoeff(), 1e-300))
        throw RankDeficientFit(
            "operators X_1..X_d, I are linearly dependent on F_m");
    const Mat gram_inv = es.operatorInverseSqrt() * es.operatorInverseSqrt();

    Meixner1Fit fit;
    fit.b.assign(d, Mat::Zero(d, d));
    fit.c = Mat::Zero(d, d);
    fit.residual = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Mat lhs =
                (ops.U[i] * ops.X[j] - ops.X[j] * ops.U[i]).leftCols(cols);
            Vec rhs(d + 1);
            for (int u = 0; u <= d; ++u)
                rhs(u) = (reg[u].cwiseProduct(lhs)).sum();
            const Vec coef = gram_inv * rhs;
            Mat fitted = Mat::Zero(K, cols);
            for (int u = 0; u <= d; ++u) fitted += coef(u) * reg[u];
            for (int k = 0; k < d; ++k) fit.b[i](j, k) = coef(k);
            fit.c(i, j) = coef(d);
            fit.residual(i, j) = (lhs - fitted).norm();
            fit.max_residual = std::max(fit.max_residual, fit.residual(i, j));
        }
    }
    return fit;
}

Meixner2Fit check_meixner2(const OperatorSet& ops, int m) {
    if (m > ops.max_degree - 2)
        throw InvalidParam("n=2 extraction needs m <= N-2 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);

    std::vector<Mat> reg;
    for (int k = 0; k < d; ++k)
        reg.push_back((ops.X[k] - 2.0 * ops.U[k]).leftCols(cols));
    Mat gram(d, d);
    for (int u = 0; u < d; ++u)
        for (int v = u; v < d; ++v)
            gram(u, v) = gram(v, u) = (reg[u].cwiseProduct(reg[v])).sum();
    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    if (es.eigenvalues().minCoeff() <=
        1e-12 * std::max(es.eigenvalues().maxCoeff(), 1e-300))
        throw RankDeficientFit("operators X_j - 2U_j are linearly dependent on F_m");
    const Mat gram_inv = es.operatorInverseSqrt() * es.operatorInverseSqrt();

    Meixner2Fit fit;
    for (int i = 0; i < d; ++i) {
        for (int i1 = 0; i1 < d; ++i1) {
            const Mat inner = ops.U[i] * ops.X[i1] - ops.X[i1] * ops.U[i];
            for (int i2 = 0; i2 < d; ++i2) {
                const Mat lhs =
                    (inner * ops.X[i2] - ops.X[i2] * inner).leftCols(cols);
                Vec rhs(d);
                for (int u = 0; u < d; ++u)
                    rhs(u) = (reg[u].cwiseProduct(lhs)).sum();
                const Vec coef = gram_inv * rhs;
                Mat fitted = Mat::Zero(lhs.rows(), cols);
                for (int u = 0; u < d; ++u) fitted += coef(u) * reg[u];
                fit.max_abs_coefficient =
                    std::max(fit.max_abs_coefficient, coef.cwiseAbs().maxCoeff());
                fit.max_residual = std::max(fit.max_residual, (lhs - fitted).norm());
            }
        }
    }
    return fit;
}

} // namespace meixner
