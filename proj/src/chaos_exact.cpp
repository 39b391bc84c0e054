#include "meixner/chaos_exact.hpp"

#include "meixner/errors.hpp"

namespace meixner {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("RatMat product shape mismatch");
    RatMat out(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Rational& v = (*this)(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols_; ++c) {
                if (o(k, c) == 0) continue;
                out(r, c) += v * o(k, c);
            }
        }
    return out;
}

RatMat RatMat::operator+(const RatMat& o) const {
    RatMat out(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) out.data_[i] = data_[i] + o.data_[i];
    return out;
}

RatMat RatMat::operator-(const RatMat& o) const {
    RatMat out(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) out.data_[i] = data_[i] - o.data_[i];
    return out;
}

RatMat RatMat::scaled(const Rational& s) const {
    RatMat out(rows_, cols_);
    for (int i = 0; i < rows_ * cols_; ++i) out.data_[i] = data_[i] * s;
    return out;
}

RatMat RatMat::left_cols(int c) const {
    RatMat out(rows_, c);
    for (int r = 0; r < rows_; ++r)
        for (int j = 0; j < c; ++j) out(r, j) = (*this)(r, j);
    return out;
}

Rational RatMat::max_abs() const {
    Rational m = 0;
    for (const Rational& v : data_) {
        Rational a = ScalarOps<Rational>::abs(v);
        if (a > m) m = a;
    }
    return m;
}

bool RatMat::is_zero() const {
    for (const Rational& v : data_)
        if (!(v == 0)) return false;
    return true;
}

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

int ExactChaosBasis::dim_F(int m) const { return dim_F_impl(dims, m); }
int ExactOperatorSet::dim_F(int m) const { return dim_F_impl(dims, m); }

double ExactAxiomReport::max() const {
    Rational m = minus_minus;
    for (const Rational* v : {&minus_zero, &zero_zero, &zero_plus, &plus_plus,
                              &semi_quantum})
        if (*v > m) m = *v;
    return ScalarOps<Rational>::to_double(m);
}

ExactChaosBasis build_chaos_basis_exact(RationalMomentTable& tbl, int max_degree) {
    const int d = tbl.spec().dimension();
    const int N = max_degree;
    ExactChaosBasis basis;
    basis.max_degree = N;
    basis.monomials = multi_indices_up_to(d, N);
    const int M = static_cast<int>(basis.monomials.size());

    std::vector<std::vector<Rational>> gram(M, std::vector<Rational>(M));
    for (int u = 0; u < M; ++u)
        for (int v = u; v < M; ++v)
            gram[u][v] = gram[v][u] =
                tbl.moment(index_sum(basis.monomials[u], basis.monomials[v]));

    basis.dims.assign(N + 1, 0);
    // g_k = Gram * b_k, kept so projections of later monomials are lookups
    std::vector<std::vector<Rational>> g;

    for (int m = 0; m < M; ++m) {
        const int degree = basis.monomials[m].degree();
        std::vector<Rational> coeff(M);
        coeff[m] = 1;
        Rational norm2 = gram[m][m];
        std::vector<Rational> gm(gram[m]); // Gram * e_m
        for (std::size_t k = 0; k < basis.vectors.size(); ++k) {
            const Rational proj = g[k][m] / basis.norms2[k]; // <e_m, b_k>/|b_k|^2
            if (proj == 0) continue;
            for (int u = 0; u < M; ++u) {
                coeff[u] -= proj * basis.vectors[k][u];
                gm[u] -= proj * g[k][u];
            }
            norm2 -= g[k][m] * proj;
        }
        if (norm2 == 0) continue; // monomial dependent on lower space: rank drop
        if (norm2 < 0)
            throw IllConditioned("negative residual norm in exact mode (moment "
                                 "matrix is not positive semidefinite)");
        basis.vectors.push_back(std::move(coeff));
        basis.norms2.push_back(norm2);
        basis.degree_of.push_back(degree);
        basis.dims[degree] += 1;
        g.push_back(std::move(gm));
    }
    return basis;
}

ExactOperatorSet build_operators_exact(const ExactChaosBasis& basis,
                                       RationalMomentTable& tbl) {
    const int d = tbl.spec().dimension();
    const int M = static_cast<int>(basis.monomials.size());
    const int K = static_cast<int>(basis.vectors.size());

    ExactOperatorSet ops;
    ops.max_degree = basis.max_degree;
    ops.degree_of = basis.degree_of;
    ops.dims = basis.dims;
    ops.norms2 = basis.norms2;

    for (int i = 0; i < d; ++i) {
        std::vector<std::vector<Rational>> T(M, std::vector<Rational>(M));
        for (int u = 0; u < M; ++u)
            for (int v = u; v < M; ++v)
                T[u][v] = T[v][u] = tbl.moment(
                    index_sum(basis.monomials[u], basis.monomials[v]).plus(i));

        // W[:,a] = T * b_a
        std::vector<std::vector<Rational>> W(K, std::vector<Rational>(M));
        for (int a = 0; a < K; ++a)
            for (int u = 0; u < M; ++u) {
                Rational s = 0;
                for (int v = 0; v < M; ++v) {
                    if (basis.vectors[a][v] == 0) continue;
                    s += T[u][v] * basis.vectors[a][v];
                }
                W[a][u] = s;
            }

        RatMat X(K, K);
        for (int b = 0; b < K; ++b)
            for (int a = 0; a < K; ++a) {
                Rational s = 0;
                for (int u = 0; u < M; ++u) {
                    if (basis.vectors[b][u] == 0) continue;
                    s += basis.vectors[b][u] * W[a][u];
                }
                X(b, a) = s / basis.norms2[b];
            }
        ops.X.push_back(std::move(X));
    }

    const Rational half(1, 2);
    for (int i = 0; i < d; ++i) {
        RatMat lower(K, K), keep(K, K), raise(K, K);
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c) {
                const Rational& v = ops.X[i](r, c);
                if (ops.degree_of[r] < ops.degree_of[c])
                    lower(r, c) = v;
                else if (ops.degree_of[r] == ops.degree_of[c])
                    keep(r, c) = v;
                else
                    raise(r, c) = v;
            }
        ops.U.push_back(lower + keep.scaled(half));
        ops.lower.push_back(std::move(lower));
        ops.keep.push_back(std::move(keep));
        ops.raise.push_back(std::move(raise));
    }
    return ops;
}

namespace {

Rational restricted_residual(const RatMat& lhs, const RatMat& rhs, int cols) {
    return (lhs.left_cols(cols) - rhs.left_cols(cols)).max_abs();
}

Rational frobenius_dot(const RatMat& A, const RatMat& B) {
    Rational s = 0;
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            if (A(r, c) == 0 || B(r, c) == 0) continue;
            s += A(r, c) * B(r, c);
        }
    return s;
}

// exact Gaussian elimination with partial (first nonzero) pivoting
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> rhs) {
    const int n = static_cast<int>(A.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!(A[r][col] == 0)) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            throw RankDeficientFit("fit regressors are linearly dependent on F_m");
        std::swap(A[col], A[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < n; ++r) {
            if (A[r][col] == 0) continue;
            const Rational f = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (int r = n - 1; r >= 0; --r) {
        Rational s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

Rational comm_residual(const RatMat& A, const RatMat& B, const RatMat& rhs,
                       int cols) {
    return restricted_residual(A * B - B * A, rhs, cols);
}

void take_max(Rational& target, const Rational& v) {
    if (v > target) target = v;
}

} // namespace

ExactAxiomReport check_axioms_exact(const ExactOperatorSet& ops, int m) {
    if (m > ops.max_degree - 2)
        throw InvalidParam("axiom check needs m <= N-2 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);
    const int K = static_cast<int>(ops.degree_of.size());
    const RatMat zero(K, K);

    ExactAxiomReport rep;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const RatMat& am_i = ops.lower[i];
            const RatMat& am_j = ops.lower[j];
            const RatMat& a0_i = ops.keep[i];
            const RatMat& a0_j = ops.keep[j];
            const RatMat& ap_i = ops.raise[i];
            const RatMat& ap_j = ops.raise[j];

            take_max(rep.minus_minus, comm_residual(am_i, am_j, zero, cols));
            take_max(rep.plus_plus, comm_residual(ap_i, ap_j, zero, cols));
            take_max(rep.minus_zero,
                     comm_residual(am_i, a0_j, am_j * a0_i - a0_i * am_j, cols));
            take_max(rep.zero_plus,
                     comm_residual(a0_i, ap_j, a0_j * ap_i - ap_i * a0_j, cols));
            take_max(rep.zero_zero,
                     comm_residual(a0_i, a0_j,
                                   (am_j * ap_i - ap_i * am_j) -
                                       (am_i * ap_j - ap_j * am_i),
                                   cols));
            take_max(rep.semi_quantum,
                     comm_residual(ops.U[i], ops.X[j],
                                   ops.U[j] * ops.X[i] - ops.X[i] * ops.U[j], cols));
        }
    return rep;
}

ExactMeixner1Fit check_meixner1_exact(const ExactOperatorSet& ops, int m) {
    if (m > ops.max_degree - 1)
        throw InvalidParam("n=1 extraction needs m <= N-1 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);
    const int K = static_cast<int>(ops.degree_of.size());

    std::vector<RatMat> reg;
    for (int k = 0; k < d; ++k) reg.push_back(ops.X[k].left_cols(cols));
    reg.push_back(RatMat::identity(K).left_cols(cols));

    const int n = d + 1;
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    for (int u = 0; u < n; ++u)
        for (int v = u; v < n; ++v)
            gram[u][v] = gram[v][u] = frobenius_dot(reg[u], reg[v]);

    ExactMeixner1Fit fit;
    fit.b.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
    fit.c.assign(d, std::vector<Rational>(d));
    fit.max_residual2 = 0;

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const RatMat lhs =
                (ops.U[i] * ops.X[j] - ops.X[j] * ops.U[i]).left_cols(cols);
            std::vector<Rational> rhs(n);
            for (int u = 0; u < n; ++u) rhs[u] = frobenius_dot(reg[u], lhs);
            const std::vector<Rational> coef = solve_rational(gram, rhs);

            RatMat fitted(K, cols);
            for (int u = 0; u < n; ++u) {
                if (coef[u] == 0) continue;
                fitted = fitted + reg[u].scaled(coef[u]);
            }
            const RatMat diff = lhs - fitted;
            const Rational res2 = frobenius_dot(diff, diff);
            if (res2 > fit.max_residual2) fit.max_residual2 = res2;
            for (int k = 0; k < d; ++k) fit.b[i][j][k] = coef[k];
            fit.c[i][j] = coef[d];
        }
    return fit;
}

ExactMeixner2Fit check_meixner2_exact(const ExactOperatorSet& ops, int m) {
    if (m > ops.max_degree - 2)
        throw InvalidParam("n=2 extraction needs m <= N-2 to stay truncation-exact");
    const int d = static_cast<int>(ops.X.size());
    const int cols = ops.dim_F(m);
    const int K = static_cast<int>(ops.degree_of.size());
    const Rational two(2);

    std::vector<RatMat> reg;
    for (int k = 0; k < d; ++k)
        reg.push_back((ops.X[k] - ops.U[k].scaled(two)).left_cols(cols));
    std::vector<std::vector<Rational>> gram(d, std::vector<Rational>(d));
    for (int u = 0; u < d; ++u)
        for (int v = u; v < d; ++v)
            gram[u][v] = gram[v][u] = frobenius_dot(reg[u], reg[v]);

    ExactMeixner2Fit fit;
    fit.max_abs_coefficient = 0;
    fit.max_residual2 = 0;
    for (int i = 0; i < d; ++i)
        for (int i1 = 0; i1 < d; ++i1) {
            const RatMat inner = ops.U[i] * ops.X[i1] - ops.X[i1] * ops.U[i];
            for (int i2 = 0; i2 < d; ++i2) {
                const RatMat lhs =
                    (inner * ops.X[i2] - ops.X[i2] * inner).left_cols(cols);
                std::vector<Rational> rhs(d);
                for (int u = 0; u < d; ++u) rhs[u] = frobenius_dot(reg[u], lhs);
                const std::vector<Rational> coef = solve_rational(gram, rhs);
                RatMat fitted(K, cols);
                for (int u = 0; u < d; ++u) {
                    if (coef[u] == 0) continue;
                    fitted = fitted + reg[u].scaled(coef[u]);
                    take_max(fit.max_abs_coefficient,
                             ScalarOps<Rational>::abs(coef[u]));
                }
                const RatMat diff = lhs - fitted;
                const Rational res2 = frobenius_dot(diff, diff);
                if (res2 > fit.max_residual2) fit.max_residual2 = res2;
            }
        }
    return fit;
}

Rational duality_defect_exact(const ExactOperatorSet& ops) {
    // <a+(i) e_a, e_b> = raise(b,a) |e_b|^2 must equal
    // <e_a, a-(i) e_b> = lower(a,b) |e_a|^2, for degrees within the
    // truncation-exact region
    Rational worst = 0;
    const int K = static_cast<int>(ops.degree_of.size());
    for (std::size_t i = 0; i < ops.X.size(); ++i) {
        for (int b = 0; b < K; ++b)
            for (int a = 0; a < K; ++a) {
                if (ops.degree_of[a] > ops.max_degree - 1 ||
                    ops.degree_of[b] > ops.max_degree - 1)
                    continue;
                const Rational lhs = ops.raise[i](b, a) * ops.norms2[b];
                const Rational rhs = ops.lower[i](a, b) * ops.norms2[a];
                take_max(worst, ScalarOps<Rational>::abs(lhs - rhs));
            }
    }
    return worst;
}

Rational off_band_leakage_exact(const ExactOperatorSet& ops) {
    Rational worst = 0;
    const int K = static_cast<int>(ops.degree_of.size());
    for (const RatMat& X : ops.X)
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c)
                if (std::abs(ops.degree_of[r] - ops.degree_of[c]) >= 2)
                    take_max(worst, ScalarOps<Rational>::abs(X(r, c)));
    return worst;
}

} // namespace meixner
