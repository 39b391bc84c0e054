#include "meixner/integrability.hpp"

#include <cmath>
#include <random>

namespace meixner {

void HomogeneousPoly::add(const MultiIndex& m, double v) {
    if (m.degree() != degree_)
        throw DimensionMismatch("monomial degree " + std::to_string(m.degree()) +
                                " does not match polynomial degree " +
                                std::to_string(degree_));
    coeffs_[m] += v;
}

double HomogeneousPoly::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [idx, v] : coeffs_) m = std::max(m, std::abs(v));
    return m;
}

double HomogeneousPoly::evaluate(const Vec& t) const {
    double sum = 0.0;
    for (const auto& [idx, v] : coeffs_) {
        double term = v;
        for (int r = 0; r < dimension_; ++r) term *= std::pow(t(r), idx[r]);
        sum += term;
    }
    return sum;
}

HomogeneousPoly HomogeneousPoly::times_linear_form(const Vec& c) const {
    HomogeneousPoly out(dimension_, degree_ + 1);
    for (const auto& [idx, v] : coeffs_) {
        if (v == 0.0) continue;
        for (int r = 0; r < dimension_; ++r) {
            if (c(r) == 0.0) continue;
            out.add(idx.plus(r), v * c(r));
        }
    }
    return out;
}

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& o) {
    if (o.degree_ != degree_ || o.dimension_ != dimension_)
        throw DimensionMismatch("polynomial shapes disagree in +=");
    for (const auto& [idx, v] : o.coeffs_) coeffs_[idx] += v;
    return *this;
}

Mat commutator(const SymmetricCubicTensor& t, int i, int j) {
    const Mat Ai = slice_matrix(t, i);
    const Mat Aj = slice_matrix(t, j);
    return Ai * Aj - Aj * Ai;
}

HomogeneousPoly obstruction_polynomial(const SymmetricCubicTensor& t, int i, int j,
                                       int n) {
    const int d = t.dimension();
    if (n < 0) throw InvalidParam("obstruction power n must be >= 0");
    const Mat C = commutator(t, i, j);

    // entries of B(t) are linear forms: B(t)(r,s) = sum_k alpha(k,r,s) t_k
    std::vector<Vec> B(d * d, Vec::Zero(d));
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
            for (int k = 0; k < d; ++k) B[r * d + s](k) = t(k, r, s);

    // v = B(t)^n t, entrywise homogeneous of degree n+1
    std::vector<HomogeneousPoly> v;
    v.reserve(d);
    for (int r = 0; r < d; ++r) {
        HomogeneousPoly p(d, 1);
        p.add(MultiIndex(d).plus(r), 1.0);
        v.push_back(p);
    }
    for (int step = 0; step < n; ++step) {
        std::vector<HomogeneousPoly> next;
        next.reserve(d);
        for (int r = 0; r < d; ++r) {
            HomogeneousPoly acc(d, v[0].degree() + 1);
            for (int s = 0; s < d; ++s) acc += v[s].times_linear_form(B[r * d + s]);
            next.push_back(std::move(acc));
        }
        v = std::move(next);
    }

    // (C t)_r is the linear form sum_c C(r,c) t_c; dot with v
    HomogeneousPoly out(d, n + 2);
    for (int r = 0; r < d; ++r) out += v[r].times_linear_form(C.row(r).transpose());
    return out;
}

ObstructionReport necessary_conditions(const SymmetricCubicTensor& t, double tol) {
    const int d = t.dimension();
    ObstructionReport rep;
    rep.tol = tol;
    const double A = t.max_abs();
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int n = 1; n <= d - 1; ++n) {
                ObstructionEntry e;
                e.i = i;
                e.j = j;
                e.n = n;
                e.poly = obstruction_polynomial(t, i, j, n);
                e.max_abs_raw = e.poly.max_abs_coefficient();
                const double scale = A > 0.0 ? std::pow(A, n + 1) : 1.0;
                e.max_abs_normalized = e.max_abs_raw / scale;
                if (e.max_abs_normalized > tol) rep.pass = false;
                rep.entries.push_back(std::move(e));
            }
        }
    }
    return rep;
}

Mat matrix_exponential(const Mat& M) {
    const double norm = M.norm();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Mat S = M * scale;
    Mat term = Mat::Identity(M.rows(), M.cols());
    Mat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * S / static_cast<double>(k);
        sum += term;
        if (term.norm() < 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

double flow_invariance(const SymmetricCubicTensor& t, int i, int j, const Vec& xi,
                       const std::vector<double>& grid) {
    const Mat C = commutator(t, i, j);
    const double f0 = cubic_form(t, xi);
    double worst = 0.0;
    for (double s : grid) {
        const Vec ts = matrix_exponential(s * C) * xi;
        worst = std::max(worst, std::abs(cubic_form(t, ts) - f0));
    }
    return worst;
}

double cubic_matches_third_moments(const SymmetricCubicTensor& t, MomentTable& tbl,
                                   int trials, std::uint64_t seed) {
    const int d = t.dimension();
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Vec v(d);
        for (int r = 0; r < d; ++r) v(r) = normal(gen);
        v.normalize();
        // (1/2) E[(v.X)^3] expanded over degree-3 multi-indices
        double half_third = 0.0;
        for (const MultiIndex& m : multi_indices_of_degree(d, 3)) {
            double term = multinomial(m) * tbl.moment(m);
            for (int r = 0; r < d; ++r) term *= std::pow(v(r), m[r]);
            half_third += term;
        }
        half_third *= 0.5;
        worst = std::max(worst, std::abs(cubic_form(t, v) - half_third));
    }
    return worst;
}

} // namespace meixner
