#include "meixner/moments.hpp"

#include <cmath>
#include <limits>

namespace meixner {

template <typename T>
BasicMomentTable<T>::BasicMomentTable(MeixnerSpec spec, PivotPolicy policy,
                                      double compare_tol, int degree_cap)
    : spec_(std::move(spec)), policy_(policy), compare_tol_(compare_tol),
      degree_cap_(degree_cap) {
    const int d = spec_.dimension();
    if (spec_.mean.cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidParam("moment recursion requires a centered spec (mean = 0)");
    if ((spec_.beta - spec_.beta.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, spec_.beta.cwiseAbs().maxCoeff()))
        throw InvalidParam("moment recursion requires symmetric beta");

    alpha_.resize(d);
    for (int w = 0; w < d; ++w) {
        alpha_[w].resize(d * d);
        for (int p = 0; p < d; ++p)
            for (int r = 0; r < d; ++r)
                alpha_[w][p * d + r] = ScalarOps<T>::from_double(spec_.alpha(w, p, r));
    }
    beta_.resize(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            beta_[i * d + j] = ScalarOps<T>::from_double(spec_.beta(i, j));

    memo_.emplace(MultiIndex(d), ScalarOps<T>::from_double(1.0));
}

template <typename T>
std::vector<int> BasicMomentTable<T>::valid_pivots(const MultiIndex& idx) const {
    std::vector<int> ws;
    for (int r = 0; r < idx.dimension(); ++r)
        if (idx[r] >= 1) ws.push_back(r);
    return ws;
}

template <typename T>
T BasicMomentTable<T>::compute_with_pivot(const MultiIndex& idx, int w) const {
    const int d = spec_.dimension();
    const MultiIndex j = idx.minus(w);
    T sum = ScalarOps<T>::from_double(0.0);
    for (int p = 0; p < d; ++p) {
        if (j[p] < 1) continue;
        const MultiIndex jp = j.minus(p);
        const T jp_count = ScalarOps<T>::from_double(static_cast<double>(j[p]));
        for (int r = 0; r < d; ++r) {
            const T& a = alpha_[w][p * d + r];
            if (a == 0) continue;
            sum += jp_count * a * memo_.at(jp.plus(r));
        }
        const T& b = beta_[w * d + p];
        if (!(b == 0)) sum += jp_count * b * memo_.at(jp);
    }
    return sum;
}

template <typename T>
T BasicMomentTable<T>::evaluate(const MultiIndex& idx) const {
    const std::vector<int> ws = valid_pivots(idx);
    switch (policy_) {
    case PivotPolicy::LowestIndex:
        return compute_with_pivot(idx, ws.front());
    case PivotPolicy::HighestCount: {
        int best = ws.front();
        for (int w : ws)
            if (idx[w] > idx[best]) best = w;
        return compute_with_pivot(idx, best);
    }
    case PivotPolicy::AllAndCompare: {
        T first = compute_with_pivot(idx, ws.front());
        for (std::size_t i = 1; i < ws.size(); ++i) {
            T other = compute_with_pivot(idx, ws[i]);
            const double a = ScalarOps<T>::to_double(first);
            const double b = ScalarOps<T>::to_double(other);
            const double scale = std::max({1.0, std::abs(a), std::abs(b)});
            if (std::abs(a - b) > compare_tol_ * scale)
                throw PivotInconsistency(
                    "pivot values disagree at " + idx.to_string() + ": " +
                    std::to_string(a) + " vs " + std::to_string(b) +
                    " (tensor is not realized by any random vector)");
        }
        return first;
    }
    }
    return ScalarOps<T>::from_double(0.0); // unreachable
}

template <typename T>
void BasicMomentTable<T>::ensure_degree(int n) {
    if (n > degree_cap_)
        throw InvalidParam("requested degree " + std::to_string(n) +
                           " exceeds the table cap " + std::to_string(degree_cap_) +
                           "; raise the cap explicitly if intended");
    for (int deg = filled_degree_ + 1; deg <= n; ++deg) {
        for (const MultiIndex& idx : multi_indices_of_degree(spec_.dimension(), deg))
            memo_.emplace(idx, evaluate(idx));
        filled_degree_ = deg;
    }
}

template <typename T>
T BasicMomentTable<T>::moment(const MultiIndex& idx) {
    if (idx.dimension() != spec_.dimension())
        throw DimensionMismatch("multi-index dimension " +
                                std::to_string(idx.dimension()) +
                                " vs spec dimension " + std::to_string(spec_.dimension()));
    for (int r = 0; r < idx.dimension(); ++r)
        if (idx[r] < 0) throw InvalidParam("multi-index has a negative count");
    ensure_degree(idx.degree());
    return memo_.at(idx);
}

template <typename T>
double BasicMomentTable<T>::pivot_disagreement(int max_degree) {
    ensure_degree(max_degree);
    double worst = 0.0;
    for (int deg = 2; deg <= max_degree; ++deg) {
        for (const MultiIndex& idx : multi_indices_of_degree(spec_.dimension(), deg)) {
            const std::vector<int> ws = valid_pivots(idx);
            if (ws.size() < 2) continue;
            double lo = 0.0, hi = 0.0, scale = 1.0;
            bool begun = false;
            for (int w : ws) {
                const double v = ScalarOps<T>::to_double(compute_with_pivot(idx, w));
                if (!begun) {
                    lo = hi = v;
                    begun = true;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                scale = std::max(scale, std::abs(v));
            }
            worst = std::max(worst, (hi - lo) / scale);
        }
    }
    return worst;
}

template class BasicMomentTable<double>;
template class BasicMomentTable<Rational>;

double moment_growth_constant(const MeixnerSpec& spec) {
    const double A = spec.alpha.max_abs();
    const double B = spec.beta.cwiseAbs().maxCoeff();
    return std::max(spec.dimension() * A + B, 1.0);
}

double moment_bound(const MeixnerSpec& spec, const MultiIndex& idx) {
    const double K = moment_growth_constant(spec);
    return std::pow(K, idx.degree()) * factorial(idx.degree());
}

double laplace_radius(const MeixnerSpec& spec) {
    return 1.0 / (2.0 * moment_growth_constant(spec) * spec.dimension());
}

template <typename T>
double taylor_laplace(BasicMomentTable<T>& tbl, const Vec& t, int max_degree) {
    const int d = tbl.spec().dimension();
    if (t.size() != d)
        throw DimensionMismatch("taylor_laplace: point dimension mismatch");
    tbl.ensure_degree(max_degree);
    double sum = 0.0;
    for (const MultiIndex& m : multi_indices_up_to(d, max_degree)) {
        double term = tbl.moment_double(m);
        if (term == 0.0) continue;
        for (int r = 0; r < d; ++r)
            term *= std::pow(t(r), m[r]) / factorial(m[r]);
        sum += term;
    }
    return sum;
}

template double taylor_laplace<double>(BasicMomentTable<double>&, const Vec&, int);
template double taylor_laplace<Rational>(BasicMomentTable<Rational>&, const Vec&, int);

double taylor_tail_bound(const MeixnerSpec& spec, const Vec& t, int max_degree) {
    const double rho = t.cwiseAbs().maxCoeff() / laplace_radius(spec);
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(rho, max_degree + 1) / (1.0 - rho);
}

} // namespace meixner
