#include "meixner/multi_index.hpp"

namespace meixner {

static void enumerate_degree(int dimension, int degree, int pos, MultiIndex& cur,
                             std::vector<MultiIndex>& out) {
    if (pos == dimension - 1) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int c = degree; c >= 0; --c) {
        cur[pos] = c;
        enumerate_degree(dimension, degree - c, pos + 1, cur, out);
    }
}

std::vector<MultiIndex> multi_indices_of_degree(int dimension, int degree) {
    std::vector<MultiIndex> out;
    MultiIndex cur(dimension);
    enumerate_degree(dimension, degree, 0, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int dimension, int max_degree) {
    std::vector<MultiIndex> out;
    for (int n = 0; n <= max_degree; ++n) {
        auto layer = multi_indices_of_degree(dimension, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double multinomial(const MultiIndex& idx) {
    double v = factorial(idx.degree());
    for (int r = 0; r < idx.dimension(); ++r) v /= factorial(idx[r]);
    return v;
}

} // namespace meixner
