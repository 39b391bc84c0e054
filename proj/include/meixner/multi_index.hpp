#ifndef MEIXNER_MULTI_INDEX_HPP
#define MEIXNER_MULTI_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace meixner {

// Exponent vector (i_1, ..., i_d) of a monomial X^i. The "length" |i| is the
// total degree.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int dimension) : counts_(dimension, 0) {}
    MultiIndex(std::initializer_list<int> counts) : counts_(counts) {}
    explicit MultiIndex(std::vector<int> counts) : counts_(std::move(counts)) {}

    int dimension() const { return static_cast<int>(counts_.size()); }
    int operator[](int r) const { return counts_[r]; }
    int& operator[](int r) { return counts_[r]; }

    int degree() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

    MultiIndex plus(int r) const {
        MultiIndex m = *this;
        ++m.counts_[r];
        return m;
    }
    MultiIndex minus(int r) const {
        MultiIndex m = *this;
        --m.counts_[r];
        return m;
    }

    bool operator==(const MultiIndex& o) const { return counts_ == o.counts_; }
    bool operator<(const MultiIndex& o) const { return counts_ < o.counts_; }

    const std::vector<int>& counts() const { return counts_; }

    std::string to_string() const {
        std::string s = "(";
        for (int r = 0; r < dimension(); ++r) {
            if (r) s += ",";
            s += std::to_string(counts_[r]);
        }
        return s + ")";
    }

private:
    std::vector<int> counts_;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (int c : m.counts()) {
            h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// All multi-indices of the given total degree, lexicographic order.
std::vector<MultiIndex> multi_indices_of_degree(int dimension, int degree);

// All multi-indices with total degree <= max_degree, by degree then lex.
std::vector<MultiIndex> multi_indices_up_to(int dimension, int max_degree);

// n! / (i_1! i_2! ... i_d!) for n = |i|, as a double (exact for |i| <= 20).
double multinomial(const MultiIndex& idx);

double factorial(int n);

} // namespace meixner

#endif
