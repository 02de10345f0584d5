#include "ratfit/multiindex.hpp"

#include <limits>
#include <stdexcept>

namespace ratfit {

std::int64_t alpha(int n, int d) {
    if (n < 1) throw std::invalid_argument("alpha: dimension must be >= 1");
    if (d < 0) throw std::invalid_argument("alpha: degree must be >= 0");
    // binomial(n + d, d), accumulated as C(n + k, k) for k = 1..d.
    std::int64_t result = 1;
    for (int k = 1; k <= d; ++k) {
        std::int64_t next;
        if (__builtin_mul_overflow(result, static_cast<std::int64_t>(n) + k, &next))
            throw std::overflow_error("alpha: basis size overflows 64-bit count");
        result = next / k;  // exact: C(n+k-1, k-1) * (n+k) is divisible by k
    }
    return result;
}

int MultiIndex::degree() const {
    int d = 0;
    for (auto e : exponents) d += e;
    return d;
}

std::strong_ordering compare_order(const MultiIndex& a, const MultiIndex& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("compare_order: dimension mismatch");
    const int da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
    for (std::size_t k = 0; k < a.exponents.size(); ++k) {
        if (a.exponents[k] != b.exponents[k])
            return b.exponents[k] <=> a.exponents[k];  // larger exponent first
    }
    return std::strong_ordering::equal;
}

MultiIndexOrder::MultiIndexOrder(int n, int L) : n_(n), L_(L) {
    if (n < 1) throw std::invalid_argument("MultiIndexOrder: dimension must be >= 1");
    if (L < 0) throw std::invalid_argument("MultiIndexOrder: degree must be >= 0");
    if (L > 255) throw std::invalid_argument("MultiIndexOrder: degrees beyond 255 are not supported");

    const std::int64_t total = alpha(n, L);
    sequence_.reserve(static_cast<std::size_t>(total));
    parent_.reserve(static_cast<std::size_t>(total));
    variable_.reserve(static_cast<std::size_t>(total));

    sequence_.push_back(MultiIndex{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)});
    parent_.push_back(-1);
    variable_.push_back(-1);

    // mark[j] is the first entry of the block last multiplied by x_j; `last`
    // is the final entry of the previous degree.
    std::vector<std::int64_t> mark(static_cast<std::size_t>(n), 0);
    std::int64_t last = 0;
    std::int64_t i = 1;
    for (int d = 1; d <= L; ++d) {
        for (int j = 0; j < n; ++j) {
            const std::int64_t block_start = i;
            for (std::int64_t k = mark[static_cast<std::size_t>(j)]; k <= last; ++k) {
                MultiIndex mi = sequence_[static_cast<std::size_t>(k)];
                ++mi.exponents[static_cast<std::size_t>(j)];
                sequence_.push_back(std::move(mi));
                parent_.push_back(k);
                variable_.push_back(j);
                ++i;
            }
            mark[static_cast<std::size_t>(j)] = block_start;
        }
        last = i - 1;
    }
}

}  // namespace ratfit
