#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace ratfit {

/// Dimension of the space of n-variate polynomials of total degree <= d,
/// binomial(n + d, d).  Throws std::overflow_error when the count does not
/// fit in a signed 64-bit integer.
std::int64_t alpha(int n, int d);

/// Exponent vector of a single monomial x_1^{e_1} ... x_n^{e_n}.
/// Exponents are capped at 255; degrees beyond that are rejected upstream.
struct MultiIndex {
    std::vector<std::uint8_t> exponents;

    int dimension() const { return static_cast<int>(exponents.size()); }
    int degree() const;

    bool operator==(const MultiIndex&) const = default;
};

/// Degree-compatible total order on monomials: lower total degree first;
/// within a degree the index with the larger exponent at the first differing
/// position comes first (so x^2 precedes xy).  Throws std::invalid_argument
/// on dimension mismatch.
std::strong_ordering compare_order(const MultiIndex& a, const MultiIndex& b);

/// The canonical ordered monomial sequence for dimension n and maximum total
/// degree L.  Built by a multiply-by-variable sweep that also records, for
/// every entry i >= 1, which earlier entry and which variable produced it.
/// That bookkeeping is replayed verbatim by the orthogonal-basis construction
/// and by the evaluation recurrence.
class MultiIndexOrder {
public:
    MultiIndexOrder(int n, int L);

    int dimension() const { return n_; }
    int max_degree() const { return L_; }
    std::int64_t size() const { return static_cast<std::int64_t>(sequence_.size()); }
    const std::vector<MultiIndex>& sequence() const { return sequence_; }
    const MultiIndex& operator[](std::int64_t i) const { return sequence_[static_cast<std::size_t>(i)]; }

    /// sequence[i] == x_{variable(i)} * sequence[parent(i)] for i >= 1.
    std::int64_t parent(std::int64_t i) const { return parent_[static_cast<std::size_t>(i)]; }
    int variable(std::int64_t i) const { return variable_[static_cast<std::size_t>(i)]; }

private:
    int n_;
    int L_;
    std::vector<MultiIndex> sequence_;
    std::vector<std::int64_t> parent_;
    std::vector<int> variable_;
};

/// Convenience wrapper with the operation's canonical name.
inline MultiIndexOrder generate_order(int n, int L) { return MultiIndexOrder(n, L); }

}  // namespace ratfit
