#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "ratfit/multiindex.hpp"

using namespace ratfit;

namespace {

MultiIndex mi(std::initializer_list<int> exps) {
    MultiIndex m;
    for (int e : exps) m.exponents.push_back(static_cast<std::uint8_t>(e));
    return m;
}

// Independent enumeration of all exponent vectors of degree <= L, used as a
// comparator-sort oracle against the inductive construction.
void enumerate(int n, int L, std::vector<std::uint8_t>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(MultiIndex{cur});
        return;
    }
    int used = 0;
    for (auto e : cur) used += e;
    for (int e = 0; e + used <= L; ++e) {
        cur.push_back(static_cast<std::uint8_t>(e));
        enumerate(n, L, cur, out);
        cur.pop_back();
    }
}

std::vector<MultiIndex> sorted_oracle(int n, int L) {
    std::vector<MultiIndex> all;
    std::vector<std::uint8_t> cur;
    enumerate(n, L, cur, all);
    std::sort(all.begin(), all.end(),
              [](const MultiIndex& a, const MultiIndex& b) { return compare_order(a, b) < 0; });
    return all;
}

}  // namespace

TEST_CASE("alpha basic values") {
    CHECK(alpha(3, 3) == 20);
    CHECK(alpha(1, 7) == 8);
    CHECK(alpha(4, 5) == 126);
    CHECK(alpha(1, 0) == 1);
    CHECK(alpha(5, 0) == 1);
    CHECK(alpha(2, 5) == 21);
    CHECK(alpha(2, 20) == 231);
}

TEST_CASE("alpha recurrence on the full grid") {
    for (int n = 1; n <= 7; ++n)
        for (int d = 1; d <= 6; ++d) {
            const std::int64_t lhs = alpha(n, d);
            std::int64_t rhs = alpha(n, d - 1);
            if (n >= 2) rhs += alpha(n - 1, d);
            else rhs += 1;  // alpha_0(d) = 1: only the constant
            CHECK(lhs == rhs);
        }
}

TEST_CASE("alpha rejects bad arguments and overflow") {
    CHECK_THROWS_AS(alpha(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(alpha(2, -1), std::invalid_argument);
    CHECK_THROWS_AS(alpha(60, 60), std::overflow_error);
}

TEST_CASE("compare_order tie-breaking and degree compatibility") {
    CHECK(compare_order(mi({2, 0}), mi({1, 1})) == std::strong_ordering::less);   // x^2 < xy
    CHECK(compare_order(mi({0, 0, 2}), mi({3, 0, 0})) == std::strong_ordering::less);  // z^2 < x^3
    CHECK(compare_order(mi({1, 2}), mi({1, 2})) == std::strong_ordering::equal);
    CHECK(compare_order(mi({0, 3}), mi({2, 0})) == std::strong_ordering::greater);
    CHECK_THROWS_AS(compare_order(mi({1}), mi({1, 0})), std::invalid_argument);
}

TEST_CASE("generate_order reproduces the canonical three-variable sequence") {
    const MultiIndexOrder order(3, 3);
    const std::vector<MultiIndex> expected = {
        mi({0, 0, 0}),
        mi({1, 0, 0}), mi({0, 1, 0}), mi({0, 0, 1}),
        mi({2, 0, 0}), mi({1, 1, 0}), mi({1, 0, 1}), mi({0, 2, 0}), mi({0, 1, 1}), mi({0, 0, 2}),
        mi({3, 0, 0}), mi({2, 1, 0}), mi({2, 0, 1}), mi({1, 2, 0}), mi({1, 1, 1}), mi({1, 0, 2}),
        mi({0, 3, 0}), mi({0, 2, 1}), mi({0, 1, 2}), mi({0, 0, 3}),
    };
    REQUIRE(order.size() == 20);
    for (std::int64_t i = 0; i < order.size(); ++i) CHECK(order[i] == expected[static_cast<std::size_t>(i)]);
}

TEST_CASE("generate_order small cases") {
    const MultiIndexOrder uni(1, 2);
    REQUIRE(uni.size() == 3);
    CHECK(uni[0] == mi({0}));
    CHECK(uni[1] == mi({1}));
    CHECK(uni[2] == mi({2}));

    const MultiIndexOrder biv(2, 2);
    const auto oracle = sorted_oracle(2, 2);
    REQUIRE(biv.size() == static_cast<std::int64_t>(oracle.size()));
    for (std::int64_t i = 0; i < biv.size(); ++i) CHECK(biv[i] == oracle[static_cast<std::size_t>(i)]);
}

TEST_CASE("inductive construction matches the comparator-sort oracle") {
    for (int n = 1; n <= 7; ++n)
        for (int L = 0; L <= 6; ++L) {
            const MultiIndexOrder order(n, L);
            const auto oracle = sorted_oracle(n, L);
            REQUIRE(order.size() == alpha(n, L));
            REQUIRE(order.size() == static_cast<std::int64_t>(oracle.size()));
            bool equal = true;
            for (std::int64_t i = 0; i < order.size(); ++i)
                equal = equal && order[i] == oracle[static_cast<std::size_t>(i)];
            CHECK(equal);
        }
}

TEST_CASE("sequence is strictly increasing and degree prefixes are complete") {
    for (int n = 1; n <= 7; ++n) {
        const int L = 6;
        const MultiIndexOrder order(n, L);
        for (std::int64_t i = 1; i < order.size(); ++i)
            REQUIRE(compare_order(order[i - 1], order[i]) == std::strong_ordering::less);
        CHECK(order[0].degree() == 0);
        for (int d = 0; d <= L; ++d) {
            const std::int64_t cut = alpha(n, d);
            for (std::int64_t i = 0; i < order.size(); ++i)
                REQUIRE((order[i].degree() <= d) == (i < cut));
        }
    }
}

TEST_CASE("parent/variable bookkeeping rebuilds every entry") {
    const MultiIndexOrder order(4, 5);
    for (std::int64_t i = 1; i < order.size(); ++i) {
        MultiIndex expect = order[order.parent(i)];
        expect.exponents[static_cast<std::size_t>(order.variable(i))]++;
        CHECK(order[i] == expect);
    }
}

TEST_CASE("degrees beyond the exponent representation are rejected") {
    CHECK_THROWS_AS(MultiIndexOrder(1, 256), std::invalid_argument);
    CHECK_NOTHROW(MultiIndexOrder(1, 255));
}
