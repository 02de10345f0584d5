#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "helpers.hpp"
#include "ratfit/testfns.hpp"

using namespace ratfit;
using ratfit::testing::random_points;
using Eigen::VectorXd;

namespace {

// Second, independently written closed forms (pow/hypot phrasing instead of
// the library's explicit products) used as a cross-implementation oracle.
const std::map<std::string, std::function<double(const VectorXd&)>>& dual() {
    static const std::map<std::string, std::function<double(const VectorXd&)>> fns = {
        {"f1", [](const VectorXd& x) {
             return std::exp(x(0) * x(1)) /
                    ((std::pow(x(0), 2) - 1.44) * (std::pow(x(1), 2) - 1.44));
         }},
        {"f2", [](const VectorXd& x) { return std::log(2.25 - x.squaredNorm()); }},
        {"f3", [](const VectorXd& x) { return std::tanh(5.0 * (x(0) - x(1))); }},
        {"f4", [](const VectorXd& x) { return std::exp(-x.squaredNorm() / 1000.0); }},
        {"f5", [](const VectorXd& x) { return std::pow(std::abs(x(0) - x(1)), 3.0); }},
        {"f7", [](const VectorXd& x) {
             return (x(0) + std::pow(x(1), 3)) / (x(0) * std::pow(x(1), 2) + 1.0);
         }},
        {"f8", [](const VectorXd& x) {
             return (std::pow(x(0), 2) + std::pow(x(1), 2) + x(0) - x(1) - 1.0) /
                    ((x(0) - 1.1) * (x(1) - 1.1));
         }},
        {"f9", [](const VectorXd& x) {
             return (std::pow(x(0), 4) + std::pow(x(1), 4) + std::pow(x(0) * x(1), 2) +
                     x(0) * x(1)) /
                    ((std::pow(x(0), 2) - 1.1) * (std::pow(x(1), 2) - 1.1));
         }},
        {"f10", [](const VectorXd& x) {
             return (std::pow(x(0), 2) + std::pow(x(1), 2) + x(0) - x(1) + 1.0) /
                    ((x(2) - 1.5) * (x(3) - 1.5));
         }},
        {"f12", [](const VectorXd& x) {
             return (std::pow(x(0), 2) + std::pow(x(1), 2) + x(0) - x(1) - 1.0) /
                    (std::pow(x(0), 3) + std::pow(x(1), 3) + 4.0);
         }},
        {"f13", [](const VectorXd& x) {
             return (std::pow(x(0), 3) + std::pow(x(1), 3)) / (x.squaredNorm() + 3.0);
         }},
        {"f14", [](const VectorXd& x) {
             return (std::pow(x(0), 4) + std::pow(x(1), 4) + std::pow(x(0) * x(1), 2) +
                     x(0) * x(1)) /
                    ((std::pow(x(0), 2) - 2.0) * (std::pow(x(1), 2) - 2.0));
         }},
        {"f15", [](const VectorXd& x) {
             return (std::pow(x(0), 3) + std::pow(x(1), 3)) /
                    ((std::pow(x(0), 2) - 2.0) * (std::pow(x(1), 2) - 2.0));
         }},
        {"f16", [](const VectorXd& x) {
             return (std::pow(x(0), 4) + std::pow(x(1), 4) + std::pow(x(0) * x(1), 2) +
                     x(0) * x(1)) /
                    (std::pow(x(0), 3) + std::pow(x(1), 3) + 4.0);
         }},
        {"f17", [](const VectorXd& x) {
             const double E = x(0), G = x(1), M = x(2);
             const double gamma = std::sqrt(M * M * (M * M + G * G));
             const double k =
                 (2.0 * std::sqrt(2.0) * M * G * gamma) /
                 (M_PI * std::sqrt(M * M + gamma));
             return k / (std::pow(E * E - M * M, 2) + M * M * G * G);
         }},
        {"f18", [](const VectorXd& x) {
             double s = 0.0;
             for (int i = 0; i < 4; ++i) s += std::atan(x(i));
             return s / ((std::pow(x(0), 2) - 1.0) * (std::pow(x(1), 2) - 1.0));
         }},
        {"f19", [](const VectorXd& x) {
             return std::exp(x.prod()) /
                    (std::pow(x(0), 2) + std::pow(x(1), 2) - x(2) * x(3) + 3.0);
         }},
        {"f20", [](const VectorXd& x) {
             double v = 10.0;
             for (int i = 0; i < 4; ++i) v *= std::sin(x(i)) / x(i);
             return v;
         }},
        {"f21", [](const VectorXd& x) {
             return 10.0 * std::sin(x(0)) * std::sin(x(1)) / (x(0) * x(1));
         }},
        {"f22", [](const VectorXd& x) {
             return std::pow(x(0), 2) + std::pow(x(1), 2) + x(0) * x(1) - x(1) + 1.0;
         }},
    };
    return fns;
}

// Denominators of the entries with polynomial denominators, for the
// no-pole-in-domain scan.
const std::map<std::string, std::function<double(const VectorXd&)>>& denominators() {
    static const std::map<std::string, std::function<double(const VectorXd&)>> fns = {
        {"f1", [](const VectorXd& x) { return (x(0) * x(0) - 1.44) * (x(1) * x(1) - 1.44); }},
        {"f7", [](const VectorXd& x) { return x(0) * x(1) * x(1) + 1.0; }},
        {"f8", [](const VectorXd& x) { return (x(0) - 1.1) * (x(1) - 1.1); }},
        {"f9", [](const VectorXd& x) { return (x(0) * x(0) - 1.1) * (x(1) * x(1) - 1.1); }},
        {"f10", [](const VectorXd& x) { return (x(2) - 1.5) * (x(3) - 1.5); }},
        {"f12", [](const VectorXd& x) { return std::pow(x(0), 3) + std::pow(x(1), 3) + 4.0; }},
        {"f13", [](const VectorXd& x) { return x.squaredNorm() + 3.0; }},
        {"f14", [](const VectorXd& x) { return (x(0) * x(0) - 2.0) * (x(1) * x(1) - 2.0); }},
        {"f15", [](const VectorXd& x) { return (x(0) * x(0) - 2.0) * (x(1) * x(1) - 2.0); }},
        {"f16", [](const VectorXd& x) { return std::pow(x(0), 3) + std::pow(x(1), 3) + 4.0; }},
        {"f18", [](const VectorXd& x) { return (x(0) * x(0) - 1.0) * (x(1) * x(1) - 1.0); }},
        {"f19", [](const VectorXd& x) {
             return x(0) * x(0) + x(1) * x(1) - x(2) * x(3) + 3.0;
         }},
    };
    return fns;
}

// All grid points of a g^n lattice over the box, visited via a callback.
template <typename F>
void for_grid(const Box& box, int g, const F& visit) {
    const int n = box.dimension();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    VectorXd x(n);
    while (true) {
        for (int c = 0; c < n; ++c) {
            const auto& [lo, hi] = box.bounds[static_cast<std::size_t>(c)];
            x[c] = lo + (hi - lo) * idx[static_cast<std::size_t>(c)] / (g - 1);
        }
        visit(x);
        int c = 0;
        while (c < n && ++idx[static_cast<std::size_t>(c)] == g) {
            idx[static_cast<std::size_t>(c)] = 0;
            ++c;
        }
        if (c == n) break;
    }
}

}  // namespace

TEST_CASE("catalog shape and tabulated metadata") {
    const auto& fns = catalog();
    REQUIRE(fns.size() == 20);
    for (std::size_t i = 1; i < fns.size(); ++i) CHECK(fns[i - 1].id != fns[i].id);

    const auto& f17 = find_function("f17");
    CHECK(f17.n == 3);
    CHECK(f17.domain == Box({{80.0, 100.0}, {5.0, 10.0}, {90.0, 93.0}}));

    const auto& f10 = find_function("f10");
    CHECK(f10.n == 4);
    CHECK(f10.true_numerator_degree == 2);
    CHECK(f10.true_denominator_degree == 2);

    const auto& f9 = find_function("f9");
    CHECK(f9.true_numerator_degree == 4);
    CHECK(f9.true_denominator_degree == 4);

    const auto& f18 = find_function("f18");
    CHECK(f18.n == 4);
    CHECK(!f18.true_numerator_degree.has_value());
    CHECK(f18.true_denominator_degree == 4);
    CHECK(f18.domain == Box(std::vector<std::pair<double, double>>(4, {-0.95, 0.95})));

    const auto& f20 = find_function("f20");
    CHECK(f20.domain.bounds[0].first == 1e-6);
    CHECK(f20.domain.bounds[0].second == doctest::Approx(4.0 * M_PI).epsilon(1e-15));

    CHECK_THROWS_AS(find_function("f6"), std::invalid_argument);
    CHECK_THROWS_AS(find_function("nope"), std::invalid_argument);
}

TEST_CASE("spot values") {
    CHECK(evaluate("f22", Eigen::Vector2d{0.0, 0.0}) == 1.0);
    CHECK(evaluate("f7", Eigen::Vector2d{1.0, 1.0}) == 1.0);
    const Eigen::Vector3d bw{91.0, 7.0, 91.5};
    CHECK(evaluate("f17", bw) ==
          doctest::Approx(dual().at("f17")(bw)).epsilon(1e-12));
}

TEST_CASE("out-of-domain points are rejected") {
    CHECK_THROWS_AS(evaluate("f22", Eigen::Vector2d{2.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(evaluate("f17", Eigen::Vector3d{50.0, 7.0, 91.0}), std::domain_error);
}

TEST_CASE("every closed form matches the dual implementation") {
    for (const auto& fn : catalog()) {
        const auto& oracle = dual().at(fn.id);
        const auto pts = random_points(fn.domain, 1000, 7777);
        for (Eigen::Index k = 0; k < pts.rows(); ++k) {
            const VectorXd x = pts.row(k).transpose();
            const double a = fn(x);
            const double b = oracle(x);
            REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("tabulated denominators have no zero crossing inside the domain") {
    for (const auto& fn : catalog()) {
        const auto it = denominators().find(fn.id);
        if (it == denominators().end()) continue;
        const int g = fn.n <= 2 ? 50 : (fn.n == 3 ? 50 : 30);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for_grid(fn.domain, g, [&](const VectorXd& x) {
            const double q = it->second(x);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        });
        CAPTURE(fn.id);
        REQUIRE(lo * hi > 0.0);  // constant sign, never zero
    }
}
