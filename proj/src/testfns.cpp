#include "ratfit/testfns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ratfit {
namespace {

using Eigen::VectorXd;

Box square(double lo, double hi, int n) {
    return Box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(n), {lo, hi}));
}

double f1(const VectorXd& x) {
    return std::exp(x[0] * x[1]) / ((x[0] * x[0] - 1.44) * (x[1] * x[1] - 1.44));
}
double f2(const VectorXd& x) { return std::log(2.25 - x[0] * x[0] - x[1] * x[1]); }
double f3(const VectorXd& x) { return std::tanh(5.0 * (x[0] - x[1])); }
double f4(const VectorXd& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 1000.0); }
double f5(const VectorXd& x) { return std::pow(std::abs(x[0] - x[1]), 3); }
double f7(const VectorXd& x) {
    return (x[0] + x[1] * x[1] * x[1]) / (x[0] * x[1] * x[1] + 1.0);
}
double f8(const VectorXd& x) {
    return (x[0] * x[0] + x[1] * x[1] + x[0] - x[1] - 1.0) / ((x[0] - 1.1) * (x[1] - 1.1));
}
double f9(const VectorXd& x) {
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    return (x2 * x2 + y2 * y2 + x2 * y2 + x[0] * x[1]) / ((x2 - 1.1) * (y2 - 1.1));
}
double f10(const VectorXd& x) {
    return (x[0] * x[0] + x[1] * x[1] + x[0] - x[1] + 1.0) / ((x[2] - 1.5) * (x[3] - 1.5));
}
double f12(const VectorXd& x) {
    return (x[0] * x[0] + x[1] * x[1] + x[0] - x[1] - 1.0) /
           (x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + 4.0);
}
double f13(const VectorXd& x) {
    return (x[0] * x[0] * x[0] + x[1] * x[1] * x[1]) / (x[0] * x[0] + x[1] * x[1] + 3.0);
}
double f14(const VectorXd& x) {
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    return (x2 * x2 + y2 * y2 + x2 * y2 + x[0] * x[1]) / (x2 * y2 - 2.0 * x2 - 2.0 * y2 + 4.0);
}
double f15(const VectorXd& x) {
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    return (x[0] * x2 + x[1] * y2) / (x2 * y2 - 2.0 * x2 - 2.0 * y2 + 4.0);
}
double f16(const VectorXd& x) {
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    return (x2 * x2 + y2 * y2 + x2 * y2 + x[0] * x[1]) / (x[0] * x2 + x[1] * y2 + 4.0);
}
// Breit-Wigner resonance: x = (E, Gamma, M).
double f17(const VectorXd& x) {
    const double E = x[0], G = x[1], Mm = x[2];
    const double M2 = Mm * Mm;
    const double gamma = std::sqrt(M2 * (M2 + G * G));
    const double k = 2.0 * std::numbers::sqrt2 * Mm * G * gamma /
                     (std::numbers::pi * std::sqrt(M2 + gamma));
    const double d = E * E - M2;
    return k / (d * d + M2 * G * G);
}
double f18(const VectorXd& x) {
    const double num = std::atan(x[0]) + std::atan(x[1]) + std::atan(x[2]) + std::atan(x[3]);
    const double x2 = x[0] * x[0], y2 = x[1] * x[1];
    return num / (x2 * y2 - x2 - y2 + 1.0);
}
double f19(const VectorXd& x) {
    return std::exp(x[0] * x[1] * x[2] * x[3]) /
           (x[0] * x[0] + x[1] * x[1] - x[2] * x[3] + 3.0);
}
double f20(const VectorXd& x) {
    double v = 10.0;
    for (int i = 0; i < 4; ++i) v *= std::sin(x[i]) / x[i];
    return v;
}
double f21(const VectorXd& x) {
    return 10.0 * (std::sin(x[0]) / x[0]) * (std::sin(x[1]) / x[1]);
}
double f22(const VectorXd& x) {
    return x[0] * x[0] + x[1] * x[1] + x[0] * x[1] - x[1] + 1.0;
}

std::vector<TestFunction> make_catalog() {
    using K = TestFunction::Kind;
    const double fourpi = 4.0 * std::numbers::pi;
    std::vector<TestFunction> fns;
    auto add = [&](std::string id, std::string desc, int n, Box dom, std::optional<int> M,
                   std::optional<int> N, K kind, double (*fn)(const VectorXd&)) {
        fns.push_back(TestFunction{std::move(id), std::move(desc), n, std::move(dom), M, N, kind, fn});
    };
    add("f1", "exp(xy) over a polynomial denominator", 2, square(-1, 1, 2), std::nullopt, 4, K::poly_denominator, f1);
    add("f2", "log function", 2, square(-1, 1, 2), std::nullopt, std::nullopt, K::transcendental, f2);
    add("f3", "hyperbolic tangent", 2, square(-1, 1, 2), std::nullopt, std::nullopt, K::transcendental, f3);
    add("f4", "exponential function", 2, square(-1, 1, 2), std::nullopt, std::nullopt, K::transcendental, f4);
    add("f5", "absolute value cubed", 2, square(-1, 1, 2), std::nullopt, std::nullopt, K::transcendental, f5);
    add("f7", "rational function", 2, square(0, 1, 2), 3, 3, K::rational, f7);
    add("f8", "rational function", 2, square(-1, 1, 2), 2, 2, K::rational, f8);
    add("f9", "rational function", 2, square(-1, 1, 2), 4, 4, K::rational, f9);
    add("f10", "rational function", 4, square(-1, 1, 4), 2, 2, K::rational, f10);
    add("f12", "rational function", 2, square(-1, 1, 2), 2, 3, K::rational, f12);
    add("f13", "rational function", 2, square(-1, 1, 2), 3, 2, K::rational, f13);
    add("f14", "rational function", 2, square(-1, 1, 2), 4, 4, K::rational, f14);
    add("f15", "rational function", 2, square(-1, 1, 2), 3, 4, K::rational, f15);
    add("f16", "rational function", 2, square(-1, 1, 2), 4, 3, K::rational, f16);
    add("f17", "Breit-Wigner resonance", 3,
        Box({{80.0, 100.0}, {5.0, 10.0}, {90.0, 93.0}}), std::nullopt, std::nullopt,
        K::transcendental, f17);
    add("f18", "arctan sum over a polynomial denominator", 4, square(-0.95, 0.95, 4),
        std::nullopt, 4, K::poly_denominator, f18);
    add("f19", "exponential over a polynomial denominator", 4, square(-1, 1, 4), std::nullopt, 2,
        K::poly_denominator, f19);
    add("f20", "4D sinc product", 4, square(1e-6, fourpi, 4), std::nullopt, std::nullopt,
        K::transcendental, f20);
    add("f21", "2D sinc product", 2, square(1e-6, fourpi, 2), std::nullopt, std::nullopt,
        K::transcendental, f21);
    add("f22", "polynomial function", 2, square(-1, 1, 2), 2, std::nullopt, K::polynomial, f22);
    return fns;
}

}  // namespace

double TestFunction::operator()(const Eigen::VectorXd& x) const {
    if (!domain.contains(x, 1e-12))
        throw std::domain_error("TestFunction " + id + ": point outside the pole-free domain");
    return closed_form(x);
}

const std::vector<TestFunction>& catalog() {
    static const std::vector<TestFunction> fns = make_catalog();
    return fns;
}

const TestFunction& find_function(std::string_view id) {
    for (const auto& fn : catalog())
        if (fn.id == id) return fn;
    throw std::invalid_argument("unknown test function id: " + std::string(id));
}

}  // namespace ratfit
