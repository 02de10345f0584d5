#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ratfit/linfit.hpp"
#include "ratfit/metrics.hpp"
#include "ratfit/qp.hpp"
#include "ratfit/sipfit.hpp"
#include "ratfit/testfns.hpp"

using namespace ratfit;
using ratfit::testing::evaluate_at;
using ratfit::testing::lhs_samples;
using ratfit::testing::random_points;

TEST_CASE("active-set QP: interior optimum leaves the active set empty") {
    QpProblem qp;
    qp.H = Eigen::Matrix2d{{2.0, 0.0}, {0.0, 2.0}};
    qp.g = Eigen::Vector2d{-2.0, -4.0};  // optimum (1, 2)
    qp.A = Eigen::MatrixXd{{1.0, 0.0}};
    qp.lb = Eigen::VectorXd::Constant(1, -5.0);
    const auto sol = solve_qp_active_set(qp, Eigen::Vector2d{0.0, 0.0});
    REQUIRE(sol.success);
    CHECK(sol.active.empty());
    CHECK((sol.x - Eigen::Vector2d{1.0, 2.0}).norm() <= 1e-10);
    CHECK(sol.lambda.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("active-set QP: binding constraint gets a positive multiplier") {
    QpProblem qp;
    qp.H = Eigen::Matrix2d{{2.0, 0.0}, {0.0, 2.0}};
    qp.g = Eigen::Vector2d{0.0, 0.0};  // unconstrained optimum at the origin
    qp.A = Eigen::MatrixXd{{1.0, 1.0}};
    qp.lb = Eigen::VectorXd::Constant(1, 2.0);
    const auto sol = solve_qp_active_set(qp, Eigen::Vector2d{2.0, 2.0});
    REQUIRE(sol.success);
    REQUIRE(sol.active.size() == 1);
    CHECK(sol.x.sum() == doctest::Approx(2.0).epsilon(1e-10));  // q = lb exactly
    CHECK((sol.x - Eigen::Vector2d{1.0, 1.0}).norm() <= 1e-9);
    CHECK(sol.lambda[0] > 0.0);
}

TEST_CASE("active-set QP satisfies the KKT conditions on random instances") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 5);
        const int ncon = 1 + static_cast<int>(rng() % 6);
        Eigen::MatrixXd B(dim, dim);
        for (Eigen::Index i = 0; i < B.size(); ++i) B(i) = gauss(rng);
        QpProblem qp;
        qp.H = B * B.transpose() + Eigen::MatrixXd::Identity(dim, dim);
        qp.g = Eigen::VectorXd::NullaryExpr(dim, [&] { return gauss(rng); });
        qp.A = Eigen::MatrixXd::NullaryExpr(ncon, dim, [&] { return gauss(rng); });
        // Pick lb so that x0 = 0 is strictly feasible.
        qp.lb = Eigen::VectorXd::NullaryExpr(ncon, [&] { return -1.0 - std::abs(gauss(rng)); });
        const auto sol = solve_qp_active_set(qp, Eigen::VectorXd::Zero(dim));
        REQUIRE(sol.success);
        // Primal feasibility.
        REQUIRE(((qp.A * sol.x - qp.lb).array() >= -1e-8).all());
        // Stationarity: H x + g = A' lambda.
        const Eigen::VectorXd grad = qp.H * sol.x + qp.g - qp.A.transpose() * sol.lambda;
        REQUIRE(grad.cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, sol.x.norm()));
        // Complementarity and dual feasibility.
        for (Eigen::Index i = 0; i < ncon; ++i) {
            REQUIRE(sol.lambda[i] >= -1e-9);
            REQUIRE(std::abs(sol.lambda[i] * (qp.A.row(i).dot(sol.x) - qp.lb[i])) <= 1e-7);
        }
    }
}

TEST_CASE("active-set QP rejects a singular Hessian") {
    QpProblem qp;
    qp.H = Eigen::Matrix2d{{1.0, 1.0}, {1.0, 1.0}};
    qp.g = Eigen::Vector2d{1.0, 0.0};
    qp.A = Eigen::MatrixXd{{1.0, 0.0}};
    qp.lb = Eigen::VectorXd::Constant(1, -1.0);
    CHECK_THROWS_AS(solve_qp_active_set(qp, Eigen::Vector2d{0.0, 0.0}), singular_hessian_error);
}

TEST_CASE("multistart budget constants") {
    CHECK(alpha(2, 5) - 3 == 18);
    CHECK(alpha(3, 5) - 4 == 52);
    CHECK(alpha(4, 5) - 5 == 121);
    const double phi18 = 2042.023 * std::exp(0.029 * 18.0);
    CHECK(multistart_budget(2, 5, 1000000) == static_cast<std::int64_t>(std::ceil(phi18)));
    CHECK(multistart_budget(2, 5, 5000) == static_cast<std::int64_t>(std::ceil(phi18)));
    CHECK(multistart_budget(4, 5, 5000) == 5000);  // formula far exceeds the cap
    CHECK(multistart_budget(2, 5, 100) == 100);
}

TEST_CASE("denominator minimization finds analytic minima") {
    const MultiIndexOrder order(2, 2);
    SUBCASE("1 + x1^2 has its valley on the x1 = 0 line") {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(order.size());
        b[0] = 1.0;
        b[3] = 1.0;  // x1^2 in the canonical order 1, x, y, x^2, xy, y^2
        const auto [x, q] = minimize_denominator(b, order, Box::unit(2), 50, 1e-10, 7);
        CHECK(std::abs(x[0]) <= 1e-6);
        CHECK(q == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("linear polynomial attains its minimum at the corner") {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(order.size());
        b[0] = 3.0;
        b[1] = 1.0;
        b[2] = 1.0;
        const auto [x, q] = minimize_denominator(b, order, Box::unit(2), 50, 1e-10, 7);
        CHECK((x - Eigen::Vector2d{-1.0, -1.0}).norm() <= 1e-8);
        CHECK(q == doctest::Approx(1.0).epsilon(1e-10));
    }
}

namespace {

// Grid scan plus iterative window refinement around the argmin; accurate far
// beyond the base grid resolution.
double refined_grid_min(const Eigen::VectorXd& b, const MultiIndexOrder& order, int base) {
    auto eval = [&](double x, double y) {
        Eigen::VectorXd m(order.size());
        m[0] = 1.0;
        const Eigen::Vector2d p(x, y);
        for (std::int64_t i = 1; i < order.size(); ++i)
            m[i] = p[order.variable(i)] * m[order.parent(i)];
        return b.dot(m);
    };
    double cx = 0.0, cy = 0.0, half = 1.0, best = std::numeric_limits<double>::infinity();
    int pts = base;
    for (int round = 0; round < 5; ++round) {
        double bx = cx, by = cy;
        for (int i = 0; i < pts; ++i)
            for (int j = 0; j < pts; ++j) {
                const double x = std::clamp(cx - half + 2.0 * half * i / (pts - 1), -1.0, 1.0);
                const double y = std::clamp(cy - half + 2.0 * half * j / (pts - 1), -1.0, 1.0);
                const double v = eval(x, y);
                if (v < best) {
                    best = v;
                    bx = x;
                    by = y;
                }
            }
        cx = bx;
        cy = by;
        half = 2.0 * half / (pts - 1);
        pts = 41;
    }
    return best;
}

}  // namespace

TEST_CASE("denominator minimization matches a dense-grid oracle") {
    std::mt19937_64 rng(606);
    std::normal_distribution<double> gauss;
    const MultiIndexOrder order(2, 3);
    for (int trial = 0; trial < 4; ++trial) {
        Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(order.size(), [&] { return gauss(rng); });
        const auto [x, q] = minimize_denominator(b, order, Box::unit(2), 1000, 1e-10, rng());
        const double oracle = refined_grid_min(b, order, 500);
        REQUIRE(std::abs(q - oracle) <= 1e-6);
    }
}

TEST_CASE("relaxation: binding cut satisfies complementarity") {
    // Data from an exact rational class; one extra constraint point far from
    // the data forces the denominator up locally.
    const TestFunction& fn = find_function("f12");
    auto samples = lhs_samples(fn, fn.domain, 40, 3);
    std::vector<Eigen::VectorXd> cpts;
    for (Eigen::Index k = 0; k < samples.count(); ++k)
        cpts.push_back(samples.points.row(k).transpose());
    const auto rel = solve_relaxation(samples, cpts, 2, 3, 1.0, 0.0);
    // Primal feasibility at every constraint point: q >= tau.
    const MultiIndexOrder order(2, 3);
    double qmin = std::numeric_limits<double>::infinity();
    for (const auto& p : cpts) {
        Eigen::VectorXd m(order.size());
        const Eigen::VectorXd u = samples.domain.to_unit(p);
        m[0] = 1.0;
        for (std::int64_t i = 1; i < order.size(); ++i)
            m[i] = u[order.variable(i)] * m[order.parent(i)];
        qmin = std::min(qmin, rel.b.dot(m));
    }
    CHECK(qmin >= 1.0 - 1e-9);
    // The homogeneous objective pushes the scale down until a constraint binds.
    CHECK(rel.active_count >= 1);
    CHECK(qmin <= 1.0 + 1e-6);
    // Exact class: the linearized residual vanishes.
    CHECK(rel.residual_norm <= 1e-8 * rel.coefficient_norm);
}

TEST_CASE("relaxation requires the data points among the constraints") {
    const TestFunction& fn = find_function("f12");
    auto samples = lhs_samples(fn, fn.domain, 40, 3);
    CHECK_THROWS_AS(solve_relaxation(samples, {}, 2, 3, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("pole-free fit converges immediately when the data covers the minimum") {
    // Exact-class data whose true denominator attains its box minimum at a
    // corner that is included among the samples, so the first global check
    // already passes.
    const TestFunction& fn = find_function("f12");
    SampleSet samples;
    samples.domain = fn.domain;
    const Eigen::MatrixXd inner = random_points(fn.domain, 36, 19);
    samples.points.resize(inner.rows() + 4, 2);
    samples.points.topRows(inner.rows()) = inner;
    samples.points.bottomRows(4) << -1, -1, -1, 1, 1, -1, 1, 1;
    samples.values = evaluate_at(fn, samples.points);

    const auto [model, report] = fit_rational_polefree(samples, 2, 3);
    CHECK(report.sip_iterations == 1);
    CHECK(report.added_points.empty());
    CHECK(report.converged);

    const auto fresh = random_points(fn.domain, 500, 23);
    const Eigen::VectorXd truth = evaluate_at(fn, fresh);
    CHECK(test_error(model, fresh, truth) <= 1e-6 * truth.cwiseAbs().maxCoeff());
}

TEST_CASE("pole-free fit invariants on a small benchmark") {
    const TestFunction& fn = find_function("f8");
    const auto samples = ratfit::testing::dlhd_samples(fn, 3, 3, 5);
    SipConfig cfg;
    cfg.seed = 5;
    const auto [model, report] = fit_rational_polefree(samples, 3, 3, cfg);
    REQUIRE(report.converged);

    // Feasibility at the data points and at every added cut.
    for (Eigen::Index k = 0; k < samples.count(); ++k)
        REQUIRE(model.denominator(samples.points.row(k).transpose()) >= 1.0 - 1e-9);
    for (const auto& p : report.added_points)
        REQUIRE(model.denominator(p) >= 1.0 - 1e-9);

    // The relaxation objective cannot decrease as cuts accumulate.
    for (std::size_t i = 1; i < report.relaxation_objectives.size(); ++i)
        REQUIRE(report.relaxation_objectives[i] >= report.relaxation_objectives[i - 1] - 1e-9);

    // Pole-free certificate over a fresh scan.
    const auto scan = random_points(fn.domain, 10000, 87);
    double qmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < scan.rows(); ++k)
        qmin = std::min(qmin, model.denominator(scan.row(k).transpose()));
    CHECK(qmin >= 1.0 * (1.0 - 1e-3));
}

TEST_CASE("pole-free and ONB fits agree on exact-class data") {
    const TestFunction& fn = find_function("f12");
    const auto samples = lhs_samples(fn, fn.domain, 48, 9);
    const auto [onb, r1] = fit_rational_onb(samples, 2, 3);
    const auto [sip, r2] = fit_rational_polefree(samples, 2, 3);
    const auto fresh = random_points(fn.domain, 100, 55);
    const Eigen::VectorXd truth = evaluate_at(fn, fresh);
    const double scale = truth.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < fresh.rows(); ++k)
        REQUIRE(std::abs(onb(fresh.row(k).transpose()) - sip(fresh.row(k).transpose())) <=
                1e-6 * scale);
}

TEST_CASE("pole-free fit validates its inputs") {
    const TestFunction& fn = find_function("f12");
    const auto samples = lhs_samples(fn, fn.domain, 10, 3);
    CHECK_THROWS_AS(fit_rational_polefree(samples, 2, 3), std::invalid_argument);  // K too small
    const auto ok = lhs_samples(fn, fn.domain, 40, 3);
    SipConfig bad;
    bad.tau = 0.0;
    CHECK_THROWS_AS(fit_rational_polefree(ok, 2, 3, bad), std::invalid_argument);
}
