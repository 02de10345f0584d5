#include "ratfit/sipfit.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ratfit/qp.hpp"
#include "ratfit/sampling.hpp"

namespace ratfit {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void monomial_values(const MultiIndexOrder& order, const Eigen::VectorXd& u,
                     Eigen::VectorXd& m) {
    m.resize(order.size());
    m[0] = 1.0;
    for (std::int64_t i = 1; i < order.size(); ++i)
        m[i] = u[order.variable(i)] * m[order.parent(i)];
}

// Series value and gradient via the same multiply-by-variable recurrence;
// no division, so points on coordinate planes are safe.
void series_value_gradient(const MultiIndexOrder& order, const Eigen::VectorXd& coeffs,
                           const Eigen::VectorXd& u, Eigen::VectorXd& m, Eigen::MatrixXd& dm,
                           double& value, Eigen::VectorXd& grad) {
    const std::int64_t sz = coeffs.size();
    const int n = order.dimension();
    m.resize(sz);
    dm.resize(sz, n);
    m[0] = 1.0;
    dm.row(0).setZero();
    for (std::int64_t i = 1; i < sz; ++i) {
        const int v = order.variable(i);
        const std::int64_t par = order.parent(i);
        m[i] = u[v] * m[par];
        dm.row(i) = u[v] * dm.row(par);
        dm(i, v) += m[par];
    }
    value = coeffs.dot(m);
    grad = dm.transpose() * coeffs;
}

struct LocalDescentWorkspace {
    Eigen::VectorXd m;
    Eigen::MatrixXd dm;
};

// Projected BFGS with Armijo backtracking along the projection arc.
std::pair<Eigen::VectorXd, double> local_descent(const Eigen::VectorXd& coeffs,
                                                 const MultiIndexOrder& order, const Box& box,
                                                 Eigen::VectorXd x, double tol,
                                                 LocalDescentWorkspace& ws) {
    constexpr int kMaxIterations = 500;
    const int n = box.dimension();
    const Eigen::VectorXd lo = box.lower();
    const Eigen::VectorXd hi = box.upper();
    const auto clamp = [&](const Eigen::VectorXd& v) {
        return v.cwiseMax(lo).cwiseMin(hi).eval();
    };

    Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
    double f;
    Eigen::VectorXd g(n);
    series_value_gradient(order, coeffs, x, ws.m, ws.dm, f, g);

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        if ((x - clamp(x - g)).lpNorm<Eigen::Infinity>() <= tol) break;

        Eigen::VectorXd d = -(Hinv * g);
        if (d.dot(g) > -1e-12 * d.norm() * g.norm()) d = -g;  // keep a descent direction

        double step = 1.0;
        Eigen::VectorXd xnew;
        double fnew = f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            xnew = clamp(x + step * d);
            Eigen::VectorXd dummy;
            double val;
            series_value_gradient(order, coeffs, xnew, ws.m, ws.dm, val, dummy);
            if (val <= f + 1e-4 * g.dot(xnew - x)) {
                fnew = val;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        Eigen::VectorXd gnew(n);
        double val;
        series_value_gradient(order, coeffs, xnew, ws.m, ws.dm, val, gnew);
        const Eigen::VectorXd s = xnew - x;
        const Eigen::VectorXd y = gnew - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd V =
                Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
            Hinv = V * Hinv * V.transpose() + rho * s * s.transpose();
        }
        x = xnew;
        f = fnew;
        g = gnew;
    }
    return {x, f};
}

}  // namespace

std::int64_t multistart_budget(int n, int N, std::int64_t cap) {
    if (cap < 1) throw std::invalid_argument("multistart_budget: cap must be >= 1");
    const std::int64_t nnl = alpha(n, N) - (n + 1);
    const double phi = 2042.023 * std::exp(0.029 * static_cast<double>(nnl));
    if (phi >= static_cast<double>(cap)) return cap;
    return std::min<std::int64_t>(static_cast<std::int64_t>(std::ceil(phi)), cap);
}

RelaxationResult solve_relaxation(const SampleSet& samples,
                                  const std::vector<Eigen::VectorXd>& constraint_points, int M,
                                  int N, double tau, double sigma) {
    samples.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("solve_relaxation: tau must be positive");
    if (sigma < 0.0) throw std::invalid_argument("solve_relaxation: sigma must be >= 0");
    if (constraint_points.size() < static_cast<std::size_t>(samples.count()))
        throw std::invalid_argument(
            "solve_relaxation: constraint set must include the data points");

    const int n = samples.dimension();
    const Eigen::Index aM = alpha(n, M);
    const Eigen::Index aN = alpha(n, N);
    const Eigen::Index dim = aM + aN;
    const Eigen::Index K = samples.count();
    const MultiIndexOrder order(n, std::max(M, N));

    // Design matrices over box-mapped coordinates.
    Eigen::MatrixXd D(K, dim);
    Eigen::VectorXd m;
    for (Eigen::Index k = 0; k < K; ++k) {
        monomial_values(order, samples.domain.to_unit(samples.points.row(k).transpose()), m);
        D.row(k).head(aM) = m.head(aM);
        D.row(k).tail(aN) = -samples.values[k] * m.head(aN);
    }

    QpProblem qp;
    qp.H = 2.0 * (D.transpose() * D);
    qp.H.diagonal().array() += 2.0 * sigma;
    if (sigma == 0.0) {
        // Exact-class data makes D rank deficient along the true-solution
        // ray; a negligible ridge keeps the factorization alive without
        // moving the ratio p/q.
        qp.H.diagonal().array() += 1e-12 * qp.H.diagonal().maxCoeff();
    }
    qp.g = Eigen::VectorXd::Zero(dim);

    const auto ncon = static_cast<Eigen::Index>(constraint_points.size());
    qp.A = Eigen::MatrixXd::Zero(ncon, dim);
    qp.lb = Eigen::VectorXd::Constant(ncon, tau);
    for (Eigen::Index i = 0; i < ncon; ++i) {
        monomial_values(order, samples.domain.to_unit(constraint_points[static_cast<std::size_t>(i)]), m);
        qp.A.row(i).tail(aN) = m.head(aN);
    }

    // q == 2 tau is strictly feasible.
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
    x0[aM] = 2.0 * tau;

    QpSolution sol;
    try {
        sol = solve_qp_active_set(qp, x0);
    } catch (const singular_hessian_error&) {
        throw std::runtime_error(
            "solve_relaxation: singular Hessian (collinear samples); retry with sigma > 0");
    }
    if (!sol.success)
        throw std::runtime_error("solve_relaxation: active-set iteration limit exceeded");

    if (sigma == 0.0 && !sol.active.empty()) {
        // Polish away the ridge bias: re-solve the equality-constrained
        // problem at the final active set with the unridged Hessian.  The
        // active constraints pin the rank-deficient direction, so the KKT
        // system is solvable; keep the polished point only if it stays
        // feasible for every constraint.
        const Eigen::MatrixXd H0 = 2.0 * (D.transpose() * D);
        const auto m = static_cast<Eigen::Index>(sol.active.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim + m, dim + m);
        kkt.topLeftCorner(dim, dim) = H0;
        for (Eigen::Index i = 0; i < m; ++i) {
            kkt.block(dim + i, 0, 1, dim) = qp.A.row(sol.active[static_cast<std::size_t>(i)]);
            kkt.block(0, dim + i, dim, 1) =
                qp.A.row(sol.active[static_cast<std::size_t>(i)]).transpose();
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + m);
        rhs.tail(m).setConstant(tau);
        const Eigen::VectorXd xy = kkt.completeOrthogonalDecomposition().solve(rhs);
        const Eigen::VectorXd polished = xy.head(dim);
        if ((qp.A * polished - qp.lb).minCoeff() >= -1e-9 &&
            (D * polished).squaredNorm() <= (D * sol.x).squaredNorm()) {
            sol.x = polished;
        }
    }

    RelaxationResult out;
    out.a = sol.x.head(aM);
    out.b = sol.x.tail(aN);
    out.residual_norm = (D * sol.x).norm();
    out.coefficient_norm = sol.x.norm();
    out.objective = out.residual_norm * out.residual_norm +
                    sigma * out.coefficient_norm * out.coefficient_norm;
    out.active_count = static_cast<Eigen::Index>(sol.active.size());
    return out;
}

std::pair<Eigen::VectorXd, double> minimize_denominator(const Eigen::VectorXd& b,
                                                        const MultiIndexOrder& order,
                                                        const Box& domain, std::int64_t budget,
                                                        double local_tol, std::uint64_t seed,
                                                        double early_stop) {
    domain.validate();
    if (budget < 1) throw std::invalid_argument("minimize_denominator: budget must be >= 1");
    if (b.size() > order.size())
        throw std::invalid_argument("minimize_denominator: coefficients exceed the ordering");

    const Eigen::MatrixXd starts = lhs(DesignSpec{domain, budget, seed});
    LocalDescentWorkspace ws;

    Eigen::VectorXd best_x;
    double best_q = std::numeric_limits<double>::infinity();
    for (Eigen::Index s = 0; s < starts.rows(); ++s) {
        auto [x, q] = local_descent(b, order, domain, starts.row(s).transpose(), local_tol, ws);
        if (q < best_q) {
            best_q = q;
            best_x = x;
        }
        if (best_q < early_stop) break;
    }
    return {best_x, best_q};
}

std::pair<RationalModel, FitReport> fit_rational_polefree(const SampleSet& samples, int M, int N,
                                                          const SipConfig& config) {
    samples.validate();
    if (!(config.tau > 0.0)) throw std::invalid_argument("fit_rational_polefree: tau must be positive");
    if (config.max_iterations < 1 || config.multistart_cap < 1)
        throw std::invalid_argument("fit_rational_polefree: iteration caps must be positive");
    const int n = samples.dimension();
    if (samples.count() < alpha(n, M) + alpha(n, N))
        throw std::invalid_argument(
            "fit_rational_polefree: under-determined fit, need K >= alpha(M) + alpha(N)");

    const MultiIndexOrder order(n, std::max(M, N));
    const Box unit = Box::unit(n);
    const std::int64_t budget = multistart_budget(n, N, config.multistart_cap);

    std::vector<Eigen::VectorXd> constraints;
    constraints.reserve(static_cast<std::size_t>(samples.count()) + 16);
    for (Eigen::Index k = 0; k < samples.count(); ++k)
        constraints.push_back(samples.points.row(k).transpose());

    FitReport report;
    RelaxationResult rel;
    for (int l = 0; l < config.max_iterations; ++l) {
        auto t0 = std::chrono::steady_clock::now();
        rel = solve_relaxation(samples, constraints, M, N, config.tau, config.sigma);
        report.wall_times["relaxation"] += seconds_since(t0);
        report.relaxation_objectives.push_back(rel.objective);
        report.sip_iterations = l + 1;

        t0 = std::chrono::steady_clock::now();
        // The early-stop cutoff must match the convergence test below:
        // stopping at any q < tau would latch onto a binding cut point
        // (q = tau - epsilon) and declare victory while the denominator
        // still dives somewhere else.
        auto [u_hat, q_min] =
            minimize_denominator(rel.b, order, unit, budget, config.local_tol,
                                 config.seed + 1000003ULL * static_cast<std::uint64_t>(l),
                                 config.tau * (1.0 - 1e-6));
        report.wall_times["global_check"] += seconds_since(t0);

        if (q_min >= config.tau * (1.0 - 1e-6)) break;

        const Eigen::VectorXd x_hat = samples.domain.from_unit(u_hat);
        constraints.push_back(x_hat);
        report.added_points.push_back(x_hat);
        if (l == config.max_iterations - 1) report.converged = false;
    }

    return {RationalModel::make_monomial(M, N, rel.a, rel.b, samples.domain), std::move(report)};
}

}  // namespace ratfit
