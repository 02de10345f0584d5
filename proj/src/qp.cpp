#include "ratfit/qp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ratfit {

QpSolution solve_qp_active_set(const QpProblem& qp, const Eigen::VectorXd& x0,
                               int max_iterations) {
    const Eigen::Index dim = qp.H.rows();
    const Eigen::Index ncon = qp.A.rows();
    if (qp.H.cols() != dim || qp.g.size() != dim)
        throw std::invalid_argument("solve_qp_active_set: inconsistent objective sizes");
    if (qp.A.cols() != dim || qp.lb.size() != ncon)
        throw std::invalid_argument("solve_qp_active_set: inconsistent constraint sizes");
    if (x0.size() != dim) throw std::invalid_argument("solve_qp_active_set: bad start size");
    if ((qp.A * x0 - qp.lb).minCoeff() < -1e-9)
        throw std::invalid_argument("solve_qp_active_set: start point is infeasible");

    Eigen::LLT<Eigen::MatrixXd> llt(qp.H);
    if (llt.info() != Eigen::Success)
        throw singular_hessian_error("solve_qp_active_set: Hessian is not positive definite");

    if (max_iterations <= 0) max_iterations = 50 * static_cast<int>(dim + ncon) + 100;

    QpSolution sol;
    sol.x = x0;
    std::vector<Eigen::Index> W;
    std::vector<bool> in_W(static_cast<std::size_t>(ncon), false);
    Eigen::VectorXd lambdaW;
    bool last_step_was_full = false;
    double last_objective = std::numeric_limits<double>::infinity();
    double last_predicted = 0.0;
    int crawl = 0;
    int stagnant = 0;
    double best_objective = std::numeric_limits<double>::infinity();
    std::size_t peak_working_set = 0;
    int no_progress = 0;

    for (sol.iterations = 0; sol.iterations < max_iterations; ++sol.iterations) {
        const Eigen::VectorXd c = qp.H * sol.x + qp.g;
        Eigen::VectorXd p;
        if (W.empty()) {
            p = -llt.solve(c);
            lambdaW.resize(0);
        } else {
            // Solve the equality-constrained subproblem through the full KKT
            // system rather than a Schur complement built on H^{-1}: the
            // active constraints pin down directions where H is nearly
            // singular, so the KKT matrix stays well conditioned even when H
            // alone does not.
            const auto m = static_cast<Eigen::Index>(W.size());
            Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim + m, dim + m);
            kkt.topLeftCorner(dim, dim) = qp.H;
            for (Eigen::Index i = 0; i < m; ++i) {
                kkt.block(dim + i, 0, 1, dim) = qp.A.row(W[static_cast<std::size_t>(i)]);
                kkt.block(0, dim + i, dim, 1) =
                    qp.A.row(W[static_cast<std::size_t>(i)]).transpose();
            }
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + m);
            rhs.head(dim) = -c;
            // Minimum-norm solve: a nearly dependent working set makes the
            // KKT matrix rank deficient, and a plain QR solve then returns a
            // step polluted by a huge near-null-space component.
            const Eigen::VectorXd py = kkt.completeOrthogonalDecomposition().solve(rhs);
            p = py.head(dim);
            lambdaW = -py.tail(m);
        }

        // Converged when the step is negligible or it no longer buys a
        // meaningful decrease of the objective (the residual step left by a
        // nearly singular Hessian never does).  A full step lands exactly on
        // the working-set optimum in exact arithmetic, so a second full step
        // without measurable progress can only be round-off churn: treat the
        // point as stationary as well.
        const double predicted_decrease = -(c.dot(p) + 0.5 * p.dot(qp.H * p));
        const double objective = 0.5 * sol.x.dot(qp.H * sol.x) + qp.g.dot(sol.x);

        // Anti-cycling guard for degenerate vertices: a constraint that is
        // nearly dependent on the working set can be added at a zero-length
        // step and immediately dropped again on a meaningless huge negative
        // multiplier, forever.  If the objective has not improved for many
        // iterations and the working set is no longer growing, the iterate is
        // numerically optimal; accept it.
        if (objective < best_objective - 1e-10 * (1.0 + std::abs(objective))) {
            best_objective = objective;
            no_progress = 0;
        } else if (W.size() > peak_working_set) {
            no_progress = 0;
        } else {
            ++no_progress;
        }
        peak_working_set = std::max(peak_working_set, W.size());
        if (no_progress > 100) {
            sol.success = true;
            break;
        }

        const bool stalled = last_step_was_full &&
                             objective >= last_objective -
                                              1e-10 * (1.0 + std::abs(last_objective));
        // A full step realizes its predicted decrease exactly in exact
        // arithmetic.  Repeated full steps that realize almost none of it
        // mean the subproblem solve is at its accuracy floor (near-singular
        // KKT system); the iterate is numerically stationary.
        if (last_step_was_full) {
            if (last_objective - objective < 0.1 * last_predicted)
                ++crawl;
            else
                crawl = 0;
        }
        // After a full step the subproblem is solved and the next predicted
        // decrease must collapse; a prediction that fails to contract across
        // consecutive full steps is a numerical crawl along a near-null
        // direction that would otherwise run for tens of thousands of
        // iterations.
        if (last_step_was_full && predicted_decrease >= 0.5 * last_predicted)
            ++stagnant;
        else
            stagnant = 0;
        if (p.lpNorm<Eigen::Infinity>() <= 1e-11 * (1.0 + sol.x.lpNorm<Eigen::Infinity>()) ||
            predicted_decrease <= 1e-12 * (1.0 + std::abs(objective)) || stalled ||
            crawl >= 5 || stagnant >= 5) {
            // Stationary on the current working set; check multiplier signs.
            if (W.empty()) {
                sol.success = true;
                break;
            }
            Eigen::Index worst = 0;
            const double lmin = lambdaW.minCoeff(&worst);
            if (lmin >= -1e-10 * std::max(1.0, lambdaW.cwiseAbs().maxCoeff())) {
                // Snap to the exact optimum of the final working set; the
                // iterates only approach it up to the round-off the descent
                // accumulates.  Keep the iterate if the snap is infeasible.
                const auto m = static_cast<Eigen::Index>(W.size());
                Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim + m, dim + m);
                kkt.topLeftCorner(dim, dim) = qp.H;
                for (Eigen::Index i = 0; i < m; ++i) {
                    kkt.block(dim + i, 0, 1, dim) = qp.A.row(W[static_cast<std::size_t>(i)]);
                    kkt.block(0, dim + i, dim, 1) =
                        qp.A.row(W[static_cast<std::size_t>(i)]).transpose();
                }
                Eigen::VectorXd rhs(dim + m);
                rhs.head(dim) = -qp.g;
                for (Eigen::Index i = 0; i < m; ++i)
                    rhs[dim + i] = qp.lb[W[static_cast<std::size_t>(i)]];
                const Eigen::VectorXd xy = kkt.completeOrthogonalDecomposition().solve(rhs);
                const Eigen::VectorXd snapped = xy.head(dim);
                if ((qp.A * snapped - qp.lb).minCoeff() >= -1e-9) sol.x = snapped;
                sol.success = true;
                break;
            }
            in_W[static_cast<std::size_t>(W[static_cast<std::size_t>(worst)])] = false;
            W.erase(W.begin() + worst);
            last_step_was_full = false;
            crawl = 0;
            continue;
        }

        // Longest step along p that stays feasible.
        double step = 1.0;
        Eigen::Index blocking = -1;
        for (Eigen::Index i = 0; i < ncon; ++i) {
            if (in_W[static_cast<std::size_t>(i)]) continue;
            const double d = qp.A.row(i).dot(p);
            if (d >= -1e-14 * qp.A.row(i).norm() * p.norm()) continue;
            const double t = (qp.lb[i] - qp.A.row(i).dot(sol.x)) / d;
            if (t < step) {
                step = std::max(t, 0.0);
                blocking = i;
            }
        }
        sol.x += step * p;
        last_step_was_full = blocking < 0;
        last_objective = objective;
        last_predicted = predicted_decrease;
        if (blocking >= 0) {
            W.push_back(blocking);
            in_W[static_cast<std::size_t>(blocking)] = true;
        }
    }

    sol.lambda = Eigen::VectorXd::Zero(ncon);
    for (std::size_t i = 0; i < W.size(); ++i)
        if (lambdaW.size() > static_cast<Eigen::Index>(i)) sol.lambda[W[i]] = lambdaW[static_cast<Eigen::Index>(i)];
    sol.active = std::move(W);
    return sol;
}

}  // namespace ratfit
