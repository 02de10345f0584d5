#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

namespace ratfit {

struct singular_hessian_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// minimize 1/2 x' H x + g' x  subject to  A x >= lb,  with H positive
/// definite.
struct QpProblem {
    Eigen::MatrixXd H;
    Eigen::VectorXd g;
    Eigen::MatrixXd A;
    Eigen::VectorXd lb;
};

struct QpSolution {
    Eigen::VectorXd x;
    Eigen::VectorXd lambda;  // one multiplier per constraint, zero when inactive
    std::vector<Eigen::Index> active;
    int iterations = 0;
    bool success = false;
};

/// Primal active-set method.  x0 must be feasible.  Throws
/// singular_hessian_error when H cannot be factorized.
QpSolution solve_qp_active_set(const QpProblem& qp, const Eigen::VectorXd& x0,
                               int max_iterations = 0);

}  // namespace ratfit
