#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "ratfit/model.hpp"
#include "ratfit/samples.hpp"

namespace ratfit {

struct SipConfig {
    double tau = 1.0;
    double sigma = 0.0;
    int max_iterations = 200;
    std::int64_t multistart_cap = 5000;
    double local_tol = 1e-8;
    std::uint64_t seed = 0;
};

/// Number of multistart local descents for a denominator with nnl nonlinear
/// terms, nnl = alpha_n(N) - (n + 1): ceil(2042.023 * exp(0.029 nnl)),
/// capped.
std::int64_t multistart_budget(int n, int N, std::int64_t cap);

struct RelaxationResult {
    Eigen::VectorXd a;  // monomial coefficients, box-mapped coordinates
    Eigen::VectorXd b;
    double objective = 0.0;         // residual^2 + sigma * coefficient^2
    double residual_norm = 0.0;
    double coefficient_norm = 0.0;
    Eigen::Index active_count = 0;
};

/// Constrained least-squares relaxation: minimize
/// sum_k (p(x^k) - f_k q(x^k))^2 + sigma (||a||^2 + ||b||^2) subject to
/// q >= tau at every constraint point.  The constraint list must include the
/// data points; points are given in physical coordinates.
RelaxationResult solve_relaxation(const SampleSet& samples,
                                  const std::vector<Eigen::VectorXd>& constraint_points, int M,
                                  int N, double tau, double sigma);

/// Multistart box-constrained minimization of the monomial series q over the
/// domain: up to `budget` projected quasi-Newton descents from seeded
/// LHS-distributed starts.  Stops early as soon as any local result drops
/// below `early_stop`.  Returns the best minimizer and value found.
std::pair<Eigen::VectorXd, double> minimize_denominator(
    const Eigen::VectorXd& b, const MultiIndexOrder& order, const Box& domain,
    std::int64_t budget, double local_tol, std::uint64_t seed,
    double early_stop = -std::numeric_limits<double>::infinity());

/// Alternating pole-free fit: solve the relaxation, globally check the
/// denominator over the box, add the most-violating point as a new
/// constraint, repeat until q >= tau (1 - 1e-6) at the global-check
/// minimizer.  Returns a monomial-kind model.
std::pair<RationalModel, FitReport> fit_rational_polefree(const SampleSet& samples, int M, int N,
                                                          const SipConfig& config = {});

}  // namespace ratfit
