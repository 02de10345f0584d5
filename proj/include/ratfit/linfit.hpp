#pragma once

#include <Eigen/Core>
#include <utility>

#include "ratfit/model.hpp"
#include "ratfit/samples.hpp"

namespace ratfit {

/// Linearized rational least-squares fit in the data-adapted orthonormal
/// basis: b is the right singular vector of W = V_M Z - F V_N for the
/// smallest singular value, a = Z b.  The sign of b is fixed so the
/// denominator is nonnegative at the domain centroid.
std::pair<RationalModel, FitReport> fit_rational_onb(const SampleSet& samples, int M, int N);

struct ReducedDegrees {
    int M;
    int N;
    bool numerator_phase_skipped = false;
};

/// Spurious-pole degree reduction.  V is the K x alpha(max(M,N)) orthonormal
/// Vandermonde stack for dimension n, f the sample values.  First shrinks N
/// while the W matrix rebuilt with the denominator block at degree N-1 stays
/// numerically rank deficient (sigma_min < eta * sigma_max), then shrinks M
/// the same way against the reciprocal data, where the numerator plays the
/// denominator role.  The reciprocal phase is skipped (and flagged) when any
/// |f_k| < 1e-300.  Degrees floor at zero.
ReducedDegrees reduce_degrees(int n, const Eigen::MatrixXd& V, const Eigen::VectorXd& f,
                              int M, int N, double eta);

/// Degree reduction followed by the linearized fit at the reduced degrees.
std::pair<RationalModel, FitReport> fit_rational_reduced(const SampleSet& samples, int M, int N,
                                                         double eta);

/// Polynomial least squares of degree d via SVD with relative singular value
/// cutoff 1e-12.  The result is a RationalModel with N = 0 and b = (1).
std::pair<RationalModel, FitReport> fit_polynomial(const SampleSet& samples, int d);

}  // namespace ratfit
