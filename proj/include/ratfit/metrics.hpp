#pragma once

#include <Eigen/Core>

#include "ratfit/model.hpp"

namespace ratfit {

/// Discrete L2 test error: sqrt of the sum of squared residuals over the
/// test set.  A point with an exactly zero denominator contributes +infinity.
double test_error(const RationalModel& model, const Eigen::MatrixXd& test_points,
                  const Eigen::VectorXd& test_values);

/// Pole-like point statistics over a face/interior test split at threshold t.
struct PoleMetrics {
    double t = 0.0;
    Eigen::Index count_face = 0;
    Eigen::Index count_in = 0;
    double e_pole = 0.0;     // root sum of squared residuals over pole-like points
    double e_nonpole = 0.0;  // sqrt(delta_r^2 - e_pole^2), clamped at 0
    double delta_r = 0.0;    // over the union of face and interior points
};

/// A point is pole-like when |r(x)| / max(1, max|f|) > t, with the data
/// maximum taken separately over face and interior test values.  Requires
/// t > 1.
PoleMetrics pole_points(const RationalModel& model, const Eigen::MatrixXd& face_points,
                        const Eigen::VectorXd& face_values, const Eigen::MatrixXd& interior_points,
                        const Eigen::VectorXd& interior_values, double t);

}  // namespace ratfit
