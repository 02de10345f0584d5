#include "ratfit/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace ratfit {

double test_error(const RationalModel& model, const Eigen::MatrixXd& test_points,
                  const Eigen::VectorXd& test_values) {
    if (test_points.rows() != test_values.size())
        throw std::invalid_argument("test_error: point/value count mismatch");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < test_points.rows(); ++k) {
        const double r = model(test_points.row(k).transpose());
        const double d = r - test_values[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

PoleMetrics pole_points(const RationalModel& model, const Eigen::MatrixXd& face_points,
                        const Eigen::VectorXd& face_values, const Eigen::MatrixXd& interior_points,
                        const Eigen::VectorXd& interior_values, double t) {
    if (!(t > 1.0)) throw std::invalid_argument("pole_points: threshold t must exceed 1");

    PoleMetrics out;
    out.t = t;

    double total_sq = 0.0;
    double pole_sq = 0.0;

    auto scan = [&](const Eigen::MatrixXd& pts, const Eigen::VectorXd& vals, Eigen::Index& count) {
        const double fmax = vals.size() > 0 ? vals.cwiseAbs().maxCoeff() : 0.0;
        const double floor = std::max(1.0, fmax);
        for (Eigen::Index k = 0; k < pts.rows(); ++k) {
            const double r = model(pts.row(k).transpose());
            const double d = r - vals[k];
            total_sq += d * d;
            if (std::abs(r) / floor > t) {
                ++count;
                pole_sq += d * d;
            }
        }
    };
    scan(face_points, face_values, out.count_face);
    scan(interior_points, interior_values, out.count_in);

    out.delta_r = std::sqrt(total_sq);
    out.e_pole = std::sqrt(pole_sq);
    out.e_nonpole = std::sqrt(std::max(0.0, total_sq - pole_sq));
    return out;
}

}  // namespace ratfit
