#pragma once

#include <Eigen/Core>
#include <vector>

namespace ratfit {

/// Closed box domain, the product of per-coordinate intervals [lo, hi].
struct Box {
    std::vector<std::pair<double, double>> bounds;

    Box() = default;
    explicit Box(std::vector<std::pair<double, double>> b) : bounds(std::move(b)) {}

    /// [-1, 1]^n
    static Box unit(int n) {
        return Box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(n), {-1.0, 1.0}));
    }

    int dimension() const { return static_cast<int>(bounds.size()); }

    bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
    void validate() const;  // lo < hi per coordinate

    Eigen::VectorXd lower() const;
    Eigen::VectorXd upper() const;
    Eigen::VectorXd centroid() const;

    /// Affine map onto [-1, 1]^n and its inverse.
    Eigen::VectorXd to_unit(const Eigen::VectorXd& x) const;
    Eigen::VectorXd from_unit(const Eigen::VectorXd& u) const;

    bool operator==(const Box&) const = default;
};

/// Scattered samples of a scalar function over a box: K points (rows), one
/// value per point.
struct SampleSet {
    Eigen::MatrixXd points;  // K x n
    Eigen::VectorXd values;  // K
    Box domain;

    int dimension() const { return static_cast<int>(points.cols()); }
    Eigen::Index count() const { return points.rows(); }

    /// K >= 1, value count matches, every point inside the closed box.
    void validate() const;
};

}  // namespace ratfit
