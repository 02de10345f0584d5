#include "ratfit/samples.hpp"

#include <stdexcept>

namespace ratfit {

bool Box::contains(const Eigen::VectorXd& x, double tol) const {
    if (x.size() != dimension()) return false;
    for (int i = 0; i < dimension(); ++i) {
        const auto& [lo, hi] = bounds[static_cast<std::size_t>(i)];
        if (x[i] < lo - tol || x[i] > hi + tol) return false;
    }
    return true;
}

void Box::validate() const {
    if (bounds.empty()) throw std::invalid_argument("Box: empty domain");
    for (const auto& [lo, hi] : bounds)
        if (!(lo < hi)) throw std::invalid_argument("Box: each coordinate needs lo < hi");
}

Eigen::VectorXd Box::lower() const {
    Eigen::VectorXd v(dimension());
    for (int i = 0; i < dimension(); ++i) v[i] = bounds[static_cast<std::size_t>(i)].first;
    return v;
}

Eigen::VectorXd Box::upper() const {
    Eigen::VectorXd v(dimension());
    for (int i = 0; i < dimension(); ++i) v[i] = bounds[static_cast<std::size_t>(i)].second;
    return v;
}

Eigen::VectorXd Box::centroid() const { return 0.5 * (lower() + upper()); }

Eigen::VectorXd Box::to_unit(const Eigen::VectorXd& x) const {
    Eigen::VectorXd u(dimension());
    for (int i = 0; i < dimension(); ++i) {
        const auto& [lo, hi] = bounds[static_cast<std::size_t>(i)];
        u[i] = (2.0 * x[i] - (lo + hi)) / (hi - lo);
    }
    return u;
}

Eigen::VectorXd Box::from_unit(const Eigen::VectorXd& u) const {
    Eigen::VectorXd x(dimension());
    for (int i = 0; i < dimension(); ++i) {
        const auto& [lo, hi] = bounds[static_cast<std::size_t>(i)];
        x[i] = 0.5 * ((hi - lo) * u[i] + lo + hi);
    }
    return x;
}

void SampleSet::validate() const {
    domain.validate();
    if (points.rows() < 1) throw std::invalid_argument("SampleSet: need at least one point");
    if (points.cols() != domain.dimension())
        throw std::invalid_argument("SampleSet: point dimension does not match domain");
    if (values.size() != points.rows())
        throw std::invalid_argument("SampleSet: value count does not match point count");
    for (Eigen::Index k = 0; k < points.rows(); ++k)
        if (!domain.contains(points.row(k).transpose(), 1e-12))
            throw std::invalid_argument("SampleSet: point outside the box domain");
}

}  // namespace ratfit
