#include "ratfit/orthobasis.hpp"

#include <cmath>
#include <utility>

namespace ratfit {

OrthonormalBasis::OrthonormalBasis(MultiIndexOrder order, Eigen::MatrixXd recurrence, double norm0)
    : order_(std::move(order)), recurrence_(std::move(recurrence)), norm0_(norm0) {
    const auto m = order_.size();
    if (recurrence_.rows() != m || recurrence_.cols() != m)
        throw std::invalid_argument("OrthonormalBasis: recurrence matrix size mismatch");
    if (!(norm0_ > 0.0)) throw std::invalid_argument("OrthonormalBasis: norm0 must be positive");
    for (std::int64_t i = 1; i < m; ++i)
        if (!(recurrence_(i, i) > 0.0))
            throw std::invalid_argument("OrthonormalBasis: nonpositive diagonal recurrence coefficient");
}

Eigen::VectorXd OrthonormalBasis::evaluate(const Eigen::VectorXd& x) const {
    if (x.size() != dimension())
        throw std::invalid_argument("OrthonormalBasis::evaluate: point dimension mismatch");
    const auto m = order_.size();
    Eigen::VectorXd y(m);
    y[0] = 1.0 / norm0_;
    for (std::int64_t i = 1; i < m; ++i) {
        double yi = x[order_.variable(i)] * y[order_.parent(i)];
        yi -= recurrence_.col(i).head(i).dot(y.head(i));
        y[i] = yi / recurrence_(i, i);
    }
    return y;
}

double OrthonormalBasis::evaluate_series(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& x) const {
    if (coeffs.size() != size())
        throw std::invalid_argument("OrthonormalBasis::evaluate_series: coefficient length mismatch");
    return coeffs.dot(evaluate(x));
}

BasisBuildResult build_basis(const SampleSet& samples, int L) {
    samples.validate();
    const int n = samples.dimension();
    MultiIndexOrder order(n, L);
    const std::int64_t m = order.size();
    const Eigen::Index K = samples.count();

    Eigen::MatrixXd V(K, m);
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(m, m);
    const double norm0 = std::sqrt(static_cast<double>(K));
    V.col(0).setConstant(1.0 / norm0);

    double max_diag = norm0;
    Eigen::VectorXd vhat(K);
    for (std::int64_t i = 1; i < m; ++i) {
        vhat = samples.points.col(order.variable(i)).cwiseProduct(V.col(order.parent(i)));
        // Classical Gram-Schmidt, applied twice; the correction coefficients
        // of both passes accumulate into the stored recurrence.
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXd h = V.leftCols(i).transpose() * vhat;
            vhat.noalias() -= V.leftCols(i) * h;
            R.col(i).head(i) += h;
        }
        const double rii = vhat.norm();
        if (rii <= 1e-10 * max_diag)
            throw rank_deficiency_error(
                i, "build_basis: rank-deficient sample set at basis column " + std::to_string(i) +
                       " (collinear samples or too few points for degree " + std::to_string(L) + ")");
        R(i, i) = rii;
        max_diag = std::max(max_diag, rii);
        V.col(i) = vhat / rii;
    }

    return BasisBuildResult{OrthonormalBasis(std::move(order), std::move(R), norm0), std::move(V)};
}

}  // namespace ratfit
