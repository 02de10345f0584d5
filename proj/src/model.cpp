#include "ratfit/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace ratfit {

RationalModel::RationalModel(BasisKind kind, std::optional<OrthonormalBasis> basis,
                             MultiIndexOrder order, int M, int N, Eigen::VectorXd a,
                             Eigen::VectorXd b, Box domain)
    : kind_(kind),
      basis_(std::move(basis)),
      order_(std::move(order)),
      M_(M),
      N_(N),
      a_(std::move(a)),
      b_(std::move(b)),
      domain_(std::move(domain)) {
    domain_.validate();
    const int n = domain_.dimension();
    if (order_.dimension() != n) throw std::invalid_argument("RationalModel: order/domain dimension mismatch");
    if (M_ < 0 || N_ < 0) throw std::invalid_argument("RationalModel: negative degree");
    if (order_.max_degree() < std::max(M_, N_))
        throw std::invalid_argument("RationalModel: ordering does not cover the requested degrees");
    if (a_.size() != alpha(n, M_)) throw std::invalid_argument("RationalModel: numerator coefficient length mismatch");
    if (b_.size() != alpha(n, N_)) throw std::invalid_argument("RationalModel: denominator coefficient length mismatch");
    if (b_.isZero(0.0)) throw std::invalid_argument("RationalModel: denominator coefficients are all zero");
    if (kind_ == BasisKind::orthonormal) {
        if (!basis_) throw std::invalid_argument("RationalModel: orthonormal kind needs a basis");
        if (std::abs(b_.norm() - 1.0) > 1e-8)
            throw std::invalid_argument("RationalModel: orthonormal kind requires ||b|| = 1");
    }
}

RationalModel RationalModel::make_orthonormal(OrthonormalBasis basis, int M, int N,
                                              Eigen::VectorXd a, Eigen::VectorXd b, Box domain) {
    MultiIndexOrder order = basis.order();
    return RationalModel(BasisKind::orthonormal, std::move(basis), std::move(order), M, N,
                         std::move(a), std::move(b), std::move(domain));
}

RationalModel RationalModel::make_monomial(int M, int N, Eigen::VectorXd a, Eigen::VectorXd b,
                                           Box domain) {
    MultiIndexOrder order(domain.dimension(), std::max(M, N));
    return RationalModel(BasisKind::monomial, std::nullopt, std::move(order), M, N,
                         std::move(a), std::move(b), std::move(domain));
}

const OrthonormalBasis& RationalModel::basis() const {
    if (!basis_) throw std::logic_error("RationalModel: monomial model has no orthonormal basis");
    return *basis_;
}

void RationalModel::basis_values(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    if (kind_ == BasisKind::orthonormal) {
        out = basis_->evaluate(x);
        return;
    }
    // Monomial values at the box-mapped coordinates, built by the same
    // multiply-by-variable sweep as the ordering itself.
    const Eigen::VectorXd u = domain_.to_unit(x);
    out.resize(order_.size());
    out[0] = 1.0;
    for (std::int64_t i = 1; i < order_.size(); ++i)
        out[i] = u[order_.variable(i)] * out[order_.parent(i)];
}

double RationalModel::numerator(const Eigen::VectorXd& x) const {
    Eigen::VectorXd phi;
    basis_values(x, phi);
    return a_.dot(phi.head(a_.size()));
}

double RationalModel::denominator(const Eigen::VectorXd& x) const {
    Eigen::VectorXd phi;
    basis_values(x, phi);
    return b_.dot(phi.head(b_.size()));
}

double RationalModel::operator()(const Eigen::VectorXd& x) const {
    Eigen::VectorXd phi;
    basis_values(x, phi);
    const double p = a_.dot(phi.head(a_.size()));
    const double q = b_.dot(phi.head(b_.size()));
    if (q == 0.0) return p >= 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
    return p / q;
}

Eigen::VectorXd RationalModel::evaluate_many(const Eigen::MatrixXd& points) const {
    if (points.cols() != dimension())
        throw std::invalid_argument("RationalModel::evaluate_many: point dimension mismatch");
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index k = 0; k < points.rows(); ++k) out[k] = (*this)(points.row(k).transpose());
    return out;
}

}  // namespace ratfit
