#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ratfit/multiindex.hpp"
#include "ratfit/samples.hpp"

namespace ratfit {

/// Raised when a diagonal recurrence coefficient collapses during the basis
/// construction, i.e. the sample set is not a set of linear independence for
/// the requested degree.
struct rank_deficiency_error : std::runtime_error {
    rank_deficiency_error(std::int64_t col, const std::string& what)
        : std::runtime_error(what), column(col) {}
    std::int64_t column;
};

/// Polynomial basis orthonormal under the discrete inner product
/// <h, g> = sum_k h(x^(k)) g(x^(k)) over the construction points.  Stores the
/// recurrence coefficients r_{i,j}; evaluation anywhere replays the
/// multiply-by-variable sweep of the construction and never touches a raw
/// monomial.
class OrthonormalBasis {
public:
    OrthonormalBasis(MultiIndexOrder order, Eigen::MatrixXd recurrence, double norm0);

    int dimension() const { return order_.dimension(); }
    int max_degree() const { return order_.max_degree(); }
    std::int64_t size() const { return order_.size(); }
    const MultiIndexOrder& order() const { return order_; }
    const Eigen::MatrixXd& recurrence() const { return recurrence_; }
    double norm0() const { return norm0_; }

    /// All basis function values (phi_0(x), ..., phi_{alpha(L)-1}(x)).
    Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;

    /// Dot product of coeffs (length alpha(L)) with evaluate(x).
    double evaluate_series(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& x) const;

private:
    MultiIndexOrder order_;
    Eigen::MatrixXd recurrence_;  // alpha(L) x alpha(L), columns j >= i populated
    double norm0_;                // sqrt(K) of the construction set
};

struct BasisBuildResult {
    OrthonormalBasis basis;
    Eigen::MatrixXd vandermonde;  // K x alpha(L), orthonormal columns
};

/// Stieltjes sweep over the sample points: produces the orthonormal
/// Vandermonde-like matrix and the recurrence coefficients.  Gram-Schmidt is
/// performed twice per column.  Throws rank_deficiency_error when a diagonal
/// coefficient falls below 1e-10 times the largest diagonal seen so far.
BasisBuildResult build_basis(const SampleSet& samples, int L);

}  // namespace ratfit
