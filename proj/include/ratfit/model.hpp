#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratfit/multiindex.hpp"
#include "ratfit/orthobasis.hpp"
#include "ratfit/samples.hpp"

namespace ratfit {

enum class BasisKind { orthonormal, monomial };

/// A fitted rational function r(x) = p(x)/q(x) over a box domain.
///
/// Orthonormal kind: p and q are series in a data-adapted orthonormal basis,
/// with the normalization ||b||_2 = 1.  Monomial kind: p and q are monomial
/// series over coordinates affinely mapped to [-1, 1]^n (the map is part of
/// the model, so evaluation takes physical coordinates).
class RationalModel {
public:
    static RationalModel make_orthonormal(OrthonormalBasis basis, int M, int N,
                                          Eigen::VectorXd a, Eigen::VectorXd b, Box domain);
    static RationalModel make_monomial(int M, int N,
                                       Eigen::VectorXd a, Eigen::VectorXd b, Box domain);

    BasisKind kind() const { return kind_; }
    int dimension() const { return domain_.dimension(); }
    int numerator_degree() const { return M_; }
    int denominator_degree() const { return N_; }
    const Eigen::VectorXd& numerator_coeffs() const { return a_; }
    const Eigen::VectorXd& denominator_coeffs() const { return b_; }
    const Box& domain() const { return domain_; }

    /// Only valid for the orthonormal kind.
    const OrthonormalBasis& basis() const;
    /// Monomial ordering backing the model (either kind).
    const MultiIndexOrder& order() const { return order_; }

    double numerator(const Eigen::VectorXd& x) const;
    double denominator(const Eigen::VectorXd& x) const;
    /// p(x)/q(x); returns +-inf when the denominator is exactly zero.
    double operator()(const Eigen::VectorXd& x) const;

    Eigen::VectorXd evaluate_many(const Eigen::MatrixXd& points) const;

private:
    RationalModel(BasisKind kind, std::optional<OrthonormalBasis> basis, MultiIndexOrder order,
                  int M, int N, Eigen::VectorXd a, Eigen::VectorXd b, Box domain);

    void basis_values(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;

    BasisKind kind_;
    std::optional<OrthonormalBasis> basis_;  // orthonormal kind only
    MultiIndexOrder order_;
    int M_, N_;
    Eigen::VectorXd a_, b_;
    Box domain_;
};

/// Diagnostics gathered during a fit.
struct FitReport {
    std::vector<double> singular_values;        // of W, descending
    std::optional<std::pair<int, int>> reduced_from;
    bool numerator_phase_skipped = false;
    std::optional<int> sip_iterations;
    bool converged = true;
    std::vector<Eigen::VectorXd> added_points;  // physical coordinates
    std::vector<double> relaxation_objectives;
    std::map<std::string, double> wall_times;   // stage -> seconds
};

}  // namespace ratfit
