#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratfit/samples.hpp"

namespace ratfit {

/// An analytic benchmark function: closed form, pole-free box domain, and
/// the true numerator/denominator degrees where those are polynomials.
struct TestFunction {
    enum class Kind { rational, poly_denominator, transcendental, polynomial };

    std::string id;  // "f1" .. "f22"; the numbering has gaps at f6 and f11
    std::string description;
    int n = 0;
    Box domain;
    std::optional<int> true_numerator_degree;    // absent when not a polynomial
    std::optional<int> true_denominator_degree;  // absent when not a polynomial
    Kind kind = Kind::transcendental;
    double (*closed_form)(const Eigen::VectorXd&) = nullptr;

    /// Closed-form value; rejects points outside the domain.
    double operator()(const Eigen::VectorXd& x) const;
};

/// All 20 catalog entries, in id order.
const std::vector<TestFunction>& catalog();

/// Lookup by id; throws std::invalid_argument for unknown ids.
const TestFunction& find_function(std::string_view id);

inline double evaluate(std::string_view id, const Eigen::VectorXd& x) {
    return find_function(id)(x);
}

}  // namespace ratfit
