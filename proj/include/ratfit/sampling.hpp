#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "ratfit/samples.hpp"

namespace ratfit {

struct DesignSpec {
    Box domain;
    Eigen::Index count = 1;
    std::uint64_t seed = 0;
};

/// Latin hypercube sample: per coordinate, the K values occupy distinct
/// equal-width strata, with a uniform random offset inside each stratum.
/// Deterministic under the seed.
Eigen::MatrixXd lhs(const DesignSpec& spec);

struct DlhdResult {
    Eigen::MatrixXd points;   // face points first (2n blocks), then interior
    Eigen::Index total;       // K = 2(alpha_n(M) + alpha_n(N))
    Eigen::Index per_face;    // K_fc, floored when the division is not exact
    Eigen::Index interior;    // K_in = K - 2n * K_fc
};

/// Decoupled Latin hypercube design: an independent (n-1)-dimensional LHS on
/// each of the 2n facets plus an n-dimensional interior LHS.  Requires n >= 2
/// and K_in >= 0.
DlhdResult dlhd(int n, int M, int N, const Box& domain, std::uint64_t seed);

/// Multiplicative Gaussian noise: v_k -> v_k (1 + epsilon z_k) with z_k
/// standard normal.  Deterministic under the seed.
Eigen::VectorXd add_noise(const Eigen::VectorXd& values, double epsilon, std::uint64_t seed);

}  // namespace ratfit
