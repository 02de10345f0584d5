#include "ratfit/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ratfit/multiindex.hpp"

namespace ratfit {
namespace {

// One LHS coordinate column over [lo, hi].
void lhs_column(Eigen::Ref<Eigen::MatrixXd> out, Eigen::Index col, double lo, double hi,
                std::mt19937_64& rng) {
    const Eigen::Index K = out.rows();
    std::vector<Eigen::Index> strata(static_cast<std::size_t>(K));
    std::iota(strata.begin(), strata.end(), Eigen::Index{0});
    std::shuffle(strata.begin(), strata.end(), rng);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double width = (hi - lo) / static_cast<double>(K);
    for (Eigen::Index k = 0; k < K; ++k)
        out(k, col) = lo + width * (static_cast<double>(strata[static_cast<std::size_t>(k)]) + u01(rng));
}

Eigen::MatrixXd lhs_with_rng(const Box& domain, Eigen::Index K, std::mt19937_64& rng) {
    const int n = domain.dimension();
    Eigen::MatrixXd points(K, n);
    for (int j = 0; j < n; ++j) {
        const auto& [lo, hi] = domain.bounds[static_cast<std::size_t>(j)];
        lhs_column(points, j, lo, hi, rng);
    }
    return points;
}

}  // namespace

Eigen::MatrixXd lhs(const DesignSpec& spec) {
    spec.domain.validate();
    if (spec.count < 1) throw std::invalid_argument("lhs: need at least one point");
    std::mt19937_64 rng(spec.seed);
    return lhs_with_rng(spec.domain, spec.count, rng);
}

DlhdResult dlhd(int n, int M, int N, const Box& domain, std::uint64_t seed) {
    domain.validate();
    if (domain.dimension() != n) throw std::invalid_argument("dlhd: domain dimension mismatch");
    if (n < 2) throw std::invalid_argument("dlhd: faces require dimension n >= 2");
    if (M < 0 || N < 0) throw std::invalid_argument("dlhd: negative degree");

    const Eigen::Index K = 2 * (alpha(n, M) + alpha(n, N));
    const Eigen::Index K_fc = (alpha(n - 1, M) + alpha(n - 1, N)) / n;  // floored
    const Eigen::Index K_in = K - 2 * n * K_fc;
    if (K_in < 0) throw std::invalid_argument("dlhd: degrees too small relative to the dimension");

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd points(K, n);
    Eigen::Index row = 0;

    // One independent (n-1)-dimensional LHS per facet, fixed coordinate at
    // its bound.  Facets enumerated as (coordinate, lower) then (coordinate,
    // upper).
    for (int j = 0; j < n; ++j) {
        for (int side = 0; side < 2; ++side) {
            Box face;
            for (int i = 0; i < n; ++i)
                if (i != j) face.bounds.push_back(domain.bounds[static_cast<std::size_t>(i)]);
            const Eigen::MatrixXd fp = lhs_with_rng(face, K_fc, rng);
            const double fixed = side == 0 ? domain.bounds[static_cast<std::size_t>(j)].first
                                           : domain.bounds[static_cast<std::size_t>(j)].second;
            for (Eigen::Index k = 0; k < K_fc; ++k, ++row) {
                int src = 0;
                for (int i = 0; i < n; ++i)
                    points(row, i) = (i == j) ? fixed : fp(k, src++);
            }
        }
    }

    if (K_in > 0) points.bottomRows(K_in) = lhs_with_rng(domain, K_in, rng);

    return DlhdResult{std::move(points), K, K_fc, K_in};
}

Eigen::VectorXd add_noise(const Eigen::VectorXd& values, double epsilon, std::uint64_t seed) {
    if (epsilon < 0.0) throw std::invalid_argument("add_noise: epsilon must be >= 0");
    if (epsilon == 0.0) return values;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd out(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) out[k] = values[k] * (1.0 + epsilon * gauss(rng));
    return out;
}

}  // namespace ratfit
