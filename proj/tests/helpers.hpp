#pragma once

#include <Eigen/Core>
#include <random>

#include "ratfit/samples.hpp"
#include "ratfit/sampling.hpp"
#include "ratfit/testfns.hpp"

namespace ratfit::testing {

inline Eigen::MatrixXd random_points(const Box& box, Eigen::Index count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Eigen::MatrixXd pts(count, box.dimension());
    for (Eigen::Index k = 0; k < count; ++k)
        for (int c = 0; c < box.dimension(); ++c) {
            const auto& [lo, hi] = box.bounds[static_cast<std::size_t>(c)];
            pts(k, c) = lo + (hi - lo) * u01(rng);
        }
    return pts;
}

template <typename F>
Eigen::VectorXd evaluate_at(const F& fn, const Eigen::MatrixXd& pts) {
    Eigen::VectorXd v(pts.rows());
    for (Eigen::Index k = 0; k < pts.rows(); ++k) v[k] = fn(pts.row(k).transpose());
    return v;
}

template <typename F>
SampleSet lhs_samples(const F& fn, const Box& box, Eigen::Index count, std::uint64_t seed) {
    SampleSet s;
    s.domain = box;
    s.points = lhs(DesignSpec{box, count, seed});
    s.values = evaluate_at(fn, s.points);
    return s;
}

inline SampleSet dlhd_samples(const TestFunction& fn, int M, int N, std::uint64_t seed) {
    SampleSet s;
    s.domain = fn.domain;
    s.points = dlhd(fn.n, M, N, fn.domain, seed).points;
    s.values = evaluate_at(fn, s.points);
    return s;
}

}  // namespace ratfit::testing
