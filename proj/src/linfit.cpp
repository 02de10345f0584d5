#include "ratfit/linfit.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ratfit {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Flip (a, b) so that q is nonnegative at the domain centroid; if the
// centroid value is exactly zero, make the first nonzero entry of b positive.
void fix_sign(const OrthonormalBasis& basis, const Box& domain, Eigen::VectorXd& a,
              Eigen::VectorXd& b) {
    const Eigen::VectorXd phi = basis.evaluate(domain.centroid());
    const double qc = b.dot(phi.head(b.size()));
    bool flip = false;
    if (qc < 0.0) {
        flip = true;
    } else if (qc == 0.0) {
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            if (b[i] != 0.0) {
                flip = b[i] < 0.0;
                break;
            }
        }
    }
    if (flip) {
        a = -a;
        b = -b;
    }
}

std::pair<RationalModel, FitReport> fit_at_degrees(const SampleSet& samples,
                                                   const BasisBuildResult& built, int M, int N,
                                                   FitReport report) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = samples.dimension();
    const Eigen::Index aM = alpha(n, M);
    const Eigen::Index aN = alpha(n, N);

    const auto VM = built.vandermonde.leftCols(aM);
    const auto VN = built.vandermonde.leftCols(aN);
    const auto F = samples.values.asDiagonal();

    const Eigen::MatrixXd Z = VM.transpose() * (F * VN);
    const Eigen::MatrixXd W = VM * Z - F * VN;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinV);
    Eigen::VectorXd b = svd.matrixV().col(aN - 1);
    Eigen::VectorXd a = Z * b;
    fix_sign(built.basis, samples.domain, a, b);

    report.singular_values.assign(svd.singularValues().data(),
                                  svd.singularValues().data() + svd.singularValues().size());
    report.wall_times["svd"] = seconds_since(t0);

    return {RationalModel::make_orthonormal(built.basis, M, N, std::move(a), std::move(b),
                                            samples.domain),
            std::move(report)};
}

}  // namespace

std::pair<RationalModel, FitReport> fit_rational_onb(const SampleSet& samples, int M, int N) {
    samples.validate();
    if (M < 0 || N < 0) throw std::invalid_argument("fit_rational_onb: negative degree");
    const int n = samples.dimension();
    if (samples.count() < alpha(n, M) + alpha(n, N) - 1)
        throw std::invalid_argument(
            "fit_rational_onb: under-determined fit, need K >= alpha(M) + alpha(N) - 1");

    FitReport report;
    const auto t0 = std::chrono::steady_clock::now();
    const BasisBuildResult built = build_basis(samples, std::max(M, N));
    report.wall_times["basis"] = seconds_since(t0);
    return fit_at_degrees(samples, built, M, N, std::move(report));
}

ReducedDegrees reduce_degrees(int n, const Eigen::MatrixXd& V, const Eigen::VectorXd& f, int M,
                              int N, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("reduce_degrees: eta must be in (0, 1]");
    if (V.cols() < alpha(n, std::max(M, N)))
        throw std::invalid_argument("reduce_degrees: Vandermonde stack too narrow for the degrees");
    if (V.rows() != f.size()) throw std::invalid_argument("reduce_degrees: value count mismatch");

    // A reduction is viable when the W matrix rebuilt at the reduced degree
    // is still (numerically) rank deficient, so a fitting solution survives
    // with one fewer degree.
    const auto viable = [&](const Eigen::VectorXd& values, Eigen::Index num_cols,
                            Eigen::Index den_cols) {
        const auto Vnum = V.leftCols(num_cols);
        const auto Vden = V.leftCols(den_cols);
        const Eigen::MatrixXd Z = Vnum.transpose() * (values.asDiagonal() * Vden);
        const Eigen::MatrixXd W = Vnum * Z - values.asDiagonal() * Vden;
        Eigen::BDCSVD<Eigen::MatrixXd> svd(W);
        const auto& s = svd.singularValues();
        return s[s.size() - 1] < eta * s[0];
    };

    ReducedDegrees out{M, N, false};

    // Denominator phase: shrink the column block that multiplies the
    // denominator coefficients while a fitting solution survives.
    while (out.N >= 1 && viable(f, alpha(n, M), alpha(n, out.N - 1))) --out.N;

    if (f.cwiseAbs().minCoeff() < 1e-300) {
        out.numerator_phase_skipped = true;
        return out;
    }
    // Numerator phase: on the reciprocal data the numerator plays the
    // denominator role, so the same test shrinks M.
    const Eigen::VectorXd finv = f.cwiseInverse();
    while (out.M >= 1 && viable(finv, alpha(n, out.N), alpha(n, out.M - 1))) --out.M;
    return out;
}

std::pair<RationalModel, FitReport> fit_rational_reduced(const SampleSet& samples, int M, int N,
                                                         double eta) {
    samples.validate();
    const int n = samples.dimension();
    if (samples.count() < alpha(n, M) + alpha(n, N) - 1)
        throw std::invalid_argument(
            "fit_rational_reduced: under-determined fit, need K >= alpha(M) + alpha(N) - 1");

    FitReport report;
    auto t0 = std::chrono::steady_clock::now();
    const BasisBuildResult built = build_basis(samples, std::max(M, N));
    report.wall_times["basis"] = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const ReducedDegrees rd = reduce_degrees(n, built.vandermonde, samples.values, M, N, eta);
    report.wall_times["reduction"] = seconds_since(t0);
    report.reduced_from = std::make_pair(M, N);
    report.numerator_phase_skipped = rd.numerator_phase_skipped;

    // The first alpha(d) columns of the stack are the orthonormal basis for
    // any degree d <= max(M, N), so the reduced fit reuses the same build.
    return fit_at_degrees(samples, built, rd.M, rd.N, std::move(report));
}

std::pair<RationalModel, FitReport> fit_polynomial(const SampleSet& samples, int d) {
    samples.validate();
    if (d < 0) throw std::invalid_argument("fit_polynomial: negative degree");
    const int n = samples.dimension();
    if (samples.count() < alpha(n, d))
        throw std::invalid_argument("fit_polynomial: under-determined fit, need K >= alpha(d)");

    FitReport report;
    const auto t0 = std::chrono::steady_clock::now();
    const BasisBuildResult built = build_basis(samples, d);
    report.wall_times["basis"] = seconds_since(t0);

    // With b = (1), the stored denominator is the constant basis function
    // phi_0 = 1/norm0, so the numerator series targets f/norm0.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(built.vandermonde,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    Eigen::VectorXd a = svd.solve(samples.values / built.basis.norm0());
    report.singular_values.assign(svd.singularValues().data(),
                                  svd.singularValues().data() + svd.singularValues().size());
    report.wall_times["svd"] = seconds_since(t0);

    Eigen::VectorXd b = Eigen::VectorXd::Ones(1);
    return {RationalModel::make_orthonormal(built.basis, d, 0, std::move(a), std::move(b),
                                            samples.domain),
            std::move(report)};
}

}  // namespace ratfit
