// Command-line front-end: sample generation, fitting, evaluation,
// benchmarking and L-curve sweeps for multivariate rational approximation.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "ratfit/io.hpp"
#include "ratfit/linfit.hpp"
#include "ratfit/metrics.hpp"
#include "ratfit/sampling.hpp"
#include "ratfit/sipfit.hpp"
#include "ratfit/testfns.hpp"

namespace {

using namespace ratfit;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(std::stod(item));
    return out;
}

Box domain_from_points(const Eigen::MatrixXd& points) {
    Box box;
    for (int c = 0; c < points.cols(); ++c)
        box.bounds.emplace_back(points.col(c).minCoeff(), points.col(c).maxCoeff());
    // Degenerate columns can appear in tiny inputs; widen them a hair.
    for (auto& [lo, hi] : box.bounds)
        if (!(lo < hi)) {
            lo -= 0.5;
            hi += 0.5;
        }
    return box;
}

int worker_count() {
    if (const char* env = std::getenv("RATFIT_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// Uniform random test points on the 2n facets (split evenly) and in the
// interior of the box.
void make_test_points(const Box& domain, Eigen::Index n_face, Eigen::Index n_in,
                      std::uint64_t seed, Eigen::MatrixXd& face, Eigen::MatrixXd& interior) {
    const int n = domain.dimension();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto random_point = [&](Eigen::Index row, Eigen::MatrixXd& dst) {
        for (int c = 0; c < n; ++c) {
            const auto& [lo, hi] = domain.bounds[static_cast<std::size_t>(c)];
            dst(row, c) = lo + (hi - lo) * u01(rng);
        }
    };
    face.resize(n_face, n);
    for (Eigen::Index k = 0; k < n_face; ++k) {
        random_point(k, face);
        const auto facet = static_cast<int>(k % (2 * n));
        const int coord = facet / 2;
        const auto& [lo, hi] = domain.bounds[static_cast<std::size_t>(coord)];
        face(k, coord) = (facet % 2 == 0) ? lo : hi;
    }
    interior.resize(n_in, n);
    for (Eigen::Index k = 0; k < n_in; ++k) random_point(k, interior);
}

struct FitOptions {
    std::string method = "ra";
    int M = 5, N = 5;
    double eta = -1.0;  // negative: pick default from epsilon
    double epsilon = 0.0;
    double tau = 1.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

std::pair<RationalModel, FitReport> run_fit(const SampleSet& samples, const FitOptions& opt) {
    double eta = opt.eta;
    if (eta < 0.0) eta = opt.epsilon > 0.0 ? 10.0 * opt.epsilon : 1e-12;
    if (opt.method == "poly") return fit_polynomial(samples, opt.M);
    if (opt.method == "ra") return fit_rational_onb(samples, opt.M, opt.N);
    if (opt.method == "ra-dr") return fit_rational_reduced(samples, opt.M, opt.N, eta);
    if (opt.method == "ra-sip") {
        SipConfig cfg;
        cfg.tau = opt.tau;
        cfg.sigma = opt.sigma;
        cfg.seed = opt.seed;
        return fit_rational_polefree(samples, opt.M, opt.N, cfg);
    }
    throw std::runtime_error("unknown method '" + opt.method + "'");
}

int cmd_sample(const std::string& strategy, const std::string& function, int dim,
               const std::string& domain_spec, int M, int N, Eigen::Index K_override,
               std::uint64_t seed, const std::string& out) {
    const TestFunction* fn = nullptr;
    Box domain;
    int n = dim;
    if (!function.empty()) {
        fn = &find_function(function);
        domain = fn->domain;
        n = fn->n;
    } else {
        if (n < 1) throw std::runtime_error("need --function or --dim");
        domain = domain_spec.empty() ? Box::unit(n) : parse_domain(domain_spec, n);
    }

    Eigen::MatrixXd points;
    if (strategy == "lhs") {
        Eigen::Index K = K_override > 0 ? K_override : 2 * (alpha(n, M) + alpha(n, N));
        points = lhs(DesignSpec{domain, K, seed});
    } else if (strategy == "dlhd") {
        points = dlhd(n, M, N, domain, seed).points;
    } else {
        throw std::runtime_error("unknown strategy '" + strategy + "'");
    }

    if (fn) {
        Eigen::VectorXd values(points.rows());
        for (Eigen::Index k = 0; k < points.rows(); ++k) values[k] = (*fn)(points.row(k).transpose());
        write_points_csv(out, points, &values);
    } else {
        write_points_csv(out, points, nullptr);
    }
    return 0;
}

int cmd_fit(const std::string& in, const std::string& out, const std::string& report_path,
            const std::string& domain_spec, FitOptions opt) {
    const PointData data = read_points_csv(in);
    if (!data.values) throw std::runtime_error("fit: input CSV has no f column");

    SampleSet samples;
    samples.points = data.points;
    samples.values = *data.values;
    samples.domain = domain_spec.empty() ? domain_from_points(data.points)
                                         : parse_domain(domain_spec, static_cast<int>(data.points.cols()));
    if (opt.epsilon > 0.0) samples.values = add_noise(samples.values, opt.epsilon, opt.seed);

    auto [model, report] = run_fit(samples, opt);
    save_model(out, model);
    const nlohmann::json rj = report_to_json(report);
    if (report_path.empty()) {
        std::cerr << rj.dump(2) << "\n";
    } else {
        std::ofstream rf(report_path);
        rf << rj.dump(2) << "\n";
    }
    return 0;
}

int cmd_eval(const std::string& model_path, const std::string& in, const std::string& out) {
    const RationalModel model = load_model(model_path);
    const PointData data = read_points_csv(in);
    if (data.points.cols() != model.dimension())
        throw std::runtime_error("eval: point dimension does not match the model");
    const Eigen::VectorXd values = model.evaluate_many(data.points);
    write_points_csv(out, data.points, &values);
    return 0;
}

int cmd_lcurve(const std::string& in, const std::string& domain_spec, int M, int N, double tau,
               std::vector<double> sigmas, const std::string& out) {
    if (sigmas.size() < 3) throw std::runtime_error("lcurve: need at least 3 sigma values");
    std::sort(sigmas.begin(), sigmas.end());
    for (std::size_t i = 1; i < sigmas.size(); ++i)
        if (sigmas[i] == sigmas[i - 1]) throw std::runtime_error("lcurve: duplicate sigma values");

    const PointData data = read_points_csv(in);
    if (!data.values) throw std::runtime_error("lcurve: input CSV has no f column");
    SampleSet samples;
    samples.points = data.points;
    samples.values = *data.values;
    samples.domain = domain_spec.empty() ? domain_from_points(data.points)
                                         : parse_domain(domain_spec, static_cast<int>(data.points.cols()));

    std::vector<Eigen::VectorXd> cpts;
    for (Eigen::Index k = 0; k < samples.count(); ++k)
        cpts.push_back(samples.points.row(k).transpose());

    std::vector<std::array<double, 3>> rows;
    for (double sigma : sigmas) {
        const RelaxationResult rel = solve_relaxation(samples, cpts, M, N, tau, sigma);
        rows.push_back({sigma, rel.residual_norm, rel.coefficient_norm});
    }

    // Corner of the log-log curve: maximum perpendicular distance to the
    // chord between the endpoints.
    const auto logpt = [&](std::size_t i) {
        return std::array<double, 2>{std::log10(rows[i][1]), std::log10(rows[i][2])};
    };
    const auto p0 = logpt(0), p1 = logpt(rows.size() - 1);
    const double cx = p1[0] - p0[0], cy = p1[1] - p0[1];
    const double clen = std::hypot(cx, cy);
    std::size_t corner = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto p = logpt(i);
        const double dist = std::abs(cx * (p[1] - p0[1]) - cy * (p[0] - p0[0])) / std::max(clen, 1e-300);
        if (dist > best) {
            best = dist;
            corner = i;
        }
    }
    if (corner == 0 || corner == rows.size() - 1)
        std::cerr << "warning: L-curve corner detected at an endpoint (monotone curve?)\n";

    std::ofstream of(out);
    if (!of) throw std::runtime_error("cannot open " + out + " for writing");
    of << "sigma,residual_norm,coefficient_norm,corner\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        of << format_double(rows[i][0]) << "," << format_double(rows[i][1]) << ","
           << format_double(rows[i][2]) << "," << (i == corner ? 1 : 0) << "\n";
    std::cout << "corner sigma = " << format_double(rows[corner][0]) << "\n";
    return 0;
}

struct BenchCell {
    std::string function;
    std::string method;
    double epsilon;
    std::uint64_t seed;
};

int cmd_bench(const std::string& functions, const std::string& methods, const std::string& epsilons,
              const std::string& seeds, const std::string& thresholds, int M, int N,
              Eigen::Index test_face, Eigen::Index test_interior, const std::string& out) {
    const auto fn_list = split_list(functions);
    const auto method_list = split_list(methods);
    const auto eps_list = parse_doubles(epsilons);
    const auto t_list = parse_doubles(thresholds);
    std::vector<std::uint64_t> seed_list;
    for (const auto& s : split_list(seeds)) seed_list.push_back(std::stoull(s));

    std::vector<BenchCell> cells;
    for (const auto& fn : fn_list)
        for (const auto& m : method_list)
            for (double eps : eps_list)
                for (auto seed : seed_list) cells.push_back({fn, m, eps, seed});

    struct Row {
        BenchCell cell;
        std::vector<PoleMetrics> metrics;  // one per threshold
        double delta_r = 0.0;
        int sip_iterations = 0;
        double fit_seconds = 0.0;
        std::string error;
    };
    std::vector<Row> rows(cells.size());

    std::atomic<std::size_t> next{0};
    auto run_cell = [&](std::size_t idx) {
        Row& row = rows[idx];
        row.cell = cells[idx];
        try {
            const TestFunction& fn = find_function(row.cell.function);
            const DlhdResult design = dlhd(fn.n, M, N, fn.domain, row.cell.seed);
            SampleSet samples;
            samples.points = design.points;
            samples.domain = fn.domain;
            samples.values.resize(design.points.rows());
            for (Eigen::Index k = 0; k < design.points.rows(); ++k)
                samples.values[k] = fn(design.points.row(k).transpose());
            if (row.cell.epsilon > 0.0)
                samples.values = add_noise(samples.values, row.cell.epsilon, row.cell.seed);

            FitOptions opt;
            opt.method = row.cell.method;
            opt.M = M;
            opt.N = N;
            opt.epsilon = row.cell.epsilon;
            opt.seed = row.cell.seed;
            const auto t0 = std::chrono::steady_clock::now();
            auto [model, report] = run_fit(samples, opt);
            row.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            row.sip_iterations = report.sip_iterations.value_or(0);

            Eigen::MatrixXd face, interior;
            make_test_points(fn.domain, test_face, test_interior, 0xfacade + row.cell.seed, face,
                             interior);
            Eigen::VectorXd fv(face.rows()), iv(interior.rows());
            for (Eigen::Index k = 0; k < face.rows(); ++k) fv[k] = fn(face.row(k).transpose());
            for (Eigen::Index k = 0; k < interior.rows(); ++k) iv[k] = fn(interior.row(k).transpose());

            for (double t : t_list)
                row.metrics.push_back(pole_points(model, face, fv, interior, iv, t));
            row.delta_r = row.metrics.empty()
                              ? test_error(model, interior, iv)
                              : row.metrics.front().delta_r;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    const int workers = std::min<int>(worker_count(), static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t idx; (idx = next.fetch_add(1)) < cells.size();) run_cell(idx);
        });
    for (auto& th : pool) th.join();

    std::ofstream of(out);
    if (!of) throw std::runtime_error("cannot open " + out + " for writing");
    of << "function,method,epsilon,seed,delta_r";
    for (double t : t_list) {
        const std::string tag = format_double(t);
        of << ",count_face_t" << tag << ",count_in_t" << tag << ",e_pole_t" << tag
           << ",e_nonpole_t" << tag;
    }
    of << ",sip_iterations,fit_seconds,error\n";
    for (const Row& row : rows) {
        of << row.cell.function << "," << row.cell.method << "," << format_double(row.cell.epsilon)
           << "," << row.cell.seed << "," << format_double(row.delta_r);
        for (std::size_t i = 0; i < t_list.size(); ++i) {
            if (i < row.metrics.size()) {
                const auto& pm = row.metrics[i];
                of << "," << pm.count_face << "," << pm.count_in << "," << format_double(pm.e_pole)
                   << "," << format_double(pm.e_nonpole);
            } else {
                of << ",,,,";
            }
        }
        of << "," << row.sip_iterations << "," << format_double(row.fit_seconds) << ","
           << row.error << "\n";
    }

    // Aggregate section: mean/median/SD of delta_r per (function, method, eps).
    of << "\nfunction,method,epsilon,stat,delta_r\n";
    for (const auto& fn : fn_list)
        for (const auto& m : method_list)
            for (double eps : eps_list) {
                std::vector<double> vals;
                for (const Row& row : rows)
                    if (row.error.empty() && row.cell.function == fn && row.cell.method == m &&
                        row.cell.epsilon == eps)
                        vals.push_back(row.delta_r);
                if (vals.empty()) continue;
                std::sort(vals.begin(), vals.end());
                const double mean =
                    std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
                const double median = vals.size() % 2 == 1
                                          ? vals[vals.size() / 2]
                                          : 0.5 * (vals[vals.size() / 2 - 1] + vals[vals.size() / 2]);
                double sq = 0.0;
                for (double v : vals) sq += (v - mean) * (v - mean);
                const double sd = std::sqrt(sq / static_cast<double>(vals.size()));
                of << fn << "," << m << "," << format_double(eps) << ",mean," << format_double(mean) << "\n";
                of << fn << "," << m << "," << format_double(eps) << ",median," << format_double(median) << "\n";
                of << fn << "," << m << "," << format_double(eps) << ",sd," << format_double(sd) << "\n";
            }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multivariate rational approximation toolkit"};
    app.require_subcommand(1);

    // sample
    std::string strategy = "lhs", function, domain_spec, out;
    int dim = 0, M = 5, N = 5;
    Eigen::Index K_override = 0;
    std::uint64_t seed = 0;
    auto* sample = app.add_subcommand("sample", "generate interpolation points");
    sample->add_option("--strategy", strategy, "lhs or dlhd");
    sample->add_option("--function", function, "test function id (sets domain and values)");
    sample->add_option("--dim", dim, "dimension (when no --function)");
    sample->add_option("--domain", domain_spec, "lo:hi[,lo:hi...]");
    sample->add_option("--M", M, "numerator degree");
    sample->add_option("--N", N, "denominator degree");
    sample->add_option("--K", K_override, "override point count (lhs only)");
    sample->add_option("--seed", seed, "rng seed");
    sample->add_option("--out", out, "output CSV")->required();

    // fit
    std::string in, report_path;
    FitOptions fopt;
    auto* fit = app.add_subcommand("fit", "fit a rational or polynomial model");
    fit->add_option("--method", fopt.method, "poly | ra | ra-dr | ra-sip")->required();
    fit->add_option("--in", in, "samples CSV with f column")->required();
    fit->add_option("--M", fopt.M, "numerator degree (poly: total degree)");
    fit->add_option("--N", fopt.N, "denominator degree");
    fit->add_option("--eta", fopt.eta, "degree-reduction threshold");
    fit->add_option("--epsilon", fopt.epsilon, "relative noise level applied before fitting");
    fit->add_option("--tau", fopt.tau, "denominator lower bound (ra-sip)");
    fit->add_option("--sigma", fopt.sigma, "regularization weight (ra-sip)");
    fit->add_option("--seed", fopt.seed, "rng seed");
    fit->add_option("--domain", domain_spec, "box domain (default: bounding box of the points)");
    fit->add_option("--out", out, "output model JSON")->required();
    fit->add_option("--report", report_path, "fit report JSON (default: stderr)");

    // eval
    std::string model_path;
    auto* eval = app.add_subcommand("eval", "evaluate a saved model at points");
    eval->add_option("--model", model_path)->required();
    eval->add_option("--in", in, "points CSV")->required();
    eval->add_option("--out", out, "output CSV")->required();

    // bench
    std::string functions, methods = "ra", epsilons = "0", seeds = "1,2,3,4,5",
                thresholds = "1e2,1e3";
    Eigen::Index test_face = 40000, test_interior = 100000;
    auto* bench = app.add_subcommand("bench", "benchmark grid of fits");
    bench->add_option("--functions", functions)->required();
    bench->add_option("--methods", methods);
    bench->add_option("--epsilons", epsilons);
    bench->add_option("--seeds", seeds);
    bench->add_option("--t", thresholds, "pole-like thresholds");
    bench->add_option("--M", M);
    bench->add_option("--N", N);
    bench->add_option("--test-face", test_face, "face test points");
    bench->add_option("--test-interior", test_interior, "interior test points");
    bench->add_option("--out", out)->required();

    // lcurve
    std::string sigmas;
    double tau = 1.0;
    auto* lcurve = app.add_subcommand("lcurve", "regularization sweep with corner detection");
    lcurve->add_option("--in", in)->required();
    lcurve->add_option("--M", M);
    lcurve->add_option("--N", N);
    lcurve->add_option("--tau", tau);
    lcurve->add_option("--sigmas", sigmas)->required();
    lcurve->add_option("--domain", domain_spec);
    lcurve->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed())
            return cmd_sample(strategy, function, dim, domain_spec, M, N, K_override, seed, out);
        if (fit->parsed()) return cmd_fit(in, out, report_path, domain_spec, fopt);
        if (eval->parsed()) return cmd_eval(model_path, in, out);
        if (bench->parsed())
            return cmd_bench(functions, methods, epsilons, seeds, thresholds, M, N, test_face,
                             test_interior, out);
        if (lcurve->parsed())
            return cmd_lcurve(in, domain_spec, M, N, tau, parse_doubles(sigmas), out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
