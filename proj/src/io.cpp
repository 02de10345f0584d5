#include "ratfit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ratfit {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

double parse_double(std::string_view s) {
    double v;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("CSV: malformed number '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

Eigen::VectorXd json_to_vector(const nlohmann::json& j) {
    Eigen::VectorXd v(j.size());
    Eigen::Index i = 0;
    for (const auto& e : j) v[i++] = e.get<double>();
    return v;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

}  // namespace

PointData read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV: empty file " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split(line, ',');
    bool has_values = !header.empty() && header.back() == "f";
    const int n = static_cast<int>(header.size()) - (has_values ? 1 : 0);
    if (n < 1) throw std::runtime_error("CSV: header must name at least one coordinate");

    std::vector<double> flat;
    Eigen::Index rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (static_cast<int>(cells.size()) != static_cast<int>(header.size()))
            throw std::runtime_error("CSV: row width mismatch in " + path.string());
        for (const auto& c : cells) flat.push_back(parse_double(c));
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("CSV: no data rows in " + path.string());

    PointData out;
    out.points.resize(rows, n);
    if (has_values) out.values.emplace(rows);
    const int width = n + (has_values ? 1 : 0);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (int c = 0; c < n; ++c) out.points(r, c) = flat[static_cast<std::size_t>(r * width + c)];
        if (has_values) (*out.values)[r] = flat[static_cast<std::size_t>(r * width + n)];
    }
    return out;
}

void write_points_csv(const std::filesystem::path& path, const Eigen::MatrixXd& points,
                      const Eigen::VectorXd* values) {
    if (values && values->size() != points.rows())
        throw std::invalid_argument("write_points_csv: value count mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (int c = 0; c < points.cols(); ++c) out << (c ? "," : "") << "x" << (c + 1);
    if (values) out << ",f";
    out << "\n";
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
        for (int c = 0; c < points.cols(); ++c)
            out << (c ? "," : "") << format_double(points(r, c));
        if (values) out << "," << format_double((*values)[r]);
        out << "\n";
    }
}

nlohmann::json model_to_json(const RationalModel& model) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["n"] = model.dimension();
    j["M"] = model.numerator_degree();
    j["N"] = model.denominator_degree();
    j["a"] = vector_to_json(model.numerator_coeffs());
    j["b"] = vector_to_json(model.denominator_coeffs());
    nlohmann::json dom = nlohmann::json::array();
    for (const auto& [lo, hi] : model.domain().bounds) dom.push_back({lo, hi});
    j["domain"] = dom;
    if (model.kind() == BasisKind::orthonormal) {
        j["basis_kind"] = "orthonormal";
        const auto& basis = model.basis();
        j["L"] = basis.max_degree();
        j["norm0"] = basis.norm0();
        nlohmann::json R = nlohmann::json::array();
        for (Eigen::Index r = 0; r < basis.recurrence().rows(); ++r)
            for (Eigen::Index c = 0; c < basis.recurrence().cols(); ++c)
                R.push_back(basis.recurrence()(r, c));
        j["R"] = std::move(R);
    } else {
        j["basis_kind"] = "monomial";
        // The affine map onto [-1,1]^n applied before evaluating monomials.
        nlohmann::json map;
        const Eigen::VectorXd center = model.domain().centroid();
        const Eigen::VectorXd half = 0.5 * (model.domain().upper() - model.domain().lower());
        map["center"] = vector_to_json(center);
        map["halfwidth"] = vector_to_json(half);
        j["map"] = std::move(map);
    }
    return j;
}

RationalModel model_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("model file: unsupported format_version");
    const int n = j.at("n").get<int>();
    const int M = j.at("M").get<int>();
    const int N = j.at("N").get<int>();
    Eigen::VectorXd a = json_to_vector(j.at("a"));
    Eigen::VectorXd b = json_to_vector(j.at("b"));
    Box domain;
    for (const auto& pair : j.at("domain"))
        domain.bounds.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    if (domain.dimension() != n) throw std::runtime_error("model file: domain dimension mismatch");

    const std::string kind = j.at("basis_kind").get<std::string>();
    if (kind == "monomial")
        return RationalModel::make_monomial(M, N, std::move(a), std::move(b), std::move(domain));
    if (kind != "orthonormal") throw std::runtime_error("model file: unknown basis_kind " + kind);

    const int L = j.at("L").get<int>();
    MultiIndexOrder order(n, L);
    const auto m = order.size();
    const auto& Rj = j.at("R");
    if (static_cast<std::int64_t>(Rj.size()) != m * m)
        throw std::runtime_error("model file: recurrence matrix size mismatch");
    Eigen::MatrixXd R(m, m);
    std::int64_t idx = 0;
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c) R(r, c) = Rj[static_cast<std::size_t>(idx++)].get<double>();
    OrthonormalBasis basis(std::move(order), std::move(R), j.at("norm0").get<double>());
    return RationalModel::make_orthonormal(std::move(basis), M, N, std::move(a), std::move(b),
                                           std::move(domain));
}

void save_model(const std::filesystem::path& path, const RationalModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << model_to_json(model).dump(2) << "\n";
}

RationalModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    return model_from_json(j);
}

nlohmann::json report_to_json(const FitReport& report) {
    nlohmann::json j;
    j["singular_values"] = report.singular_values;
    if (report.reduced_from)
        j["reduced_from"] = {report.reduced_from->first, report.reduced_from->second};
    j["numerator_phase_skipped"] = report.numerator_phase_skipped;
    if (report.sip_iterations) j["sip_iterations"] = *report.sip_iterations;
    j["converged"] = report.converged;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : report.added_points) pts.push_back(vector_to_json(p));
    j["added_points"] = std::move(pts);
    if (!report.relaxation_objectives.empty())
        j["relaxation_objectives"] = report.relaxation_objectives;
    j["wall_times"] = report.wall_times;
    return j;
}

Box parse_domain(const std::string& spec, int n) {
    Box box;
    for (const auto& part : split(spec, ',')) {
        const std::size_t pos = part.find(':');
        if (pos == std::string_view::npos)
            throw std::runtime_error("malformed domain spec '" + spec + "', expected lo:hi[,lo:hi...]");
        box.bounds.emplace_back(parse_double(part.substr(0, pos)), parse_double(part.substr(pos + 1)));
    }
    if (n > 0 && box.dimension() == 1 && n > 1)
        box.bounds.assign(static_cast<std::size_t>(n), box.bounds[0]);
    if (n > 0 && box.dimension() != n)
        throw std::runtime_error("domain spec dimension does not match --dim");
    box.validate();
    return box;
}

}  // namespace ratfit
