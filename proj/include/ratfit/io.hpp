#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "ratfit/model.hpp"

namespace ratfit {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

struct PointData {
    Eigen::MatrixXd points;                 // K x n
    std::optional<Eigen::VectorXd> values;  // present when the CSV has an f column
};

/// CSV with mandatory header "x1,...,xn[,f]".
PointData read_points_csv(const std::filesystem::path& path);
void write_points_csv(const std::filesystem::path& path, const Eigen::MatrixXd& points,
                      const Eigen::VectorXd* values);

nlohmann::json model_to_json(const RationalModel& model);
RationalModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const RationalModel& model);
RationalModel load_model(const std::filesystem::path& path);

nlohmann::json report_to_json(const FitReport& report);

/// Domain spec syntax "lo:hi[,lo:hi...]"; a single pair is broadcast to n
/// dimensions when n is given.
Box parse_domain(const std::string& spec, int n = 0);

}  // namespace ratfit
