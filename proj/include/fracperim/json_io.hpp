#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracperim/asymptotics.hpp"
#include "fracperim/dimension.hpp"
#include "fracperim/fractals.hpp"
#include "fracperim/geometry.hpp"
#include "fracperim/perimeter.hpp"

namespace fracperim {

// file-system failures (missing input, unwritable output) as opposed to
// malformed content or out-of-domain parameters
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SetDesc {
    enum class Kind { Intervals, Polygon, Balls, Recursive };
    Kind kind = Kind::Polygon;
    std::optional<IntervalUnion> intervals;
    std::optional<PolygonRegion> polygon;
    std::optional<BallSet> balls;
    std::string rec_name; // koch | sierpinski_dendrite | sponge | exploded
    int rec_level = 0;
    nlohmann::json rec_params;
};

nlohmann::json intervals_json(const IntervalUnion& u);
nlohmann::json polygon_json(const PolygonRegion& poly);
nlohmann::json balls_json(const BallSet& balls);
// includes the flattened piece list for levels 1..level
nlohmann::json recursive_json(const RecursiveFamily& fam, int level);

SetDesc parse_set(const nlohmann::json& j);
SetDesc load_set_file(const std::string& path);
// reconstructs the family of a Kind::Recursive description
RecursiveFamily family_from_desc(const SetDesc& desc);

nlohmann::json estimate_json(const Estimate& e);
nlohmann::json perimeter_json(const PerimeterBreakdown& pb);
nlohmann::json scan_summary_json(const AsymptoticScan& scan);
nlohmann::json threshold_summary_json(const ThresholdFit& fit);
nlohmann::json boxfit_json(const BoxCountSeries& series, const BoxFit& fit);

std::string scan_csv(const AsymptoticScan& scan);
std::string threshold_csv(const ThresholdFit& fit);
std::string boxcount_csv(const BoxCountSeries& series);
std::string content_csv(const std::vector<double>& rho_list, const std::vector<Estimate>& ratios);

std::string fmt_double(double v); // %.17g, '.' decimal point
void write_text_file(const std::string& path, const std::string& body);
std::string read_text_file(const std::string& path);

} // namespace fracperim
