#include "fracperim/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracperim {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    out << body;
    out.flush();
    if (!out) throw IoError("write failure: " + path);
}

json intervals_json(const IntervalUnion& u) {
    json items = json::array();
    for (const Interval1D& iv : u.set().parts()) items.push_back({iv.lo, iv.hi});
    return json{{"kind", "intervals"}, {"items", items}};
}

json polygon_json(const PolygonRegion& poly) {
    json verts = json::array();
    for (const Vec2& v : poly.vertices()) verts.push_back({v.x, v.y});
    return json{{"kind", "polygon"}, {"vertices", verts}};
}

json balls_json(const BallSet& balls) {
    json items = json::array();
    for (const BallDesc& b : balls.balls()) items.push_back({{"c", b.c}, {"r", b.r}});
    return json{{"kind", "balls"}, {"dim", balls.dim()}, {"items", items}};
}

json recursive_json(const RecursiveFamily& fam, int level) {
    json params = json::object();
    params["a"] = fam.a();
    params["b"] = fam.b();
    params["lambda"] = fam.lambda();
    json pieces = json::array();
    for (int k = 1; k <= level; ++k) {
        const long cnt = fam.piece_count(k);
        for (long i = 0; i < cnt; ++i) {
            json piece{{"level", k}, {"index", i}};
            if (fam.kind() == RecursiveFamily::Kind::Exploded) {
                const Disk d = *fam.piece_disk(k, i);
                piece["disk"] = {{"c", {d.c.x, d.c.y}}, {"r", d.r}};
            } else {
                const PolygonRegion piece_poly = fam.piece_polygon(k, i);
                json verts = json::array();
                for (const Vec2& v : piece_poly.vertices()) verts.push_back({v.x, v.y});
                piece["polygon"] = verts;
                if (auto hole = fam.piece_hole(k, i))
                    piece["hole"] = {{"c", {hole->c.x, hole->c.y}}, {"r", hole->r}};
            }
            pieces.push_back(std::move(piece));
        }
    }
    return json{{"kind", "recursive"},
                {"name", fam.name()},
                {"params", params},
                {"level", level},
                {"pieces", pieces}};
}

SetDesc parse_set(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::runtime_error("set description: missing \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    SetDesc desc;
    if (kind == "intervals") {
        desc.kind = SetDesc::Kind::Intervals;
        std::vector<Interval1D> items;
        for (const json& it : j.at("items")) {
            if (!it.is_array() || it.size() != 2)
                throw std::runtime_error("intervals: items must be [lo, hi] pairs");
            items.push_back({it[0].get<double>(), it[1].get<double>()});
        }
        desc.intervals.emplace(std::move(items));
        return desc;
    }
    if (kind == "polygon") {
        desc.kind = SetDesc::Kind::Polygon;
        std::vector<Vec2> verts;
        for (const json& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2)
                throw std::runtime_error("polygon: vertices must be [x, y] pairs");
            verts.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        // the quadratic self-intersection scan is skipped for huge inputs
        const bool check_simple = verts.size() <= 2048;
        desc.polygon.emplace(std::move(verts), check_simple);
        return desc;
    }
    if (kind == "balls") {
        desc.kind = SetDesc::Kind::Balls;
        const int dim = j.at("dim").get<int>();
        std::vector<BallDesc> items;
        for (const json& it : j.at("items")) {
            BallDesc b;
            b.c = it.at("c").get<std::vector<double>>();
            b.r = it.at("r").get<double>();
            items.push_back(std::move(b));
        }
        desc.balls.emplace(dim, std::move(items));
        return desc;
    }
    if (kind == "recursive") {
        desc.kind = SetDesc::Kind::Recursive;
        desc.rec_name = j.at("name").get<std::string>();
        desc.rec_level = j.at("level").get<int>();
        desc.rec_params = j.value("params", json::object());
        return desc;
    }
    throw std::runtime_error("set description: unknown kind \"" + kind + "\"");
}

SetDesc load_set_file(const std::string& path) {
    const std::string body = read_text_file(path);
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return parse_set(j);
}

RecursiveFamily family_from_desc(const SetDesc& desc) {
    if (desc.kind != SetDesc::Kind::Recursive)
        throw std::runtime_error("family_from_desc: not a recursive description");
    const int max_level = std::max(desc.rec_level, 3);
    if (desc.rec_name == "koch") return RecursiveFamily::koch(max_level);
    if (desc.rec_name == "sierpinski_dendrite")
        return RecursiveFamily::sierpinski_dendrite(max_level);
    if (desc.rec_name == "sponge") return RecursiveFamily::sponge(max_level);
    if (desc.rec_name == "exploded") {
        const int b = desc.rec_params.value("b", 2);
        const double sigma = desc.rec_params.value("sigma", 0.5);
        return RecursiveFamily::exploded(b, sigma, max_level);
    }
    throw std::runtime_error("family_from_desc: unknown family \"" + desc.rec_name + "\"");
}

json estimate_json(const Estimate& e) {
    return json{{"value", e.value}, {"error", e.error}, {"rigorous", e.rigorous}};
}

json perimeter_json(const PerimeterBreakdown& pb) {
    return json{{"s", pb.s},
                {"local", pb.local.value},
                {"nonlocal", pb.nonlocal.value},
                {"total", pb.total.value},
                {"err_local", pb.local.error},
                {"err_nonlocal", pb.nonlocal.error},
                {"rigorous", pb.total.rigorous},
                {"window", pb.window_desc}};
}

json scan_summary_json(const AsymptoticScan& scan) {
    json out{{"limit", scan.limit.value},
             {"limit_err", scan.limit.error},
             {"fit_residual", scan.fit_residual},
             {"monotone_top3", scan.monotone_top3},
             {"target_valid", scan.target_valid}};
    if (scan.target_valid) {
        out["target"] = scan.target;
        out["rel_dev"] = scan.rel_dev;
    } else {
        out["target"] = nullptr;
        out["rel_dev"] = nullptr;
    }
    return out;
}

json threshold_summary_json(const ThresholdFit& fit) {
    json out{{"s_star", fit.s_star}, {"ci", fit.ci}, {"method", fit.method}};
    out["dim_f"] = fit.dim_f;
    if (!fit.finite_perimeter_branch) {
        out["s_star_lower"] = fit.s_star_lower;
        out["s_star_upper"] = fit.s_star_upper;
    }
    return out;
}

json boxfit_json(const BoxCountSeries& series, const BoxFit& fit) {
    return json{{"dim", fit.dim},
                {"intercept", fit.intercept},
                {"residual", fit.residual},
                {"local_slopes", fit.local_slopes},
                {"narrow_range", fit.narrow_range},
                {"scales", series.deltas.size()}};
}

namespace {
void csv_row(std::string& out, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
}
} // namespace

std::string scan_csv(const AsymptoticScan& scan) {
    std::string out;
    csv_row(out, {"s", "scaled_local", "err_local", "scaled_nonlocal", "err_nonlocal",
                  "scaled_total"});
    for (const ScanRow& r : scan.rows)
        csv_row(out, {fmt_double(r.s), fmt_double(r.scaled_local.value),
                      fmt_double(r.scaled_local.error), fmt_double(r.scaled_nonlocal.value),
                      fmt_double(r.scaled_nonlocal.error), fmt_double(r.scaled_total.value)});
    return out;
}

std::string threshold_csv(const ThresholdFit& fit) {
    std::string out;
    if (fit.finite_perimeter_branch) {
        csv_row(out, {"s", "scaled_local"});
        for (size_t i = 0; i < fit.s_grid.size(); ++i)
            csv_row(out, {fmt_double(fit.s_grid[i]), fmt_double(fit.scaled_local[i])});
        return out;
    }
    csv_row(out, {"s", "rate", "rate_err"});
    for (size_t i = 0; i < fit.s_grid.size(); ++i)
        csv_row(out, {fmt_double(fit.s_grid[i]), fmt_double(fit.level_rates[i]),
                      fmt_double(fit.rate_errs[i])});
    return out;
}

std::string boxcount_csv(const BoxCountSeries& series) {
    std::string out;
    csv_row(out, {"delta", "count"});
    for (size_t i = 0; i < series.deltas.size(); ++i)
        csv_row(out, {fmt_double(series.deltas[i]), std::to_string(series.counts[i])});
    return out;
}

std::string content_csv(const std::vector<double>& rho_list,
                        const std::vector<Estimate>& ratios) {
    std::string out;
    csv_row(out, {"rho", "ratio", "err", "rigorous"});
    for (size_t i = 0; i < rho_list.size(); ++i)
        csv_row(out, {fmt_double(rho_list[i]), fmt_double(ratios[i].value),
                      fmt_double(ratios[i].error), ratios[i].rigorous ? "1" : "0"});
    return out;
}

} // namespace fracperim
