#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracperim/asymptotics.hpp"
#include "fracperim/dimension.hpp"
#include "fracperim/fractals.hpp"
#include "fracperim/json_io.hpp"
#include "fracperim/parallel.hpp"
#include "fracperim/perimeter.hpp"
#include "fracperim/version.hpp"

using namespace fracperim;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 I/O, 2 domain, 3 resolution or internal failure
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;
constexpr int kExitResolution = 3;

void emit(const std::string& out_path, const std::string& body) {
    if (out_path.empty())
        std::fputs(body.c_str(), stdout);
    else
        write_text_file(out_path, body);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// "lo:hi:step" or comma-separated values
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    const size_t c1 = text.find(':');
    if (c1 != std::string::npos) {
        const size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) throw std::invalid_argument("grid: expected lo:hi:step");
        const double lo = std::stod(text.substr(0, c1));
        const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(text.substr(c2 + 1));
        if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
        for (double v = lo; v <= hi + 1e-12 * step; v += step) out.push_back(v);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stod(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("grid: empty");
    return out;
}

// "3^-1..3^-6" or comma-separated values; result must decrease
std::vector<double> parse_deltas(const std::string& text) {
    const size_t caret = text.find("^-");
    const size_t dots = text.find("..");
    if (caret != std::string::npos && dots != std::string::npos) {
        const double base = std::stod(text.substr(0, caret));
        const int k1 = std::stoi(text.substr(caret + 2, dots - caret - 2));
        const size_t caret2 = text.find("^-", dots);
        if (caret2 == std::string::npos)
            throw std::invalid_argument("deltas: expected B^-k1..B^-k2");
        const int k2 = std::stoi(text.substr(caret2 + 2));
        if (!(base > 1.0) || k2 < k1) throw std::invalid_argument("deltas: bad range");
        std::vector<double> out;
        for (int k = k1; k <= k2; ++k) out.push_back(std::pow(base, -k));
        return out;
    }
    return parse_grid(text);
}

struct GlobalOpts {
    int threads = hardware_threads();
    long seed = 0;
    double tol = 1e-6;
};

json meta_json(const GlobalOpts& g, const std::string& command, const json& config) {
    return json{{"tool", "fracperim"}, {"version", kVersion}, {"command", command},
                {"threads", g.threads}, {"seed", g.seed}, {"config", config}};
}

QuadraturePolicy make_policy(const GlobalOpts& g) {
    QuadraturePolicy pol;
    pol.rel_tol = g.tol;
    return pol;
}

// Window assembled from --omega {full|ball|rect} plus coordinates
struct WindowOpts {
    std::string kind = "full";
    std::vector<double> ball{0.0, 0.0, 1.0};     // cx cy r
    std::vector<double> rect{0.0, 0.0, 1.0, 1.0}; // x0 y0 x1 y1
};

void add_window_options(CLI::App* cmd, WindowOpts& w) {
    cmd->add_option("--omega", w.kind, "window kind: full, ball or rect")
        ->check(CLI::IsMember({"full", "ball", "rect"}));
    cmd->add_option("--ball", w.ball, "ball window: cx cy r")->expected(3);
    cmd->add_option("--rect", w.rect, "rect window: x0 y0 x1 y1")->expected(4);
}

Window make_window(const WindowOpts& w) {
    if (w.kind == "full") return Window::full();
    if (w.kind == "ball") {
        if (!(w.ball[2] > 0.0)) throw std::domain_error("window ball radius must be positive");
        return Window::disk_window({w.ball[0], w.ball[1]}, w.ball[2]);
    }
    if (!(w.rect[2] > w.rect[0]) || !(w.rect[3] > w.rect[1]))
        throw std::domain_error("window rect must have positive extent");
    return Window::rect_window(Box2{{w.rect[0], w.rect[1]}, {w.rect[2], w.rect[3]}});
}

json window_config(const WindowOpts& w) {
    json j{{"omega", w.kind}};
    if (w.kind == "ball") j["ball"] = w.ball;
    if (w.kind == "rect") j["rect"] = w.rect;
    return j;
}

SlicePtr slice_of_desc(const SetDesc& desc) {
    switch (desc.kind) {
    case SetDesc::Kind::Polygon:
        return slice_polygon(*desc.polygon);
    case SetDesc::Kind::Balls: {
        if (desc.balls->dim() != 2)
            throw std::domain_error("2D computations need dim = 2 ball sets");
        std::vector<SlicePtr> parts;
        for (const Disk& d : desc.balls->disks()) parts.push_back(slice_disk(d));
        return slice_union(std::move(parts));
    }
    case SetDesc::Kind::Recursive: {
        const RecursiveFamily fam = family_from_desc(desc);
        if (fam.kind() == RecursiveFamily::Kind::Koch)
            return slice_polygon(koch_snowflake(desc.rec_level));
        std::vector<SlicePtr> parts;
        for (int k = 1; k <= desc.rec_level; ++k)
            for (long i = 0; i < fam.piece_count(k); ++i) parts.push_back(fam.piece(k, i));
        return slice_union(std::move(parts));
    }
    case SetDesc::Kind::Intervals:
        throw std::domain_error("interval sets are one-dimensional; use a full-line window");
    }
    throw std::domain_error("unsupported set kind");
}

// polygon outline as a closed polyline for box counting
std::vector<Vec2> outline_of_desc(const SetDesc& desc) {
    if (desc.kind == SetDesc::Kind::Polygon) {
        std::vector<Vec2> pts = desc.polygon->vertices();
        pts.push_back(pts.front());
        return pts;
    }
    if (desc.kind == SetDesc::Kind::Recursive) {
        const RecursiveFamily fam = family_from_desc(desc);
        if (fam.kind() == RecursiveFamily::Kind::Koch) {
            std::vector<Vec2> pts = koch_snowflake(desc.rec_level).vertices();
            pts.push_back(pts.front());
            return pts;
        }
        throw std::domain_error("box counting needs a polygon outline");
    }
    throw std::domain_error("box counting needs a polygon outline");
}

int cmd_gen(const GlobalOpts& g, const std::string& kind, int level, int b, double sigma, int n,
            double a, int depth, const std::string& out_path) {
    json set;
    json config{{"kind", kind}};
    if (kind == "koch") {
        set = polygon_json(koch_snowflake(level));
        config["level"] = level;
    } else if (kind == "sierpinski-dendrite" || kind == "sponge") {
        const RecursiveFamily fam = kind == "sponge"
                                        ? RecursiveFamily::sponge(std::max(level, 3))
                                        : RecursiveFamily::sierpinski_dendrite(std::max(level, 3));
        set = recursive_json(fam, level);
        config["level"] = level;
    } else if (kind == "exploded") {
        set = balls_json(exploded_fractal(b, sigma, n, level));
        config["b"] = b;
        config["sigma"] = sigma;
        config["n"] = n;
        config["levels"] = level;
    } else if (kind == "lacunary") {
        set = intervals_json(lacunary_set(a, depth));
        config["a"] = a;
        config["depth"] = depth;
    } else {
        throw std::domain_error("unknown set kind \"" + kind + "\"");
    }
    set["meta"] = meta_json(g, "gen", config);
    emit(out_path, dump(set));
    return 0;
}

int cmd_perimeter(const GlobalOpts& g, const std::string& set_path, double s, const WindowOpts& w,
                  bool require_rigorous, const std::string& out_path) {
    if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("s must lie in (0,1)");
    const SetDesc desc = load_set_file(set_path);
    PerimeterBreakdown pb;
    if (desc.kind == SetDesc::Kind::Intervals) {
        if (w.kind == "full")
            pb = frac_perimeter_1d(*desc.intervals, s);
        else if (w.kind == "rect")
            pb = frac_perimeter_1d(*desc.intervals, Interval1D{w.rect[0], w.rect[2]}, s);
        else
            throw std::domain_error("interval sets take a full or rect (interval) window");
    } else {
        pb = frac_perimeter(slice_of_desc(desc), make_window(w), s, make_policy(g));
    }
    if (require_rigorous && !pb.total.rigorous)
        throw std::runtime_error("result not rigorous at the requested resolution");

    json out = perimeter_json(pb);
    json config{{"set", set_path}, {"s", s}, {"tol", g.tol},
                {"require_rigorous", require_rigorous}};
    config.update(window_config(w));
    out["meta"] = meta_json(g, "perimeter", config);
    emit(out_path, dump(out));
    return 0;
}

// two-stage grid: coarse rate scan localizes the sign change, then a fine
// bracket is refit at full depth
std::vector<double> auto_threshold_grid(const RecursiveFamily& fam, int levels,
                                        const QuadraturePolicy& pol) {
    QuadraturePolicy coarse_pol = pol;
    coarse_pol.rel_tol = std::max(pol.rel_tol, 1e-4);
    const std::vector<double> coarse{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const ThresholdFit probe =
        dimF_threshold(fam, coarse, std::min(levels, 3), coarse_pol);
    const double c = std::min(std::max(probe.s_star, 0.125), 0.875);
    std::vector<double> grid;
    for (int i = -3; i <= 3; ++i) grid.push_back(c + 0.025 * i);
    return grid;
}

int cmd_dim(const GlobalOpts& g, const std::string& method, const std::string& set_path,
            const std::string& spec_name, int levels, int b, double sigma,
            const std::string& s_grid_text, const std::string& deltas_text, bool grid_cells,
            const std::string& rhos_text, double content_r, int tree_depth,
            const std::string& csv_path, const std::string& out_path) {
    const QuadraturePolicy pol = make_policy(g);
    json config{{"method", method}, {"tol", g.tol}};

    if (method == "box") {
        if (set_path.empty()) throw std::domain_error("dim box needs --set");
        const SetDesc desc = load_set_file(set_path);
        const std::vector<double> deltas = parse_deltas(deltas_text);
        const BoxCountSeries series =
            box_count_series(outline_of_desc(desc), deltas, true,
                             grid_cells ? CountMode::GridCells : CountMode::Cover);
        const BoxFit fit = minkowski_dimension_boxes(series);
        if (!csv_path.empty()) write_text_file(csv_path, boxcount_csv(series));
        json out = boxfit_json(series, fit);
        config["set"] = set_path;
        config["deltas"] = deltas_text;
        config["counter"] = grid_cells ? "cells" : "cover";
        out["meta"] = meta_json(g, "dim", config);
        emit(out_path, dump(out));
        return 0;
    }

    if (method == "threshold") {
        RecursiveFamily fam = [&]() {
            if (!spec_name.empty()) {
                const int ml = std::max(levels, 3);
                if (spec_name == "koch") return RecursiveFamily::koch(ml);
                if (spec_name == "sierpinski_dendrite" || spec_name == "sierpinski-dendrite")
                    return RecursiveFamily::sierpinski_dendrite(ml);
                if (spec_name == "sponge") return RecursiveFamily::sponge(ml);
                if (spec_name == "exploded") return RecursiveFamily::exploded(b, sigma, ml);
                throw std::domain_error("unknown family \"" + spec_name + "\"");
            }
            if (set_path.empty()) throw std::domain_error("dim threshold needs --spec or --set");
            return family_from_desc(load_set_file(set_path));
        }();
        const std::vector<double> s_grid = s_grid_text.empty()
                                               ? auto_threshold_grid(fam, levels, pol)
                                               : parse_grid(s_grid_text);
        const ThresholdFit fit = dimF_threshold(fam, s_grid, levels, pol);
        if (!csv_path.empty()) write_text_file(csv_path, threshold_csv(fit));
        json out = threshold_summary_json(fit);
        config["spec"] = spec_name.empty() ? set_path : spec_name;
        config["levels"] = levels;
        config["s_grid"] = s_grid;
        out["meta"] = meta_json(g, "dim", config);
        emit(out_path, dump(out));
        return 0;
    }

    if (method == "content") {
        if (set_path.empty()) throw std::domain_error("dim content needs --set");
        const SetDesc desc = load_set_file(set_path);
        if (desc.kind != SetDesc::Kind::Polygon)
            throw std::domain_error("dim content needs a polygon set");
        const std::vector<double> rhos = parse_grid(rhos_text);
        Box2 root = desc.polygon->bbox();
        const double pad = 0.35 * std::max(root.width(), root.height());
        root.lo = root.lo - Vec2{pad, pad};
        root.hi = root.hi + Vec2{pad, pad};
        AdaptiveCellTree tree(*make_polygon_region(*desc.polygon), root, tree_depth);
        const Window window = Window::rect_window(root);
        const std::vector<Estimate> ratios = minkowski_content(tree, window, content_r, rhos);
        if (!csv_path.empty()) write_text_file(csv_path, content_csv(rhos, ratios));
        json rows = json::array();
        for (size_t i = 0; i < rhos.size(); ++i) {
            rows.push_back({{"rho", rhos[i]},
                            {"ratio", ratios[i].value},
                            {"err", ratios[i].error},
                            {"rigorous", ratios[i].rigorous}});
        }
        json out{{"r", content_r}, {"rows", rows}};
        config["set"] = set_path;
        config["r"] = content_r;
        config["rhos"] = rhos_text;
        out["meta"] = meta_json(g, "dim", config);
        emit(out_path, dump(out));
        return 0;
    }

    throw std::domain_error("unknown dim method \"" + method + "\"");
}

int cmd_asym(const GlobalOpts& g, const std::string& set_path, const WindowOpts& w,
             const std::string& s_grid_text, const std::string& csv_path,
             const std::string& out_path) {
    const SetDesc desc = load_set_file(set_path);
    const std::vector<double> s_values =
        s_grid_text.empty() ? std::vector<double>{0.90, 0.92, 0.94, 0.96, 0.98}
                            : parse_grid(s_grid_text);
    AsymptoticScan scan;
    if (desc.kind == SetDesc::Kind::Intervals) {
        scan = asymptotic_scan_1d(*desc.intervals, s_values);
    } else if (desc.kind == SetDesc::Kind::Polygon) {
        scan = asymptotic_scan(*desc.polygon, make_window(w), s_values, make_policy(g));
    } else {
        throw std::domain_error("asym supports interval and polygon sets");
    }
    if (!csv_path.empty()) write_text_file(csv_path, scan_csv(scan));
    json out = scan_summary_json(scan);
    json config{{"set", set_path}, {"s_grid", s_values}, {"tol", g.tol}};
    config.update(window_config(w));
    out["meta"] = meta_json(g, "asym", config);
    emit(out_path, dump(out));
    return 0;
}

int cmd_check() {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                    detail.empty() ? "" : ": ", detail.c_str());
        if (!ok) ++failures;
    };

    { // closed form for the full-line perimeter of a unit interval at s = 1/2
        const PerimeterBreakdown pb = frac_perimeter_1d(IntervalUnion({{0.0, 1.0}}), 0.5);
        report("interval_perimeter_closed_form", std::fabs(pb.total.value - 8.0) < 1e-12);
    }
    { // spherical quadrature reproduces 2 omega_{n-1} / (n omega_n)
        bool ok = true;
        for (int n : {2, 3}) {
            const Estimate k = k1n_constant(n, 128);
            const double target =
                2.0 * ball_volume(n - 1.0) / (n * ball_volume(static_cast<double>(n)));
            ok = ok && std::fabs(k.value - target) <= std::max(k.error, 1e-9);
        }
        report("k1n_identity", ok);
    }
    { // full-space scaling P_s(lambda E) = lambda^(2-s) P_s(E)
        const PolygonRegion sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
        QuadraturePolicy pol;
        pol.rel_tol = 1e-6;
        const double s = 0.5;
        const Estimate base =
            frac_perimeter(slice_polygon(sq), Window::full(), s, pol).total;
        const Estimate big =
            frac_perimeter(slice_polygon(sq.transformed(SimilarityMap{2.0, 0.0, {0.3, -0.1}})),
                           Window::full(), s, pol)
                .total;
        const double expect = std::pow(2.0, 2.0 - s) * base.value;
        const double tol = 4.0 * (big.error + std::pow(2.0, 2.0 - s) * base.error) +
                           1e-8 * std::fabs(expect);
        report("scaling_full_space", std::fabs(big.value - expect) <= tol);
    }
    { // cover/packing sandwich on a segment
        std::vector<Vec2> seg;
        for (int i = 0; i <= 400; ++i) seg.push_back({i / 400.0, 0.0});
        bool ok = true;
        for (double delta : {0.05, 0.02}) {
            const long n2 = cover_count(seg, 2.0 * delta);
            const long p = packing_count(seg, delta);
            const long nh = cover_count(seg, 0.5 * delta);
            ok = ok && n2 <= p && p <= nh;
        }
        report("counting_sandwich", ok);
    }
    { // box counts of the unit segment at delta = 1/3
        report("segment_box_count",
               box_count({{0.0, 0.0}, {1.0, 0.0}}, 1.0 / 3.0) == 3);
    }
    { // lacunary series value dominates its closed-form lower bound
        const double a = 0.5, s = 0.9;
        const Estimate p = lacunary_perimeter(a, s, 40);
        report("lacunary_lower_bound",
               (1.0 - s) * p.lower() >= lacunary_lower_bound(a, s) - 1e-12);
    }
    return failures == 0 ? 0 : kExitResolution;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional s-perimeter toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--threads", g.threads, "worker threads; results are identical for any count");
    app.add_option("--seed", g.seed, "recorded in output metadata (no default estimator is random)");
    app.add_option("--tol", g.tol, "relative tolerance for the quadrature estimators");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a set description JSON");
    std::string gen_kind;
    int gen_level = 4, gen_b = 2, gen_n = 2, gen_depth = 40;
    double gen_sigma = 0.5, gen_a = 0.5;
    std::string gen_out;
    gen->add_option("kind", gen_kind,
                    "koch | sierpinski-dendrite | sponge | exploded | lacunary")
        ->required();
    gen->add_option("--level,--levels", gen_level, "construction depth");
    gen->add_option("--b", gen_b, "branching factor (exploded)");
    gen->add_option("--sigma", gen_sigma, "target threshold (exploded)");
    gen->add_option("--n", gen_n, "ambient dimension (exploded)");
    gen->add_option("--a", gen_a, "ladder ratio in (0,1) (lacunary)");
    gen->add_option("--depth", gen_depth, "number of intervals kept (lacunary)");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // perimeter
    auto* per = app.add_subcommand("perimeter", "fractional perimeter of a set");
    std::string per_set, per_out;
    double per_s = 0.5;
    bool per_rig = false;
    WindowOpts per_w;
    per->add_option("--set", per_set, "set description JSON")->required();
    per->add_option("--s", per_s, "fractional order in (0,1)")->required();
    add_window_options(per, per_w);
    per->add_flag("--require-rigorous", per_rig, "fail (exit 3) unless the bracket is rigorous");
    per->add_option("--out", per_out, "output path (default stdout)");

    // dim
    auto* dim = app.add_subcommand("dim", "dimension estimators");
    std::string dim_method, dim_set, dim_spec, dim_sgrid, dim_deltas = "2^-1..2^-7";
    std::string dim_rhos = "0.02,0.04,0.08,0.16,0.32", dim_csv, dim_out;
    int dim_levels = 6, dim_b = 2, dim_depth = 9;
    double dim_sigma = 0.5, dim_r = 1.0;
    dim->add_option("method", dim_method, "box | threshold | content")->required();
    dim->add_option("--set", dim_set, "set description JSON");
    dim->add_option("--spec", dim_spec,
                    "family name: koch | sierpinski_dendrite | sponge | exploded");
    dim->add_option("--levels", dim_levels, "levels for the threshold fit");
    dim->add_option("--b", dim_b, "branching factor (exploded)");
    dim->add_option("--sigma", dim_sigma, "target threshold (exploded)");
    dim->add_option("--s-grid", dim_sgrid, "s grid: lo:hi:step or comma list");
    dim->add_option("--deltas", dim_deltas, "box scales: B^-k1..B^-k2 or comma list");
    bool dim_cells = false;
    dim->add_flag("--cells", dim_cells, "count occupied grid cells instead of covering balls");
    dim->add_option("--rhos", dim_rhos, "content radii: lo:hi:step or comma list");
    dim->add_option("--r", dim_r, "content exponent");
    dim->add_option("--depth", dim_depth, "quadtree depth for content");
    dim->add_option("--csv", dim_csv, "CSV output path");
    dim->add_option("--out", dim_out, "summary JSON path (default stdout)");

    // asym
    auto* asym = app.add_subcommand("asym", "(1-s) P_s scan toward s = 1");
    std::string asym_set, asym_sgrid, asym_csv, asym_out;
    WindowOpts asym_w;
    asym->add_option("--set", asym_set, "set description JSON")->required();
    add_window_options(asym, asym_w);
    asym->add_option("--s-grid", asym_sgrid, "s grid: lo:hi:step or comma list");
    asym->add_option("--csv", asym_csv, "CSV output path");
    asym->add_option("--out", asym_out, "summary JSON path (default stdout)");

    // check
    auto* check = app.add_subcommand("check", "run the quick invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitDomain;
    }

    set_thread_count(g.threads);
    try {
        if (gen->parsed())
            return cmd_gen(g, gen_kind, gen_level, gen_b, gen_sigma, gen_n, gen_a, gen_depth,
                           gen_out);
        if (per->parsed()) return cmd_perimeter(g, per_set, per_s, per_w, per_rig, per_out);
        if (dim->parsed())
            return cmd_dim(g, dim_method, dim_set, dim_spec, dim_levels, dim_b, dim_sigma,
                           dim_sgrid, dim_deltas, dim_cells, dim_rhos, dim_r, dim_depth, dim_csv,
                           dim_out);
        if (asym->parsed()) return cmd_asym(g, asym_set, asym_w, asym_sgrid, asym_csv, asym_out);
        if (check->parsed()) return cmd_check();
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitResolution;
    }
    return kExitDomain;
}
