#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracperim/asymptotics.hpp"
#include "fracperim/dimension.hpp"
#include "fracperim/fractals.hpp"
#include "fracperim/kernel.hpp"
#include "fracperim/perimeter.hpp"
#include "fracperim/version.hpp"

namespace py = pybind11;
using namespace fracperim;

namespace {

std::vector<Vec2> to_vecs(const std::vector<std::pair<double, double>>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p.first, p.second});
    return out;
}

Window window_from(const std::string& kind, const std::vector<double>& params) {
    if (kind == "full") return Window::full();
    if (kind == "ball") {
        if (params.size() != 3) throw std::invalid_argument("ball window needs (cx, cy, r)");
        return Window::disk_window({params[0], params[1]}, params[2]);
    }
    if (kind == "rect") {
        if (params.size() != 4)
            throw std::invalid_argument("rect window needs (x0, y0, x1, y1)");
        return Window::rect_window(Box2{{params[0], params[1]}, {params[2], params[3]}});
    }
    throw std::invalid_argument("window kind must be full, ball or rect");
}

RecursiveFamily family_by_name(const std::string& name, int max_level, int b, double sigma) {
    if (name == "koch") return RecursiveFamily::koch(max_level);
    if (name == "sierpinski_dendrite") return RecursiveFamily::sierpinski_dendrite(max_level);
    if (name == "sponge") return RecursiveFamily::sponge(max_level);
    if (name == "exploded") return RecursiveFamily::exploded(b, sigma, max_level);
    throw std::invalid_argument("unknown family: " + name);
}

py::dict estimate_dict(const Estimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["error"] = e.error;
    d["rigorous"] = e.rigorous;
    return d;
}

py::dict breakdown_dict(const PerimeterBreakdown& pb) {
    py::dict d;
    d["s"] = pb.s;
    d["local"] = pb.local.value;
    d["nonlocal"] = pb.nonlocal.value;
    d["total"] = pb.total.value;
    d["err_local"] = pb.local.error;
    d["err_nonlocal"] = pb.nonlocal.error;
    d["rigorous"] = pb.total.rigorous;
    d["window"] = pb.window_desc;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "fractional s-perimeters of explicit planar sets";
    m.attr("__version__") = kVersion;

    m.def("interval_interaction", &interval_interaction, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("d"), py::arg("s"),
          "closed-form kernel interaction of intervals (a,b) and (c,d), a < b <= c < d");

    m.def(
        "perimeter_1d",
        [](const std::vector<std::pair<double, double>>& items, double s) {
            std::vector<Interval1D> ivs;
            for (const auto& p : items) ivs.push_back({p.first, p.second});
            return breakdown_dict(frac_perimeter_1d(IntervalUnion(std::move(ivs)), s));
        },
        py::arg("intervals"), py::arg("s"),
        "full-line fractional perimeter of a finite interval union, exact");

    m.def(
        "perimeter_polygon",
        [](const std::vector<std::pair<double, double>>& vertices, double s,
           const std::string& omega, const std::vector<double>& omega_params, double rel_tol) {
            PolygonRegion poly(to_vecs(vertices));
            QuadraturePolicy pol;
            pol.rel_tol = rel_tol;
            return breakdown_dict(
                frac_perimeter(slice_polygon(poly), window_from(omega, omega_params), s, pol));
        },
        py::arg("vertices"), py::arg("s"), py::arg("omega") = "full",
        py::arg("omega_params") = std::vector<double>{}, py::arg("rel_tol") = 1e-6);

    m.def(
        "koch_snowflake",
        [](int level) {
            const PolygonRegion poly = koch_snowflake(level);
            std::vector<std::pair<double, double>> out;
            for (const Vec2& v : poly.vertices()) out.emplace_back(v.x, v.y);
            return out;
        },
        py::arg("level"), "vertices of the closed snowflake polygon");

    m.def(
        "koch_curve",
        [](int level) {
            std::vector<std::pair<double, double>> out;
            for (const Vec2& v : koch_curve(level)) out.emplace_back(v.x, v.y);
            return out;
        },
        py::arg("level"));

    m.def(
        "box_count",
        [](const std::vector<std::pair<double, double>>& pts, double delta, bool connected) {
            return box_count(to_vecs(pts), delta, connected);
        },
        py::arg("points"), py::arg("delta"), py::arg("connected") = true);

    m.def(
        "cover_count",
        [](const std::vector<std::pair<double, double>>& pts, double rho, bool connected) {
            return cover_count(to_vecs(pts), rho, connected);
        },
        py::arg("points"), py::arg("rho"), py::arg("connected") = false);

    m.def(
        "arc_cover_count",
        [](const std::vector<std::pair<double, double>>& pts, double delta) {
            return arc_cover_count(to_vecs(pts), delta);
        },
        py::arg("points"), py::arg("delta"));

    m.def(
        "box_dimension",
        [](const std::vector<std::pair<double, double>>& pts, const std::vector<double>& deltas,
           bool connected, const std::string& counter) {
            if (counter != "cover" && counter != "cells")
                throw std::invalid_argument("counter must be \"cover\" or \"cells\"");
            const BoxCountSeries series =
                box_count_series(to_vecs(pts), deltas, connected,
                                 counter == "cover" ? CountMode::Cover : CountMode::GridCells);
            const BoxFit fit = minkowski_dimension_boxes(series);
            py::dict d;
            d["dim"] = fit.dim;
            d["residual"] = fit.residual;
            d["local_slopes"] = fit.local_slopes;
            d["counts"] = series.counts;
            d["narrow_range"] = fit.narrow_range;
            return d;
        },
        py::arg("points"), py::arg("deltas"), py::arg("connected") = true,
        py::arg("counter") = "cover");

    m.def("ball_volume", &ball_volume, py::arg("d"));

    m.def(
        "k1n_constant",
        [](int n, int quad_points) { return estimate_dict(k1n_constant(n, quad_points)); },
        py::arg("n"), py::arg("quad_points") = 64);

    m.def(
        "dim_threshold",
        [](const std::string& family, const std::vector<double>& s_grid, int levels,
           double rel_tol, int b, double sigma) {
            QuadraturePolicy pol;
            pol.rel_tol = rel_tol;
            const ThresholdFit fit = dimF_threshold(
                family_by_name(family, std::max(levels, 3), b, sigma), s_grid, levels, pol);
            py::dict d;
            d["s_star"] = fit.s_star;
            d["ci"] = fit.ci;
            d["dim_f"] = fit.dim_f;
            d["s_grid"] = fit.s_grid;
            d["rates"] = fit.level_rates;
            return d;
        },
        py::arg("family"), py::arg("s_grid"), py::arg("levels") = 5, py::arg("rel_tol") = 1e-5,
        py::arg("b") = 2, py::arg("sigma") = 0.5);

    m.def(
        "lacunary_perimeter",
        [](double a, double s, int depth) { return estimate_dict(lacunary_perimeter(a, s, depth)); },
        py::arg("a"), py::arg("s"), py::arg("depth") = 40);

    m.def("lacunary_lower_bound", &lacunary_lower_bound, py::arg("a"), py::arg("s"));

    m.def(
        "asymptotic_scan_polygon",
        [](const std::vector<std::pair<double, double>>& vertices, const std::string& omega,
           const std::vector<double>& omega_params, const std::vector<double>& s_values,
           double rel_tol) {
            PolygonRegion poly(to_vecs(vertices));
            QuadraturePolicy pol;
            pol.rel_tol = rel_tol;
            const AsymptoticScan scan =
                asymptotic_scan(poly, window_from(omega, omega_params), s_values, pol);
            py::dict d;
            d["limit"] = scan.limit.value;
            d["limit_err"] = scan.limit.error;
            d["target"] = scan.target;
            d["target_valid"] = scan.target_valid;
            d["rel_dev"] = scan.rel_dev;
            d["monotone_top3"] = scan.monotone_top3;
            py::list rows;
            for (const ScanRow& r : scan.rows) {
                py::dict row;
                row["s"] = r.s;
                row["scaled_local"] = r.scaled_local.value;
                row["scaled_nonlocal"] = r.scaled_nonlocal.value;
                row["scaled_total"] = r.scaled_total.value;
                rows.append(row);
            }
            d["rows"] = rows;
            return d;
        },
        py::arg("vertices"), py::arg("omega"), py::arg("omega_params"), py::arg("s_values"),
        py::arg("rel_tol") = 1e-6);
}
