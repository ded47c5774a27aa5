// End-to-end checks with pinned tolerances, one verdict line each.
// Exit code is the number of failed checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracperim/asymptotics.hpp"
#include "fracperim/cell_tree.hpp"
#include "fracperim/dimension.hpp"
#include "fracperim/fractals.hpp"
#include "fracperim/perimeter.hpp"

using namespace fracperim;

namespace {

int g_failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail, double seconds) {
    std::printf("[%s] %-34s %s (%.1fs)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                seconds);
    if (!ok) ++g_failures;
}

void run_check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto [o, d] = fn();
        ok = o;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    verdict(ok, name, detail, dt);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// independent slow oracle for the closed-form interval interaction:
// adaptive Simpson nested in adaptive Simpson (no Gauss nodes, no
// antiderivatives shared with the library path)
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    return simpson_rec(f, a, b, f(a), f(0.5 * (a + b)), f(b), tol, 28);
}

double oracle_interaction(double a, double b, double c, double d, double s) {
    auto outer = [&](double x) {
        return simpson([&](double y) { return std::pow(y - x, -1.0 - s); }, c, d, 1e-14);
    };
    return simpson(outer, a, b, 1e-13);
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> koch_threshold() {
    RecursiveFamily fam = RecursiveFamily::koch(8);
    QuadraturePolicy pol;
    pol.rel_tol = 1e-5;
    ThresholdFit fit =
        dimF_threshold(fam, {0.60, 0.65, 0.70, 0.75, 0.80, 0.85}, 7, pol);
    const double want = 2.0 - std::log(4.0) / std::log(3.0);
    const double tol = 0.02;
    bool ok = std::abs(fit.s_star - want) <= tol;
    return {ok, "s*=" + fmt(fit.s_star) + " want " + fmt(want) + " +-" + fmt(tol)};
}

std::pair<bool, std::string> dendrite_threshold() {
    RecursiveFamily fam = RecursiveFamily::sierpinski_dendrite(8);
    QuadraturePolicy pol;
    pol.rel_tol = 1e-5;
    ThresholdFit fit =
        dimF_threshold(fam, {0.30, 0.35, 0.40, 0.45, 0.50, 0.55}, 7, pol);
    const double want = 2.0 - std::log(3.0) / std::log(2.0);
    const double tol = 0.03;
    bool ok = std::abs(fit.s_star - want) <= tol;
    return {ok, "s*=" + fmt(fit.s_star) + " want " + fmt(want) + " +-" + fmt(tol)};
}

std::pair<bool, std::string> koch_box_dimension() {
    auto pts = koch_curve(7);
    std::vector<double> deltas;
    for (int k = 1; k <= 6; ++k) deltas.push_back(std::pow(3.0, -k));
    BoxFit fit = minkowski_dimension_boxes(box_count_series(pts, deltas, true, CountMode::Cover));
    const double want = std::log(4.0) / std::log(3.0);
    const double tol = 0.05;
    bool ok = std::abs(fit.dim - want) <= tol;
    return {ok, "dim=" + fmt(fit.dim) + " want " + fmt(want) + " +-" + fmt(tol)};
}

std::pair<bool, std::string> square_scan_limit() {
    PolygonRegion sq({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
    Window w = Window::disk_window({0, 0}, 2.0);
    QuadraturePolicy pol;
    pol.rel_tol = 1e-6;
    AsymptoticScan scan = asymptotic_scan(sq, w, {0.90, 0.92, 0.94, 0.96, 0.98}, pol);
    const double tol = 0.02;
    bool ok = scan.target_valid && scan.rel_dev <= tol;
    return {ok, "limit=" + fmt(scan.limit.value) + " target " + fmt(scan.target) +
                    " rel_dev=" + fmt(scan.rel_dev) + " <= " + fmt(tol)};
}

std::pair<bool, std::string> sphere_constant_identity() {
    bool ok = true;
    std::string detail;
    for (int n : {2, 3}) {
        double lhs = n * ball_volume(n) * k1n_constant(n).value;
        double rhs = 2.0 * ball_volume(n - 1);
        double rel = std::abs(lhs - rhs) / rhs;
        ok = ok && rel <= 1e-6;
        if (!detail.empty()) detail += " ";
        detail += "n=" + std::to_string(n) + " rel=" + fmt(rel);
    }
    return {ok, detail + " <= 1e-06"};
}

std::pair<bool, std::string> lacunary_growth() {
    const double a = 0.5;
    bool ok = true;
    std::string detail;
    for (int i = 1; i <= 9; ++i) {
        double s = 0.1 * i;
        Estimate p = lacunary_perimeter(a, s, 60);
        if (!(p.rigorous && std::isfinite(p.value) && p.value > 0.0)) {
            ok = false;
            detail += " finite@s=" + fmt(s) + " FAILED";
        }
    }
    double prev = 0.0;
    bool increasing = true, dominated = true;
    for (double s : {0.90, 0.95, 0.99}) {
        double scaled = (1.0 - s) * lacunary_perimeter(a, s, 60).value;
        increasing = increasing && scaled > prev;
        dominated = dominated && scaled >= lacunary_lower_bound(a, s);
        prev = scaled;
    }
    ok = ok && increasing && dominated;
    detail = "finite on s=0.1..0.9, scaled " + std::string(increasing ? "increasing" : "NOT") +
             ", bound " + std::string(dominated ? "dominated" : "VIOLATED") + detail;
    return {ok, detail};
}

std::pair<bool, std::string> closed_form_vs_oracle() {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> len(0.1, 2.0), gap(0.05, 1.5), sv(0.05, 0.95);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        double a = -2.0 + 3.0 * gap(rng);
        double b = a + len(rng);
        double c = b + gap(rng);
        double d = c + len(rng);
        double s = sv(rng);
        double exact = interval_interaction(a, b, c, d, s);
        double ref = oracle_interaction(a, b, c, d, s);
        worst = std::max(worst, std::abs(exact - ref) / std::abs(ref));
    }
    const double tol = 1e-8;
    return {worst <= tol, "worst rel err=" + fmt(worst) + " over 100 draws <= " + fmt(tol)};
}

// symmetry / additivity / scaling / rigid motions, each deviation measured
// against the combined reported error bounds
std::pair<bool, std::string> invariance_suite() {
    QuadraturePolicy pol;
    pol.rel_tol = 1e-6;
    const double s = 0.5;
    bool ok = true;
    std::string detail;
    auto check = [&](const char* what, double x, double ex, double y, double ey) {
        bool pass = std::abs(x - y) <= ex + ey + 1e-12 * std::max(std::abs(x), std::abs(y));
        if (!pass) {
            ok = false;
            detail += std::string(" ") + what + " off by " + fmt(std::abs(x - y)) +
                      " (allow " + fmt(ex + ey) + ")";
        }
    };

    std::vector<std::pair<std::string, PolygonRegion>> corpus{
        {"square", PolygonRegion({{0, 0}, {1, 0}, {1, 1}, {0, 1}})},
        {"triangle", PolygonRegion({{0, 0}, {1, 0}, {0, 1}})},
        {"koch3", koch_snowflake(3)},
    };
    for (auto& [name, E] : corpus) {
        PerimeterBreakdown base = frac_perimeter(slice_polygon(E), Window::full(), s, pol);
        for (double lam : {0.5, 2.0, 3.0}) {
            SimilarityMap m(lam, 0.0, {0.0, 0.0});
            PerimeterBreakdown sc = frac_perimeter(slice_polygon(E.transformed(m)),
                                                   Window::full(), s, pol);
            double f = std::pow(lam, 2.0 - s);
            check((name + " scale " + fmt(lam)).c_str(), sc.total.value, sc.total.error,
                  f * base.total.value, f * base.total.error);
        }
        PerimeterBreakdown tr = frac_perimeter(slice_polygon(E.translated({2.5, -1.25})),
                                               Window::full(), s, pol);
        check((name + " shift").c_str(), tr.total.value, tr.total.error, base.total.value,
              base.total.error);
        SimilarityMap rot(1.0, 0.8, {0.0, 0.0});
        PerimeterBreakdown ro = frac_perimeter(slice_polygon(E.transformed(rot)),
                                               Window::full(), s, pol);
        check((name + " rotate").c_str(), ro.total.value, ro.total.error, base.total.value,
              base.total.error);
    }

    // 1D member of the corpus: exact closed forms, scaling in lambda^(1-s)
    IntervalSet lac = lacunary_set(0.5, 40).set();
    double base1 = line_perimeter_1d(lac, s);
    for (double lam : {0.5, 2.0, 3.0}) {
        double got = line_perimeter_1d(lac.scaled(lam), s);
        check(("lacunary scale " + fmt(lam)).c_str(), got, 1e-12 * got,
              std::pow(lam, 1.0 - s) * base1, 1e-12 * base1);
    }
    check("lacunary shift", line_perimeter_1d(lac.translated(7.0), s), 1e-12 * base1, base1,
          1e-12 * base1);

    // kernel symmetry and additivity over disjoint pieces
    KernelParams k{s, 2};
    Box2 A{{0, 0}, {1, 1}}, B{{2, 0}, {3, 1}}, C{{0, 2.5}, {1, 3.5}};
    Estimate ab = interaction_2d(A, B, k, pol);
    Estimate ba = interaction_2d(B, A, k, pol);
    check("kernel symmetry", ab.value, ab.error, ba.value, ba.error);
    Estimate cb = interaction_2d(C, B, k, pol);
    Estimate ucb = sliced_interaction(slice_union({slice_box(A), slice_box(C)}), slice_box(B),
                                      s, pol);
    check("kernel additivity", ucb.value, ucb.error, ab.value + cb.value,
          ab.error + cb.error);

    // subadditivity of the perimeter over a disjoint union
    Estimate pa = frac_perimeter(slice_box(A), Window::full(), s, pol).total;
    Estimate pb = frac_perimeter(slice_box(B), Window::full(), s, pol).total;
    Estimate pu =
        frac_perimeter(slice_union({slice_box(A), slice_box(B)}), Window::full(), s, pol).total;
    if (!(pu.value <= pa.value + pb.value + pu.error + pa.error + pb.error)) {
        ok = false;
        detail += " subadditivity VIOLATED";
    }

    if (ok) detail = "scaling/shift/rotation/symmetry/additivity/subadditivity all inside bounds";
    return {ok, detail};
}

std::pair<bool, std::string> tube_inequality_margins() {
    QuadraturePolicy pol;
    pol.rel_tol = 1e-5;
    std::vector<double> rhos;
    for (int k = 7; k >= 1; --k) rhos.push_back(std::pow(2.0, -k));
    struct Case {
        std::string name;
        PolygonRegion E;
        Window w;
    };
    std::vector<Case> cases;
    cases.push_back({"square",
                     PolygonRegion({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}),
                     Window::disk_window({0, 0}, 1.5)});
    cases.push_back({"triangle", PolygonRegion({{0, 0}, {1, 0}, {0, 1}}),
                     Window::disk_window({0.3, 0.3}, 1.5)});
    cases.push_back({"koch3", koch_snowflake(3), Window::disk_window({0, 0}, 1.2)});

    bool ok = true;
    std::string detail;
    double min_margin = 1e300;
    for (auto& c : cases) {
        auto rows = dim_inequality_check(c.E, c.w, {0.3, 0.5, 0.7}, rhos, pol, 10);
        for (auto& r : rows) {
            min_margin = std::min(min_margin, r.margin);
            if (!(r.holds && r.margin > 0.0)) {
                ok = false;
                detail += " " + c.name + "@s=" + fmt(r.s) + " margin=" + fmt(r.margin);
            }
        }
    }
    if (ok) detail = "9 cases hold, min margin " + fmt(min_margin);
    return {ok, detail};
}

std::pair<bool, std::string> grid_outline_coincidence() {
    PolygonRegion snow = koch_snowflake(3);
    Box2 root = snow.bbox();
    double pad = 0.05 * std::max(root.width(), root.height());
    root.lo = root.lo - Vec2{pad, pad};
    root.hi = root.hi + Vec2{pad, pad};
    AdaptiveCellTree tree(*make_polygon_region(snow), root, 8);

    // every sampled outline point must sit inside the boundary leaf union
    double pitch = tree.max_boundary_leaf_size() / 4.0;
    double worst = 0.0;
    for (std::size_t e = 0; e < snow.edge_count(); ++e) {
        auto [p, q] = snow.edge(e);
        double len = (q - p).norm();
        int steps = std::max(1, (int)std::ceil(len / pitch));
        for (int i = 0; i <= steps; ++i) {
            Vec2 x = p + (q - p) * ((double)i / steps);
            worst = std::max(worst, tree.boundary_min_dist(Box2{x, x}));
        }
    }
    double in = tree.leaf_area(CellTag::Interior);
    double bd = tree.leaf_area(CellTag::Boundary);
    bool bracket = in <= snow.area() && snow.area() <= in + bd;
    bool ok = worst <= 1e-12 && bracket;
    return {ok, "outline inside boundary leaves (worst dist " + fmt(worst) +
                    "), area bracket " + std::string(bracket ? "holds" : "FAILS")};
}

std::pair<bool, std::string> exploded_threshold() {
    RecursiveFamily fam = RecursiveFamily::exploded(2, 0.5, 6);
    QuadraturePolicy pol;
    pol.rel_tol = 1e-5;
    ThresholdFit fit =
        dimF_threshold(fam, {0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65}, 6, pol);
    const double tol = 0.03;
    bool ok = std::abs(fit.s_star - 0.5) <= tol;
    return {ok, "s*=" + fmt(fit.s_star) + " want 0.5 +-" + fmt(tol)};
}

} // namespace

int main() {
    run_check("koch threshold", koch_threshold);
    run_check("dendrite threshold", dendrite_threshold);
    run_check("koch box dimension", koch_box_dimension);
    run_check("square scan limit", square_scan_limit);
    run_check("sphere constant identity", sphere_constant_identity);
    run_check("lacunary growth", lacunary_growth);
    run_check("closed form vs oracle", closed_form_vs_oracle);
    run_check("invariance suite", invariance_suite);
    run_check("tube inequality margins", tube_inequality_margins);
    run_check("grid outline coincidence", grid_outline_coincidence);
    run_check("exploded threshold", exploded_threshold);
    if (g_failures == 0)
        std::printf("all checks passed\n");
    else
        std::printf("%d check(s) failed\n", g_failures);
    return g_failures;
}
