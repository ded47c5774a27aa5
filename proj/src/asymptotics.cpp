#include "fracperim/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracperim/parallel.hpp"
#include "fracperim/quadrature.hpp"

namespace fracperim {

double ball_volume(double d) {
    if (!(d >= 0.0)) throw std::domain_error("ball_volume: dimension must be >= 0");
    return std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d + 1.0));
}

namespace {

// composite Gauss over [a, b] with `panels` uniform panels
double gauss_panels(double a, double b, int panels, int order, double (*f)(double)) {
    const std::vector<double>& xs = gauss_nodes(order);
    const std::vector<double>& ws = gauss_weights(order);
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        double acc = 0.0;
        for (int q = 0; q < order; ++q) acc += ws[q] * f(lo + 0.5 * h * (1.0 + xs[q]));
        total += acc * 0.5 * h;
    }
    return total;
}

// integral over kink-free segments, with the panel-doubling error estimate
Estimate segments_integral(const std::vector<std::pair<double, double>>& segs, int quad_points,
                           double (*f)(double)) {
    const int order = 8;
    double span = 0.0;
    for (const auto& sg : segs) span += sg.second - sg.first;
    double coarse = 0.0, fine = 0.0;
    for (const auto& sg : segs) {
        const double len = sg.second - sg.first;
        int panels = std::max(1, static_cast<int>(std::lround(quad_points * len / span / order)));
        coarse += gauss_panels(sg.first, sg.second, panels, order, f);
        fine += gauss_panels(sg.first, sg.second, 2 * panels, order, f);
    }
    const double err = 4.0 * std::fabs(fine - coarse) + 1e-15 * std::fabs(fine);
    return Estimate(fine, err, true);
}

double abs_cos(double t) { return std::fabs(std::cos(t)); }
double abs_cos_sin(double t) { return std::fabs(std::cos(t)) * std::sin(t); }

struct AffineFit {
    double at_zero = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

AffineFit fit_affine(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("affine fit: degenerate abscissae");
    AffineFit f;
    f.slope = (m * sxy - sx * sy) / denom;
    f.at_zero = (sy - f.slope * sx) / m;
    double rss = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (f.at_zero + f.slope * xs[i]);
        rss += r * r;
    }
    f.rms = std::sqrt(rss / m);
    return f;
}

void validate_scan_grid(const std::vector<double>& s_values) {
    if (s_values.size() < 3) throw std::invalid_argument("scan: need >= 3 s values");
    for (size_t i = 0; i < s_values.size(); ++i) {
        if (!(s_values[i] >= 0.5) || !(s_values[i] <= 0.999))
            throw std::domain_error("scan: s values must lie in [0.5, 0.999]");
        if (i > 0 && !(s_values[i] > s_values[i - 1]))
            throw std::invalid_argument("scan: s values must increase");
    }
}

void finish_scan(AsymptoticScan& scan) {
    const size_t m = scan.rows.size();
    std::vector<double> xs(m), ys(m);
    double row_err = 0.0;
    for (size_t i = 0; i < m; ++i) {
        xs[i] = 1.0 - scan.rows[i].s;
        ys[i] = scan.rows[i].scaled_total.value;
        row_err = std::max(row_err, scan.rows[i].scaled_total.error);
    }
    const AffineFit f = fit_affine(xs, ys);
    scan.fit_residual = f.rms;
    scan.limit = Estimate(f.at_zero, 3.0 * f.rms + row_err, false);
    if (scan.target_valid && scan.target != 0.0)
        scan.rel_dev = std::fabs(scan.limit.value - scan.target) / std::fabs(scan.target);
    else
        scan.rel_dev = std::numeric_limits<double>::quiet_NaN();
    scan.monotone_top3 = m >= 3 && ys[m - 3] < ys[m - 2] && ys[m - 2] < ys[m - 1];
}

} // namespace

Estimate k1n_constant(int n, int quad_points) {
    if (n != 2 && n != 3) throw std::domain_error("k1n_constant: n must be 2 or 3");
    if (quad_points < 8) quad_points = 8;
    if (n == 2) {
        // kinks of |cos| at pi/2 and 3pi/2
        const Estimate I = segments_integral(
            {{0.0, M_PI / 2}, {M_PI / 2, 1.5 * M_PI}, {1.5 * M_PI, 2.0 * M_PI}}, quad_points,
            abs_cos);
        return I.scaled(1.0 / (2.0 * M_PI)); // n omega_n = 2 pi
    }
    // n = 3: the azimuth integrates to 2 pi exactly
    const Estimate I = segments_integral({{0.0, M_PI / 2}, {M_PI / 2, M_PI}}, quad_points,
                                         abs_cos_sin);
    return I.scaled(2.0 * M_PI / (3.0 * ball_volume(3.0))); // n omega_n = 4 pi
}

AsymptoticScan asymptotic_scan(const PolygonRegion& E, const Window& omega,
                               const std::vector<double>& s_values, const QuadraturePolicy& pol) {
    validate_scan_grid(s_values);

    AsymptoticScan scan;
    const ClassicalPerimeter cp = classical_perimeter(E, omega);
    scan.target_valid = !cp.edge_on_boundary;
    scan.target = ball_volume(1.0) * cp.value;

    SlicePtr Eslice = slice_polygon(E);
    scan.rows.resize(s_values.size());
    parallel_for(static_cast<long>(s_values.size()), [&](long i) {
        const double s = s_values[static_cast<size_t>(i)];
        QuadraturePolicy p2 = pol;
        // the kernel sharpens near s = 1; allow deeper panel refinement
        p2.max_refine_depth += static_cast<int>(std::ceil(std::log2(1.0 / (1.0 - s))));
        const PerimeterBreakdown pb = frac_perimeter(Eslice, omega, s, p2);
        ScanRow row;
        row.s = s;
        row.scaled_local = pb.local.scaled(1.0 - s);
        row.scaled_nonlocal = pb.nonlocal.scaled(1.0 - s);
        row.scaled_total = pb.total.scaled(1.0 - s);
        scan.rows[static_cast<size_t>(i)] = row;
    });

    finish_scan(scan);
    return scan;
}

AsymptoticScan asymptotic_scan_1d(const IntervalUnion& E, const std::vector<double>& s_values) {
    validate_scan_grid(s_values);

    AsymptoticScan scan;
    scan.target = 2.0 * static_cast<double>(E.set().size()); // jump count, omega_0 = 1
    scan.target_valid = true;

    scan.rows.resize(s_values.size());
    parallel_for(static_cast<long>(s_values.size()), [&](long i) {
        const double s = s_values[static_cast<size_t>(i)];
        const PerimeterBreakdown pb = frac_perimeter_1d(E, s);
        ScanRow row;
        row.s = s;
        row.scaled_local = pb.local.scaled(1.0 - s);
        row.scaled_nonlocal = pb.nonlocal.scaled(1.0 - s);
        row.scaled_total = pb.total.scaled(1.0 - s);
        scan.rows[static_cast<size_t>(i)] = row;
    });

    finish_scan(scan);
    return scan;
}

} // namespace fracperim
