#pragma once

#include <vector>

#include "fracperim/estimate.hpp"
#include "fracperim/geometry.hpp"
#include "fracperim/kernel.hpp"
#include "fracperim/perimeter.hpp"

namespace fracperim {

// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1).
double ball_volume(double d);

// K_{1,n} = (1/(n omega_n)) * integral of |v.e| over the unit sphere,
// n in {2, 3}; equals 2 omega_{n-1} / (n omega_n). quad_points controls the
// composite Gauss resolution; the error comes from panel doubling.
Estimate k1n_constant(int n, int quad_points = 64);

struct ScanRow {
    double s = 0.0;
    Estimate scaled_local;    // (1-s) * P_s^L
    Estimate scaled_nonlocal; // (1-s) * P_s^NL
    Estimate scaled_total;
};

struct AsymptoticScan {
    std::vector<ScanRow> rows; // ordered by increasing s
    Estimate limit;            // affine-in-(1-s) extrapolation of the total to s = 1
    double fit_residual = 0.0;
    double target = 0.0; // omega_{n-1} * classical perimeter
    bool target_valid = false;
    double rel_dev = 0.0;      // |limit - target| / target when target_valid
    bool monotone_top3 = false; // totals strictly increase over the last three s
};

// Scan of (1-s) P_s(E, omega) over s_values (each in [0.5, 0.999], increasing)
// with extrapolation to s = 1 and comparison against the classical-perimeter
// target. Edges of E lying on the window boundary invalidate the target.
AsymptoticScan asymptotic_scan(const PolygonRegion& E, const Window& omega,
                               const std::vector<double>& s_values,
                               const QuadraturePolicy& pol = {});

// Exact 1D variant on a finite interval union over the full line. target is
// the jump count of the indicator (classical perimeter). Serves as the
// divergence witness for truncations of infinite unions: totals keep growing
// across the scan instead of leveling off.
AsymptoticScan asymptotic_scan_1d(const IntervalUnion& E, const std::vector<double>& s_values);

} // namespace fracperim
