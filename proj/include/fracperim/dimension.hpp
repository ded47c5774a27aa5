#pragma once

#include <string>
#include <vector>

#include "fracperim/cell_tree.hpp"
#include "fracperim/estimate.hpp"
#include "fracperim/fractals.hpp"
#include "fracperim/geometry.hpp"
#include "fracperim/kernel.hpp"

namespace fracperim {

// Number of cells of the axis-aligned delta-grid met by the polyline through
// `pts` (a single point counts its cell). A cell is entered only on a strict
// gridline crossing, so a unit segment on a gridline at delta = 1/3 counts 3.
long box_count(const std::vector<Vec2>& pts, double delta, bool connected = true);

// Greedy maximal rho-separated subset of the sample points (with `connected`,
// of the densely resampled polyline). Its size is a valid rho-cover
// cardinality (every point lies within rho of the subset) and lies between
// the true cover numbers at rho and rho/4. Unlike grid-cell counts this is
// isometry invariant, so the fitted slope is free of grid-alignment drift.
long cover_count(const std::vector<Vec2>& pts, double rho, bool connected = false);

// Size of a maximal packing with disjoint open delta-balls centered on the
// samples (= greedy 2*delta-separated subset).
long packing_count(const std::vector<Vec2>& pts, double delta, bool connected = false);

// Minimal number of freely placed axis-aligned squares of side delta covering
// the polyline when each square must cover a contiguous arc (greedy
// farthest-reach split). Free placement removes grid-alignment drift, so the
// per-scale constants are stable and the fitted slope converges cleanly.
long arc_cover_count(const std::vector<Vec2>& pts, double delta);

// Which counter feeds the dimension fit. Cover is the default: its constants
// are stable across scales, while grid-cell constants drift at coarse delta.
enum class CountMode { Cover, GridCells };

struct BoxCountSeries {
    std::vector<double> deltas; // decreasing
    std::vector<long> counts;
};

BoxCountSeries box_count_series(const std::vector<Vec2>& pts, const std::vector<double>& deltas,
                                bool connected = true, CountMode mode = CountMode::Cover);

struct BoxFit {
    double dim = 0.0;
    double intercept = 0.0;
    double residual = 0.0;           // rms of fit residuals in log space
    std::vector<double> local_slopes; // per adjacent scale pair
    bool narrow_range = false;        // fewer than 4 scales or under 2 decades
};

BoxFit minkowski_dimension_boxes(const BoxCountSeries& series);

// |N_rho(boundary) ∩ window| / rho^(n-r) for each rho, n = 2.
std::vector<Estimate> minkowski_content(const AdaptiveCellTree& tree, const Window& window,
                                        double r, const std::vector<double>& rho_list);

struct ThresholdFit {
    std::vector<double> s_grid;
    std::vector<double> level_rates; // per-s growth rate of piece-witness sums
    std::vector<double> upper_rates; // same against full complements
    std::vector<double> rate_errs;   // fit rms residuals (witness family)
    double s_star_lower = 0.0;
    double s_star_upper = 0.0;
    double s_star = 0.0;
    double ci = 0.0;
    double dim_f = 0.0; // n - s_star
    std::string method = "threshold";
    bool finite_perimeter_branch = false;
    std::vector<double> scaled_local; // finite-perimeter branch: (1-s) P_s^L per s
};

// Growth-rate fit of the per-level interaction sums of a self-similar family:
// rate(s) ~ log b - (n-s) log lambda, with the divergence threshold at the
// root. Levels with at most 256 pieces are summed piece by piece; deeper
// levels use one representative piece times the count, spot-checking a few
// congruent copies against it.
ThresholdFit dimF_threshold(const RecursiveFamily& fam, const std::vector<double>& s_grid,
                            int levels, const QuadraturePolicy& pol = {});

// Finite-perimeter sets have no divergence threshold below 1: reports the
// boundedness of (1-s) P_s^L across the grid instead of a rate fit.
ThresholdFit dimF_finite_report(const PolygonRegion& E, const Window& omega,
                                const std::vector<double>& s_grid,
                                const QuadraturePolicy& pol = {});

struct TubeIneqRow {
    double s = 0.0;
    Estimate lhs;           // 2 P_s^L(E, Omega)
    Estimate rhs;           // n omega_n * trapezoid value of the rho integral
    double rhs_lower = 0.0; // rigorous lower bound for the right side
    bool holds = false;
    double margin = 0.0;    // rhs_lower - lhs.upper()
};

// Checks 2 P_s^L(E,Omega) <= n omega_n ∫ |N_rho(∂E) ∩ Omega| rho^(-1-s) drho
// by bounding the right side from below with monotone Riemann sums over
// rho_list, a dyadic ladder of disjoint-ball packing bounds below the
// smallest rho (the dominant range for larger s) and the exact large-rho
// tail.
std::vector<TubeIneqRow> dim_inequality_check(const PolygonRegion& E, const Window& omega,
                                              const std::vector<double>& s_grid,
                                              const std::vector<double>& rho_list,
                                              const QuadraturePolicy& pol = {},
                                              int tree_depth = 9);

} // namespace fracperim
