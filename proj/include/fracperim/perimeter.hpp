#pragma once

#include <string>

#include "fracperim/estimate.hpp"
#include "fracperim/geometry.hpp"
#include "fracperim/kernel.hpp"

namespace fracperim {

// P_s(E, W) = L_s(E∩W, ∁E∩W) + L_s(E∩W, ∁E\W) + L_s(E\W, ∁E∩W).
// local is the first term (= half the W^{s,1} seminorm of the indicator over
// the window); nonlocal the two cross terms. total = local + nonlocal with
// added errors.
struct PerimeterBreakdown {
    double s = 0.0;
    Estimate local;
    Estimate nonlocal;
    Estimate total;
    std::string window_desc = "full_space";
};

// 1D, full line: exact closed form.
PerimeterBreakdown frac_perimeter_1d(const IntervalUnion& E, double s);
// 1D, window (lo, hi): exact closed form for all three terms.
PerimeterBreakdown frac_perimeter_1d(const IntervalUnion& E, const Interval1D& window, double s);

// 2D via the line reduction. E must be bounded; window full or bounded.
PerimeterBreakdown frac_perimeter(const SlicePtr& E, const Window& omega, double s,
                                  const QuadraturePolicy& pol = {});

struct ClassicalPerimeter {
    double value = 0.0;
    // an edge of E lies on the window boundary with positive length; such
    // edges contribute half their overlap and taint limit comparisons
    bool edge_on_boundary = false;
};

ClassicalPerimeter classical_perimeter(const PolygonRegion& E, const Window& omega);

// The lacunary interval union ⋃_{k=1..K} (a^{2k+1}, a^{2k}) for a in (0,1):
// every second interval of the geometric ladder towards 0.
IntervalUnion lacunary_set(double a, int K);

// Full-space s-perimeter of the infinite lacunary union, grouped as
// near-gap pairs, far pairs and exterior terms, each summed in closed form up
// to level K with geometric tail bounds folded into the error.
Estimate lacunary_perimeter(double a, double s, int K);

// Closed-form lower bound for (1-s) * P_s of the infinite lacunary union
// (the adjacent-gap diagonal sum); diverges as s -> 1.
double lacunary_lower_bound(double a, double s);

} // namespace fracperim
