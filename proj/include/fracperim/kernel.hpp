#pragma once

#include <variant>

#include "fracperim/estimate.hpp"
#include "fracperim/geometry.hpp"
#include "fracperim/quadrature.hpp"

namespace fracperim {

struct KernelParams {
    double s;  // in (0, 1)
    int n = 2; // ambient dimension of the kernel |x-y|^(-(n+s))
};

struct QuadraturePolicy {
    double rel_tol = 1e-7;
    double abs_tol = 0.0;
    int gauss_order = 6;
    double separation_ratio = 2.0; // admissible when dist >= ratio * (diam_A + diam_B)
    int max_refine_depth = 24;
    int max_panels_outer = 600;
    int max_panels_inner = 400;
};

void validate_s(double s);

// \int_a^b \int_c^d |x-y|^(-(1+s)), a < b <= c < d (closed form, exact).
double interval_interaction(double a, double b, double c, double d, double s);

// \int_a^b \int_c^inf (y-x)^(-(1+s)), b <= c.
double interval_ray_interaction(double a, double b, double c, double s);

// interaction of two disjoint open intervals; rays allowed on one side
double pair_interaction_1d(const Interval1D& I, const Interval1D& J, double s);

// sum of pair interactions over two interval sets with disjoint interiors;
// overlap beyond overlap_tol (relative to the smaller measure) is an error
double interval_sets_interaction(const IntervalSet& A, const IntervalSet& B, double s,
                                 double overlap_tol = 1e-12);

// full-line fractional perimeter of a bounded 1D set: L_s(E, complement E); exact
double line_perimeter_1d(const IntervalSet& E, double s);

// [chi_U]_{W^{s,1}(C)} for a chord C: 2 * L_s(U ∩ C, C \ U); exact
double chord_seminorm_1d(const IntervalSet& U, const Interval1D& chord, double s);

// 2D interaction L_s(A, B) = \int_A \int_B |x-y|^(-(2+s)) through the exact
// 1D reduction along lines: integrate the closed-form chord interaction over
// all line directions and offsets. At least one of A, B must be bounded and
// the two sets must have disjoint interiors.
Estimate sliced_interaction(const SlicePtr& A, const SlicePtr& B, double s,
                            const QuadraturePolicy& pol = {});

// area of the intersection of two slice sets by Fubini along one direction
// (used for overlap validation); A must be bounded
double slice_overlap_area(const SlicePtr& A, const SlicePtr& B);

// descriptor for interaction_2d
using ShapeDesc = std::variant<Box2, PolygonRegion, Disk>;

// L_s(A, B) for two disjoint shapes. Separated axis-aligned boxes go through
// tensor Gauss-Legendre with the analytic remainder (subdividing until the
// bound meets the tolerance); every other case uses the 1D reduction.
Estimate interaction_2d(const ShapeDesc& A, const ShapeDesc& B, const KernelParams& k,
                        const QuadraturePolicy& pol = {});

class AdaptiveCellTree;

// L_s between the regions represented by two cell trees (interior leaves,
// with boundary leaves contributing a set-inclusion bracket). Dual-tree
// traversal, Gauss-Legendre on admissible pairs, brackets near the diagonal.
Estimate treecode_interaction(const AdaptiveCellTree& A, const AdaptiveCellTree& B,
                              const KernelParams& k, const QuadraturePolicy& pol = {});

} // namespace fracperim
