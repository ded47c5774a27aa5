#include "fracperim/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace fracperim {

static const double INF = std::numeric_limits<double>::infinity();

void validate_s(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("s must lie in (0, 1)");
}

// p^e - q^e for p, q >= 0 without cancellation (e in (0,1))
static double pow_diff(double p, double q, double e) {
    if (p == q) return 0.0;
    if (p == 0.0) return -std::pow(q, e);
    if (q == 0.0) return std::pow(p, e);
    return std::pow(q, e) * std::expm1(e * std::log(p / q));
}

double interval_interaction(double a, double b, double c, double d, double s) {
    validate_s(s);
    if (!(a < b && b <= c && c < d))
        throw std::invalid_argument("interval_interaction: need a < b <= c < d");
    double e = 1.0 - s;
    // ((c-a)^e - (d-a)^e) + ((d-b)^e - (c-b)^e), grouped to avoid cancellation
    double g1 = pow_diff(c - a, d - a, e);
    double g2 = pow_diff(d - b, c - b, e);
    return (g1 + g2) / (s * e);
}

double interval_ray_interaction(double a, double b, double c, double s) {
    validate_s(s);
    if (!(a < b && b <= c)) throw std::invalid_argument("interval_ray_interaction: need a < b <= c");
    double e = 1.0 - s;
    return pow_diff(c - a, c - b, e) / (s * e);
}

double pair_interaction_1d(const Interval1D& I, const Interval1D& J, double s) {
    const Interval1D* L = &I;
    const Interval1D* R = &J;
    if (L->unbounded()) std::swap(L, R);
    if (L->unbounded()) throw std::invalid_argument("pair_interaction_1d: both intervals unbounded");
    if (R->lo >= L->hi) { // R to the right
        if (R->hi == INF) return interval_ray_interaction(L->lo, L->hi, R->lo, s);
        return interval_interaction(L->lo, L->hi, R->lo, R->hi, s);
    }
    if (R->hi <= L->lo) { // R to the left; reflect
        if (R->lo == -INF) return interval_ray_interaction(-L->hi, -L->lo, -R->hi, s);
        return interval_interaction(R->lo, R->hi, L->lo, L->hi, s);
    }
    throw std::invalid_argument("pair_interaction_1d: intervals overlap");
}

double interval_sets_interaction(const IntervalSet& A, const IntervalSet& B, double s,
                                 double overlap_tol) {
    if (A.empty() || B.empty()) return 0.0;
    IntervalSet Bc = B.subtract(A);
    double cut = B.measure() - Bc.measure();
    if (cut > 0.0) {
        double ref = std::min(A.measure(), B.measure());
        if (!(cut <= overlap_tol * std::max(ref, 1e-300)))
            throw std::invalid_argument("interval_sets_interaction: sets overlap");
    }
    double sum = 0.0;
    for (const auto& I : A.parts())
        for (const auto& J : Bc.parts()) sum += pair_interaction_1d(I, J, s);
    return sum;
}

double line_perimeter_1d(const IntervalSet& E, double s) {
    for (const auto& iv : E.parts())
        if (iv.unbounded()) throw std::invalid_argument("line_perimeter_1d: set must be bounded");
    return interval_sets_interaction(E, E.complement(), s);
}

double chord_seminorm_1d(const IntervalSet& U, const Interval1D& chord, double s) {
    IntervalSet C({chord});
    IntervalSet in = U.intersect(C);
    if (in.empty()) return 0.0;
    IntervalSet out = C.subtract(U);
    return 2.0 * interval_sets_interaction(in, out, s);
}

// ---------------------------------------------------------------------------
// interaction_2d dispatch

static SlicePtr to_slice(const ShapeDesc& d) {
    if (std::holds_alternative<Box2>(d)) return slice_box(std::get<Box2>(d));
    if (std::holds_alternative<Disk>(d)) return slice_disk(std::get<Disk>(d));
    return slice_polygon(std::get<PolygonRegion>(d));
}

static Box2 desc_bbox(const ShapeDesc& d) {
    if (std::holds_alternative<Box2>(d)) return std::get<Box2>(d);
    if (std::holds_alternative<Disk>(d)) {
        const Disk& k = std::get<Disk>(d);
        return Box2({k.c.x - k.r, k.c.y - k.r}, {k.c.x + k.r, k.c.y + k.r});
    }
    return std::get<PolygonRegion>(d).bbox();
}

// separated boxes: Gauss-Legendre, split until the analytic remainder meets
// the target
static Estimate box_pair_refined(const Box2& A, const Box2& B, double s, int order, double tol,
                                 int depth_left) {
    Estimate e = box_pair_interaction_gl(A, B, s, order);
    if (e.error <= std::max(tol, 1e-18 * std::fabs(e.value)) || depth_left <= 0) {
        if (depth_left <= 0 && e.error > tol) e.rigorous = e.error <= tol;
        return e;
    }
    // split the larger box in its longer direction
    const Box2* big = (A.diam() >= B.diam()) ? &A : &B;
    Vec2 c = big->center();
    Box2 b1 = *big, b2 = *big;
    if (big->width() >= big->height()) {
        b1.hi.x = c.x;
        b2.lo.x = c.x;
    } else {
        b1.hi.y = c.y;
        b2.lo.y = c.y;
    }
    if (big == &A) {
        return box_pair_refined(b1, B, s, order, tol / 2, depth_left - 1) +
               box_pair_refined(b2, B, s, order, tol / 2, depth_left - 1);
    }
    return box_pair_refined(A, b1, s, order, tol / 2, depth_left - 1) +
           box_pair_refined(A, b2, s, order, tol / 2, depth_left - 1);
}

Estimate interaction_2d(const ShapeDesc& A, const ShapeDesc& B, const KernelParams& k,
                        const QuadraturePolicy& pol) {
    validate_s(k.s);
    if (k.n != 2) throw std::invalid_argument("interaction_2d: kernel dimension must be 2");
    if (std::holds_alternative<Box2>(A) && std::holds_alternative<Box2>(B)) {
        const Box2& ba = std::get<Box2>(A);
        const Box2& bb = std::get<Box2>(B);
        double d = box_min_dist(ba, bb);
        if (d > 0.0) {
            Estimate coarse = box_pair_interaction_gl(ba, bb, k.s, pol.gauss_order);
            double tol = std::max(pol.abs_tol, pol.rel_tol * std::fabs(coarse.value));
            return box_pair_refined(ba, bb, k.s, pol.gauss_order, tol, pol.max_refine_depth);
        }
        if (box_min_dist(ba, bb) == 0.0 && ba.intersects(bb)) {
            // allow boundary contact only
            Box2 overlap({std::max(ba.lo.x, bb.lo.x), std::max(ba.lo.y, bb.lo.y)},
                         {std::min(ba.hi.x, bb.hi.x), std::min(ba.hi.y, bb.hi.y)});
            if (overlap.area() > 0.0)
                throw std::invalid_argument("interaction_2d: sets must be disjoint");
        }
    } else {
        SlicePtr sa = to_slice(A), sb = to_slice(B);
        double ov = slice_overlap_area(sa, sb);
        double ref = std::min(desc_bbox(A).area(), desc_bbox(B).area());
        if (ov > 1e-12 * std::max(ref, 1e-300))
            throw std::invalid_argument("interaction_2d: sets must be disjoint");
        return sliced_interaction(sa, sb, k.s, pol);
    }
    return sliced_interaction(to_slice(A), to_slice(B), k.s, pol);
}

} // namespace fracperim
