#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracperim/kernel.hpp"

// L_s(A,B) in the plane reduces exactly to 1D: writing pairs (x, y) as a line
// direction, an offset and two positions on the line,
//   \int_A \int_B |x-y|^(-(2+s)) dx dy
//     = \int_0^pi \int_R  L_s^{1D}(A ∩ l, B ∩ l)  d(offset) d(angle)
// with the 1D kernel |t-u|^(-(1+s)). Chord interactions have closed forms, so
// the only numerical work is a smooth 2D quadrature over (angle, offset).

namespace fracperim {

static void thin_sorted(std::vector<double>& v, std::size_t cap) {
    if (v.size() <= cap) return;
    std::vector<double> out;
    out.reserve(cap);
    double stride = double(v.size() - 1) / double(cap - 1);
    for (std::size_t i = 0; i < cap; ++i) out.push_back(v[(std::size_t)std::llround(i * stride)]);
    v = std::move(out);
}

static void dedupe_sorted(std::vector<double>& v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    v = std::move(out);
}

namespace {
struct BoundCircle {
    Vec2 c;
    double r;
};
} // namespace

static BoundCircle bound_circle(const SlicePtr& a) {
    Box2 b = a->bbox();
    return {b.center(), b.diam() / 2};
}

Estimate sliced_interaction(const SlicePtr& A0, const SlicePtr& B0, double s,
                            const QuadraturePolicy& pol) {
    validate_s(s);
    SlicePtr A = A0, B = B0;
    if (!A->bounded()) std::swap(A, B);
    if (!A->bounded())
        throw std::invalid_argument("sliced_interaction: at least one set must be bounded");
    BoundCircle ca = bound_circle(A);
    bool b_bounded = B->bounded();
    BoundCircle cb = b_bounded ? bound_circle(B) : BoundCircle{};

    std::vector<double> angles;
    A->critical_angles(angles);
    B->critical_angles(angles);
    angles.push_back(0.0);
    angles.push_back(M_PI);
    for (auto& a : angles) a = std::min(std::max(a, 0.0), M_PI);
    dedupe_sorted(angles, 1e-12);
    thin_sorted(angles, 96);
    if (angles.front() > 0.0) angles.insert(angles.begin(), 0.0);
    if (angles.back() < M_PI) angles.push_back(M_PI);

    const double overlap_clip = std::numeric_limits<double>::infinity();

    AdaptiveOptions inner_opt;
    inner_opt.rel_tol = pol.rel_tol * 0.3;
    inner_opt.abs_tol = 0.0;
    inner_opt.max_panels = pol.max_panels_inner;

    auto theta_integrand = [&](double theta) -> std::pair<double, double> {
        Vec2 dir{std::cos(theta), std::sin(theta)};
        Vec2 nrm{-dir.y, dir.x};
        double alo = ca.c.dot(nrm) - ca.r, ahi = ca.c.dot(nrm) + ca.r;
        if (b_bounded) {
            alo = std::max(alo, cb.c.dot(nrm) - cb.r);
            ahi = std::min(ahi, cb.c.dot(nrm) + cb.r);
        }
        if (!(alo < ahi)) return {0.0, 0.0};

        std::vector<double> xs;
        A->critical_offsets({0.0, 0.0}, nrm, xs);
        B->critical_offsets({0.0, 0.0}, nrm, xs);
        xs.push_back(alo);
        xs.push_back(ahi);
        std::vector<double> cut;
        cut.reserve(xs.size());
        for (double x : xs)
            if (x >= alo && x <= ahi) cut.push_back(x);
        dedupe_sorted(cut, 1e-14 * (ahi - alo) + 1e-300);
        thin_sorted(cut, 192);
        if (cut.size() < 2) return {0.0, 0.0};
        cut.front() = alo;
        cut.back() = ahi;

        auto xi_integrand = [&](double xi) -> std::pair<double, double> {
            Vec2 origin = nrm * xi;
            IntervalSet sa = A->slice(origin, dir);
            if (sa.empty()) return {0.0, 0.0};
            IntervalSet sb = B->slice(origin, dir);
            if (sb.empty()) return {0.0, 0.0};
            return {interval_sets_interaction(sa, sb, s, overlap_clip), 0.0};
        };
        Estimate inner = integrate_adaptive(xi_integrand, cut, inner_opt);
        return {inner.value, inner.error + (inner.rigorous ? 0.0 : inner.error)};
    };

    AdaptiveOptions outer_opt;
    outer_opt.rel_tol = pol.rel_tol;
    outer_opt.abs_tol = pol.abs_tol;
    outer_opt.max_panels = pol.max_panels_outer;
    return integrate_adaptive(theta_integrand, angles, outer_opt);
}

double slice_overlap_area(const SlicePtr& A0, const SlicePtr& B0) {
    SlicePtr A = A0, B = B0;
    if (!A->bounded()) std::swap(A, B);
    if (!A->bounded())
        throw std::invalid_argument("slice_overlap_area: at least one set must be bounded");
    // Fubini along a fixed generic direction: one offset integral is exact
    double theta = 0.398764913;
    Vec2 dir{std::cos(theta), std::sin(theta)};
    Vec2 nrm{-dir.y, dir.x};
    BoundCircle ca = bound_circle(A);
    double alo = ca.c.dot(nrm) - ca.r, ahi = ca.c.dot(nrm) + ca.r;
    std::vector<double> cut;
    A->critical_offsets({0.0, 0.0}, nrm, cut);
    B->critical_offsets({0.0, 0.0}, nrm, cut);
    cut.push_back(alo);
    cut.push_back(ahi);
    std::vector<double> kept;
    for (double x : cut)
        if (x >= alo && x <= ahi) kept.push_back(x);
    dedupe_sorted(kept, 1e-14 * (ahi - alo) + 1e-300);
    thin_sorted(kept, 256);
    if (kept.size() < 2) return 0.0;

    auto f = [&](double xi) -> std::pair<double, double> {
        Vec2 origin = nrm * xi;
        IntervalSet sa = A->slice(origin, dir);
        if (sa.empty()) return {0.0, 0.0};
        IntervalSet sb = B->slice(origin, dir);
        return {sa.intersect(sb).measure(), 0.0};
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-7;
    opt.abs_tol = 1e-14 * ca.r * ca.r;
    opt.max_panels = 800;
    Estimate e = integrate_adaptive(f, kept, opt);
    return std::max(0.0, e.value);
}

} // namespace fracperim
