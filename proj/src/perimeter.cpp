#include "fracperim/perimeter.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fracperim {

PerimeterBreakdown frac_perimeter_1d(const IntervalUnion& E, double s) {
    validate_s(s);
    PerimeterBreakdown out;
    out.s = s;
    out.local = Estimate::exact(line_perimeter_1d(E.set(), s));
    out.nonlocal = Estimate::exact(0.0);
    out.total = out.local;
    return out;
}

PerimeterBreakdown frac_perimeter_1d(const IntervalUnion& E, const Interval1D& window, double s) {
    validate_s(s);
    if (window.unbounded() || !(window.length() > 0.0))
        throw std::invalid_argument("frac_perimeter_1d: window must be a bounded interval");
    IntervalSet W({window});
    IntervalSet EiW = E.set().intersect(W);
    IntervalSet WmE = W.subtract(E.set());
    IntervalSet EoW = E.set().subtract(W);
    IntervalSet CEoW = IntervalSet::whole_line().subtract(E.set()).subtract(W);

    PerimeterBreakdown out;
    out.s = s;
    out.local = Estimate::exact(interval_sets_interaction(EiW, WmE, s));
    double cross = interval_sets_interaction(EiW, CEoW, s) + interval_sets_interaction(EoW, WmE, s);
    out.nonlocal = Estimate::exact(cross);
    out.total = out.local + out.nonlocal;
    std::ostringstream d;
    d << "interval(" << window.lo << "," << window.hi << ")";
    out.window_desc = d.str();
    return out;
}

PerimeterBreakdown frac_perimeter(const SlicePtr& E, const Window& omega, double s,
                                  const QuadraturePolicy& pol) {
    validate_s(s);
    if (!E || !E->bounded()) throw std::invalid_argument("frac_perimeter: E must be bounded");

    PerimeterBreakdown out;
    out.s = s;
    if (!omega.bounded()) {
        out.local = sliced_interaction(E, slice_complement(E), s, pol);
        out.nonlocal = Estimate::exact(0.0);
        out.total = out.local;
        return out;
    }

    SlicePtr W = omega.to_slice();
    SlicePtr EiW = slice_intersect(E, W);
    SlicePtr WmE = slice_diff(W, E);
    SlicePtr EoW = slice_diff(E, W);
    SlicePtr CEoW = slice_complement(slice_union({E, W}));

    out.local = sliced_interaction(EiW, WmE, s, pol);
    Estimate cross = sliced_interaction(EiW, CEoW, s, pol);
    // skip the second cross term when E exits the window nowhere
    if (slice_overlap_area(EoW, EoW) > 1e-14 * omega.measure())
        cross += sliced_interaction(EoW, WmE, s, pol);
    out.nonlocal = cross;
    out.total = out.local + out.nonlocal;

    std::ostringstream d;
    if (omega.kind == Window::Kind::Ball)
        d << "ball(" << omega.ball.c.x << "," << omega.ball.c.y << ";" << omega.ball.r << ")";
    else
        d << "rect(" << omega.rect.lo.x << "," << omega.rect.lo.y << ";" << omega.rect.hi.x << ","
          << omega.rect.hi.y << ")";
    out.window_desc = d.str();
    return out;
}

namespace {

// length of segment [p,q] inside the window, plus overlap length of the
// segment lying exactly on a rectangular window side
struct ClipResult {
    double inside = 0.0;
    double on_boundary = 0.0;
};

ClipResult clip_segment_ball(const Vec2& p, const Vec2& q, const Disk& b) {
    ClipResult r;
    Vec2 d = q - p;
    double len = d.norm();
    if (len == 0.0) return r;
    Vec2 u = d * (1.0 / len);
    Vec2 w = p - b.c;
    // |w + t u|^2 = r^2
    double bq = w.dot(u);
    double cq = w.norm2() - b.r * b.r;
    double disc = bq * bq - cq;
    if (disc <= 0.0) return r; // tangent or outside: zero length inside
    double t0 = -bq - std::sqrt(disc), t1 = -bq + std::sqrt(disc);
    double lo = std::max(0.0, t0), hi = std::min(len, t1);
    if (hi > lo) r.inside = hi - lo;
    return r;
}

ClipResult clip_segment_rect(const Vec2& p, const Vec2& q, const Box2& box) {
    ClipResult r;
    double len = (q - p).norm();
    if (len == 0.0) return r;
    // axis-collinear edge lying on a side of the box
    if (p.x == q.x && (p.x == box.lo.x || p.x == box.hi.x)) {
        double lo = std::max(std::min(p.y, q.y), box.lo.y);
        double hi = std::min(std::max(p.y, q.y), box.hi.y);
        if (hi > lo) r.on_boundary = hi - lo;
        return r;
    }
    if (p.y == q.y && (p.y == box.lo.y || p.y == box.hi.y)) {
        double lo = std::max(std::min(p.x, q.x), box.lo.x);
        double hi = std::min(std::max(p.x, q.x), box.hi.x);
        if (hi > lo) r.on_boundary = hi - lo;
        return r;
    }
    // Liang-Barsky
    Vec2 d = q - p;
    double t0 = 0.0, t1 = 1.0;
    double pa[4] = {-d.x, d.x, -d.y, d.y};
    double qa[4] = {p.x - box.lo.x, box.hi.x - p.x, p.y - box.lo.y, box.hi.y - p.y};
    for (int i = 0; i < 4; ++i) {
        if (pa[i] == 0.0) {
            if (qa[i] < 0.0) return r;
            continue;
        }
        double t = qa[i] / pa[i];
        if (pa[i] < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
    }
    if (t1 > t0) r.inside = (t1 - t0) * len;
    return r;
}

} // namespace

ClassicalPerimeter classical_perimeter(const PolygonRegion& E, const Window& omega) {
    ClassicalPerimeter out;
    if (!omega.bounded()) {
        out.value = E.perimeter();
        return out;
    }
    for (std::size_t i = 0; i < E.edge_count(); ++i) {
        auto [p, q] = E.edge(i);
        ClipResult c = (omega.kind == Window::Kind::Ball) ? clip_segment_ball(p, q, omega.ball)
                                                          : clip_segment_rect(p, q, omega.rect);
        out.value += c.inside + 0.5 * c.on_boundary;
        if (c.on_boundary > 0.0) out.edge_on_boundary = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// lacunary interval union E = ⋃_k (a^{2k+1}, a^{2k})

IntervalUnion lacunary_set(double a, int K) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("lacunary_set: a must be in (0,1)");
    if (K < 1) throw std::invalid_argument("lacunary_set: need K >= 1");
    std::vector<Interval1D> items;
    for (int k = 1; k <= K; ++k) {
        double hi = std::pow(a, 2.0 * k);
        double lo = std::pow(a, 2.0 * k + 1);
        if (lo == hi) break; // underflow: deeper levels are numerically empty
        items.push_back({lo, hi});
    }
    return IntervalUnion(std::move(items));
}

Estimate lacunary_perimeter(double a, double s, int K) {
    validate_s(s);
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("lacunary_perimeter: a must be in (0,1)");
    if (K < 1) throw std::invalid_argument("lacunary_perimeter: need K >= 1");

    const double q = std::pow(a, 2.0 * (1.0 - s));
    auto apow = [a](double e) { return std::pow(a, e); };

    // intervals of the set: I2k = (a^{2k+1}, a^{2k}); gaps: G_j = (a^{2j}, a^{2j-1})
    double near_window = 0.0; // interactions with (-1,0) and (a,1)
    double gaps = 0.0;        // interactions with the gaps inside (0,a)
    double exterior = 0.0;    // interactions with the complement of (-1,1)
    for (int k = 1; k <= K; ++k) {
        double lo = apow(2.0 * k + 1), hi = apow(2.0 * k);
        if (lo >= hi) break;
        near_window += interval_interaction(-1.0, 0.0, lo, hi, s);
        near_window += interval_interaction(lo, hi, a, 1.0, s);
        exterior += interval_ray_interaction(lo, hi, 1.0, s);   // right ray [1, inf)
        exterior += interval_ray_interaction(-hi, -lo, 1.0, s); // left ray (-inf, -1], reflected
        for (int j = 1; j <= K; ++j) {
            double glo = apow(2.0 * j), ghi = apow(2.0 * j - 1);
            if (glo >= ghi) break;
            if (j <= k)
                gaps += interval_interaction(lo, hi, glo, ghi, s);
            else
                gaps += interval_interaction(glo, ghi, lo, hi, s);
        }
    }

    // geometric tails for everything beyond level K (each term positive, so
    // truncation only under-counts; the bounds below majorise the remainder)
    double tail = 0.0;
    double qK1 = std::pow(q, K + 1.0);
    // window terms: per level <= q^k/(s(1-s)) on the left and
    // (-log a) a^{2k}/(s (1-a)^s) on the right
    tail += qK1 / ((1.0 - q) * s * (1.0 - s));
    tail += (-std::log(a)) / (s * std::pow(1.0 - a, s)) * apow(2.0 * (K + 1.0)) / (1.0 - a * a);
    // gap terms: a deep interval J sees at most its full-line perimeter
    // 2|J|^{1-s}/(s(1-s)) from everything else
    double c2 = 2.0 * std::pow(1.0 - a, 1.0 - s) / (s * (1.0 - s) * (1.0 - q));
    tail += c2 * (qK1 + apow((2.0 * K + 1.0) * (1.0 - s)));
    // exterior: dist to the complement of (-1,1) is at least 1 - a^2
    double d = 1.0 - a * a;
    tail += 2.0 * (1.0 - a) * apow(2.0 * (K + 1.0)) / (d * s * std::pow(d, s));

    return Estimate(near_window + gaps + exterior + tail / 2, tail / 2, true);
}

double lacunary_lower_bound(double a, double s) {
    validate_s(s);
    double q = std::pow(a, 2.0 * (1.0 - s));
    double e = 1.0 - s;
    return (std::pow(a, 2.0 * e) * std::pow(1.0 - a, e) + std::pow(a, e) * std::pow(1.0 - a, e) -
            std::pow(a, e) * std::pow(1.0 - a * a, e)) /
           (s * (1.0 - q));
}

} // namespace fracperim
