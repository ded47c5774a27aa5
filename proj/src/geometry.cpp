#include "fracperim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace fracperim {

static const double INF = std::numeric_limits<double>::infinity();

IntervalUnion::IntervalUnion(std::vector<Interval1D> items) : set_(std::move(items)) {
    if (set_.empty()) throw std::invalid_argument("IntervalUnion: empty set");
    for (const auto& iv : set_.parts())
        if (iv.unbounded()) throw std::invalid_argument("IntervalUnion: intervals must be bounded");
}

double polygon_area(const std::vector<Vec2>& verts) {
    double a = 0.0;
    std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = verts[i];
        const Vec2& q = verts[(i + 1) % n];
        a += p.cross(q);
    }
    return a / 2;
}

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 == 0.0) return (p - a).norm();
    double t = (p - a).dot(ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + ab * t)).norm();
}

bool segment_box_intersects(const Vec2& a, const Vec2& b, const Box2& box) {
    // slab clipping of the parametric segment
    double t0 = 0.0, t1 = 1.0;
    Vec2 d = b - a;
    auto clip = [&](double p, double q) {
        // p * t <= q
        if (p == 0.0) return q >= 0.0;
        double r = q / p;
        if (p < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    return clip(-d.x, a.x - box.lo.x) && clip(d.x, box.hi.x - a.x) &&
           clip(-d.y, a.y - box.lo.y) && clip(d.y, box.hi.y - a.y);
}

// proper or improper intersection of two segments, excluding the case where
// they only share the endpoints passed as `shared_ok`
static bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    double d1 = orient(c, d, a);
    double d2 = orient(c, d, b);
    double d3 = orient(a, b, c);
    double d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return orient(p, q, r) == 0.0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
               std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
    };
    return on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d);
}

PolygonRegion::PolygonRegion(std::vector<Vec2> vertices, bool check_simple)
    : verts_(std::move(vertices)) {
    std::size_t n = verts_.size();
    if (n < 3) throw std::invalid_argument("PolygonRegion: need at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = verts_[i];
        const Vec2& q = verts_[(i + 1) % n];
        if (p.x == q.x && p.y == q.y)
            throw std::invalid_argument("PolygonRegion: repeated consecutive vertex");
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("PolygonRegion: non-finite vertex");
    }
    double a = polygon_area(verts_);
    if (a == 0.0) throw std::invalid_argument("PolygonRegion: zero area");
    if (a < 0.0) { // store counterclockwise
        std::reverse(verts_.begin(), verts_.end());
        a = -a;
    }
    area_ = a;
    Vec2 lo = verts_[0], hi = verts_[0];
    for (const auto& v : verts_) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
    }
    bbox_ = Box2(lo, hi);

    if (check_simple) {
        // grid hash over edge bboxes; only non-adjacent edges may not touch
        double cell = std::max(bbox_.width(), bbox_.height()) / std::max<std::size_t>(1, (std::size_t)std::sqrt((double)n));
        if (cell <= 0.0) cell = 1.0;
        std::unordered_map<long long, std::vector<std::size_t>> grid;
        auto key = [&](long long ix, long long iy) { return ix * 2000003LL + iy; };
        for (std::size_t i = 0; i < n; ++i) {
            auto [p, q] = edge(i);
            long long x0 = (long long)std::floor(std::min(p.x, q.x) / cell);
            long long x1 = (long long)std::floor(std::max(p.x, q.x) / cell);
            long long y0 = (long long)std::floor(std::min(p.y, q.y) / cell);
            long long y1 = (long long)std::floor(std::max(p.y, q.y) / cell);
            for (long long ix = x0; ix <= x1; ++ix)
                for (long long iy = y0; iy <= y1; ++iy) grid[key(ix, iy)].push_back(i);
        }
        for (const auto& [k, edges] : grid) {
            for (std::size_t ii = 0; ii < edges.size(); ++ii) {
                for (std::size_t jj = ii + 1; jj < edges.size(); ++jj) {
                    std::size_t i = edges[ii], j = edges[jj];
                    if (i > j) std::swap(i, j);
                    bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                    if (adjacent) continue;
                    auto [a1, b1] = edge(i);
                    auto [a2, b2] = edge(j);
                    if (segments_intersect(a1, b1, a2, b2))
                        throw std::invalid_argument("PolygonRegion: self-intersecting outline");
                }
            }
        }
    }
}

double PolygonRegion::perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        auto [a, b] = edge(i);
        p += (b - a).norm();
    }
    return p;
}

bool PolygonRegion::contains(const Vec2& p) const {
    if (!bbox_.contains(p)) return false;
    bool inside = false;
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = verts_[i];
        const Vec2& b = verts_[(i + 1) % n];
        if ((a.y <= p.y) != (b.y <= p.y)) {
            // x coordinate of the edge at height p.y; exact-sign comparison
            double cx = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < cx) inside = !inside;
        }
    }
    return inside;
}

double PolygonRegion::boundary_dist(const Vec2& p) const {
    double d = INF;
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = verts_[i];
        const Vec2& b = verts_[(i + 1) % n];
        d = std::min(d, point_segment_dist(p, a, b));
    }
    return d;
}

double PolygonRegion::signed_boundary_dist(const Vec2& p) const {
    double d = boundary_dist(p);
    return contains(p) ? -d : d;
}

PolygonRegion PolygonRegion::transformed(const SimilarityMap& m) const {
    std::vector<Vec2> out;
    out.reserve(verts_.size());
    for (const auto& v : verts_) out.push_back(m(v));
    return PolygonRegion(std::move(out), false);
}

PolygonRegion PolygonRegion::translated(const Vec2& t) const {
    std::vector<Vec2> out;
    out.reserve(verts_.size());
    for (const auto& v : verts_) out.push_back(v + t);
    return PolygonRegion(std::move(out), false);
}

IntervalSet PolygonRegion::slice(const Vec2& origin, const Vec2& dir) const {
    Vec2 nrm{-dir.y, dir.x};
    std::size_t n = verts_.size();
    std::vector<double> ts;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = verts_[i];
        const Vec2& b = verts_[(i + 1) % n];
        double oa = (a - origin).dot(nrm);
        double ob = (b - origin).dot(nrm);
        // half-open rule: offset 0 counts as the positive side
        bool sa = oa < 0.0, sb = ob < 0.0;
        if (sa == sb) continue;
        double ta = (a - origin).dot(dir);
        double tb = (b - origin).dot(dir);
        ts.push_back(ta + (tb - ta) * (oa / (oa - ob)));
    }
    std::sort(ts.begin(), ts.end());
    if (ts.size() % 2 != 0) ts.pop_back(); // degenerate grazing configuration
    std::vector<Interval1D> parts;
    for (std::size_t i = 0; i + 1 < ts.size(); i += 2) parts.push_back({ts[i], ts[i + 1]});
    return IntervalSet(std::move(parts));
}

// ---------------------------------------------------------------------------

static double unit_ball_volume(int d) {
    return std::exp((d / 2.0) * std::log(M_PI) - std::lgamma(d / 2.0 + 1.0));
}

BallSet::BallSet(int dim, std::vector<BallDesc> balls) : dim_(dim), balls_(std::move(balls)) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("BallSet: dim must be 1, 2 or 3");
    if (balls_.empty()) throw std::invalid_argument("BallSet: empty");
    for (const auto& b : balls_) {
        if ((int)b.c.size() != dim) throw std::invalid_argument("BallSet: center dimension mismatch");
        if (!(b.r > 0.0)) throw std::invalid_argument("BallSet: radius must be > 0");
    }
}

double BallSet::measure() const {
    double v = 0.0;
    for (const auto& b : balls_) v += unit_ball_volume(dim_) * std::pow(b.r, dim_);
    return v;
}

double BallSet::min_gap() const {
    double g = INF;
    for (std::size_t i = 0; i < balls_.size(); ++i) {
        for (std::size_t j = i + 1; j < balls_.size(); ++j) {
            double d2 = 0.0;
            for (int k = 0; k < dim_; ++k) {
                double d = balls_[i].c[k] - balls_[j].c[k];
                d2 += d * d;
            }
            g = std::min(g, std::sqrt(d2) - balls_[i].r - balls_[j].r);
        }
    }
    return g;
}

std::vector<Disk> BallSet::disks() const {
    if (dim_ != 2) throw std::invalid_argument("BallSet::disks: dim must be 2");
    std::vector<Disk> out;
    out.reserve(balls_.size());
    for (const auto& b : balls_) out.push_back({{b.c[0], b.c[1]}, b.r});
    return out;
}

// ---------------------------------------------------------------------------
// slice expressions

namespace {

class PolygonSlice final : public SliceSet {
  public:
    explicit PolygonSlice(PolygonRegion p) : poly_(std::move(p)) {}
    IntervalSet slice(const Vec2& o, const Vec2& d) const override { return poly_.slice(o, d); }
    bool bounded() const override { return true; }
    Box2 bbox() const override { return poly_.bbox(); }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        for (const auto& v : poly_.vertices()) out.push_back((v - o).dot(n));
    }
    void critical_angles(std::vector<double>& out) const override {
        for (std::size_t i = 0; i < poly_.edge_count(); ++i) {
            auto [a, b] = poly_.edge(i);
            double ang = std::atan2(b.y - a.y, b.x - a.x);
            ang = std::fmod(ang + 2 * M_PI, M_PI);
            out.push_back(ang);
        }
    }

  private:
    PolygonRegion poly_;
};

class DiskSlice final : public SliceSet {
  public:
    explicit DiskSlice(Disk d) : d_(d) {
        if (!(d.r > 0.0)) throw std::invalid_argument("DiskSlice: radius must be > 0");
    }
    IntervalSet slice(const Vec2& o, const Vec2& dir) const override {
        Vec2 nrm{-dir.y, dir.x};
        double off = (d_.c - o).dot(nrm);
        if (std::fabs(off) >= d_.r) return IntervalSet();
        double half = std::sqrt(d_.r * d_.r - off * off);
        double ct = (d_.c - o).dot(dir);
        return IntervalSet({{ct - half, ct + half}});
    }
    bool bounded() const override { return true; }
    Box2 bbox() const override {
        return Box2({d_.c.x - d_.r, d_.c.y - d_.r}, {d_.c.x + d_.r, d_.c.y + d_.r});
    }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        double c = (d_.c - o).dot(n);
        out.push_back(c - d_.r);
        out.push_back(c + d_.r);
    }
    void critical_angles(std::vector<double>&) const override {}

  private:
    Disk d_;
};

class BoxSlice final : public SliceSet {
  public:
    explicit BoxSlice(Box2 b) : b_(b) {}
    IntervalSet slice(const Vec2& o, const Vec2& dir) const override {
        double t0 = -INF, t1 = INF;
        double os[2] = {o.x, o.y}, ds[2] = {dir.x, dir.y}, lo[2] = {b_.lo.x, b_.lo.y},
               hi[2] = {b_.hi.x, b_.hi.y};
        for (int k = 0; k < 2; ++k) {
            if (ds[k] == 0.0) {
                if (os[k] <= lo[k] || os[k] >= hi[k]) return IntervalSet();
            } else {
                double a = (lo[k] - os[k]) / ds[k];
                double b = (hi[k] - os[k]) / ds[k];
                if (a > b) std::swap(a, b);
                t0 = std::max(t0, a);
                t1 = std::min(t1, b);
            }
        }
        if (!(t0 < t1)) return IntervalSet();
        return IntervalSet({{t0, t1}});
    }
    bool bounded() const override { return true; }
    Box2 bbox() const override { return b_; }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        Vec2 cs[4] = {b_.lo, {b_.hi.x, b_.lo.y}, b_.hi, {b_.lo.x, b_.hi.y}};
        for (const auto& c : cs) out.push_back((c - o).dot(n));
    }
    void critical_angles(std::vector<double>& out) const override {
        out.push_back(0.0);
        out.push_back(M_PI / 2);
    }

  private:
    Box2 b_;
};

class UnionSlice final : public SliceSet {
  public:
    explicit UnionSlice(std::vector<SlicePtr> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("UnionSlice: empty");
    }
    IntervalSet slice(const Vec2& o, const Vec2& d) const override {
        IntervalSet s;
        for (const auto& p : parts_) s = s.unite(p->slice(o, d));
        return s;
    }
    bool bounded() const override {
        for (const auto& p : parts_)
            if (!p->bounded()) return false;
        return true;
    }
    Box2 bbox() const override {
        Box2 b = parts_[0]->bbox();
        for (std::size_t i = 1; i < parts_.size(); ++i) b = b.merged(parts_[i]->bbox());
        return b;
    }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        for (const auto& p : parts_) p->critical_offsets(o, n, out);
    }
    void critical_angles(std::vector<double>& out) const override {
        for (const auto& p : parts_) p->critical_angles(out);
    }

  private:
    std::vector<SlicePtr> parts_;
};

enum class BinOp { Intersect, Diff };

class BinarySlice final : public SliceSet {
  public:
    BinarySlice(SlicePtr a, SlicePtr b, BinOp op) : a_(std::move(a)), b_(std::move(b)), op_(op) {}
    IntervalSet slice(const Vec2& o, const Vec2& d) const override {
        IntervalSet sa = a_->slice(o, d);
        if (sa.empty()) return sa;
        IntervalSet sb = b_->slice(o, d);
        return op_ == BinOp::Intersect ? sa.intersect(sb) : sa.subtract(sb);
    }
    bool bounded() const override {
        return a_->bounded() || (op_ == BinOp::Intersect && b_->bounded());
    }
    Box2 bbox() const override {
        if (a_->bounded()) return a_->bbox();
        return b_->bbox();
    }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        a_->critical_offsets(o, n, out);
        b_->critical_offsets(o, n, out);
    }
    void critical_angles(std::vector<double>& out) const override {
        a_->critical_angles(out);
        b_->critical_angles(out);
    }

  private:
    SlicePtr a_, b_;
    BinOp op_;
};

class ComplementSlice final : public SliceSet {
  public:
    explicit ComplementSlice(SlicePtr a) : a_(std::move(a)) {}
    IntervalSet slice(const Vec2& o, const Vec2& d) const override {
        return a_->slice(o, d).complement();
    }
    bool bounded() const override { return false; }
    Box2 bbox() const override { throw std::logic_error("ComplementSlice: unbounded"); }
    void critical_offsets(const Vec2& o, const Vec2& n, std::vector<double>& out) const override {
        a_->critical_offsets(o, n, out);
    }
    void critical_angles(std::vector<double>& out) const override { a_->critical_angles(out); }

  private:
    SlicePtr a_;
};

} // namespace

Window Window::disk_window(Vec2 c, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("Window: radius must be > 0");
    Window w;
    w.kind = Kind::Ball;
    w.ball = {c, r};
    return w;
}

Window Window::rect_window(Box2 b) {
    if (!(b.area() > 0.0)) throw std::invalid_argument("Window: box must have positive area");
    Window w;
    w.kind = Kind::Rect;
    w.rect = b;
    return w;
}

double Window::measure() const {
    switch (kind) {
        case Kind::Ball: return M_PI * ball.r * ball.r;
        case Kind::Rect: return rect.area();
        default: return INF;
    }
}

double Window::diam() const {
    switch (kind) {
        case Kind::Ball: return 2.0 * ball.r;
        case Kind::Rect: return rect.diam();
        default: throw std::logic_error("Window::diam: unbounded window");
    }
}

Box2 Window::bound_box() const {
    switch (kind) {
        case Kind::Ball:
            return Box2({ball.c.x - ball.r, ball.c.y - ball.r},
                        {ball.c.x + ball.r, ball.c.y + ball.r});
        case Kind::Rect: return rect;
        default: throw std::logic_error("Window::bound_box: unbounded window");
    }
}

bool Window::contains(const Vec2& p) const {
    switch (kind) {
        case Kind::Ball: return (p - ball.c).norm2() < ball.r * ball.r;
        case Kind::Rect:
            return p.x > rect.lo.x && p.x < rect.hi.x && p.y > rect.lo.y && p.y < rect.hi.y;
        default: return true;
    }
}

int Window::classify_box(const Box2& b) const {
    switch (kind) {
        case Kind::Ball: {
            if (box_point_max_dist(b, ball.c) <= ball.r) return 1;
            if (box_point_dist(b, ball.c) >= ball.r) return 0;
            return 2;
        }
        case Kind::Rect: {
            if (b.lo.x >= rect.lo.x && b.hi.x <= rect.hi.x && b.lo.y >= rect.lo.y &&
                b.hi.y <= rect.hi.y)
                return 1;
            if (!b.intersects(rect)) return 0;
            return 2;
        }
        default: return 1;
    }
}

SlicePtr Window::to_slice() const {
    switch (kind) {
        case Kind::Ball: return slice_disk(ball);
        case Kind::Rect: return slice_box(rect);
        default: throw std::logic_error("Window::to_slice: unbounded window");
    }
}

SlicePtr slice_polygon(PolygonRegion poly) { return std::make_shared<PolygonSlice>(std::move(poly)); }
SlicePtr slice_disk(Disk d) { return std::make_shared<DiskSlice>(d); }
SlicePtr slice_box(Box2 b) { return std::make_shared<BoxSlice>(b); }
SlicePtr slice_union(std::vector<SlicePtr> parts) {
    return std::make_shared<UnionSlice>(std::move(parts));
}
SlicePtr slice_intersect(SlicePtr a, SlicePtr b) {
    return std::make_shared<BinarySlice>(std::move(a), std::move(b), BinOp::Intersect);
}
SlicePtr slice_diff(SlicePtr a, SlicePtr b) {
    return std::make_shared<BinarySlice>(std::move(a), std::move(b), BinOp::Diff);
}
SlicePtr slice_complement(SlicePtr a) { return std::make_shared<ComplementSlice>(std::move(a)); }

} // namespace fracperim
