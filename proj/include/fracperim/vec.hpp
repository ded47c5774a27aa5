#pragma once

#include <cmath>
#include <stdexcept>

namespace fracperim {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double c, const Vec2& v) { return v * c; }

// cross(b-a, c-a); sign gives the orientation of the triple (a,b,c)
inline double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b - a).cross(c - a);
}

struct Box2 {
    Vec2 lo, hi;

    Box2() = default;
    Box2(Vec2 l, Vec2 h) : lo(l), hi(h) {
        if (!(lo.x <= hi.x && lo.y <= hi.y)) throw std::invalid_argument("Box2: lo must be <= hi");
    }

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }
    double diam() const { return std::hypot(width(), height()); }
    Vec2 center() const { return {(lo.x + hi.x) / 2, (lo.y + hi.y) / 2}; }
    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    Box2 merged(const Box2& o) const {
        return Box2({std::min(lo.x, o.lo.x), std::min(lo.y, o.lo.y)},
                    {std::max(hi.x, o.hi.x), std::max(hi.y, o.hi.y)});
    }
    bool intersects(const Box2& o) const {
        return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
    }
};

inline double box_min_dist(const Box2& a, const Box2& b) {
    double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
    double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
    return std::hypot(dx, dy);
}

inline double box_max_dist(const Box2& a, const Box2& b) {
    double dx = std::max(a.hi.x - b.lo.x, b.hi.x - a.lo.x);
    double dy = std::max(a.hi.y - b.lo.y, b.hi.y - a.lo.y);
    return std::hypot(dx, dy);
}

// dist from a point to a closed box (0 inside)
inline double box_point_dist(const Box2& b, const Vec2& p) {
    double dx = std::max({0.0, b.lo.x - p.x, p.x - b.hi.x});
    double dy = std::max({0.0, b.lo.y - p.y, p.y - b.hi.y});
    return std::hypot(dx, dy);
}

inline double box_point_max_dist(const Box2& b, const Vec2& p) {
    double dx = std::max(p.x - b.lo.x, b.hi.x - p.x);
    double dy = std::max(p.y - b.lo.y, b.hi.y - p.y);
    return std::hypot(dx, dy);
}

// Orientation-preserving similarity x -> scale * R(angle) * x + shift.
struct SimilarityMap {
    double scale = 1.0;
    double angle = 0.0;
    Vec2 shift;

    SimilarityMap() = default;
    SimilarityMap(double s, double a, Vec2 t) : scale(s), angle(a), shift(t) {
        if (!(s > 0.0)) throw std::invalid_argument("SimilarityMap: scale must be > 0");
    }

    Vec2 operator()(const Vec2& p) const {
        double c = std::cos(angle), s = std::sin(angle);
        return {scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y};
    }

    // this after other: (this o other)(x) = this(other(x))
    SimilarityMap compose(const SimilarityMap& other) const {
        double c = std::cos(angle), s = std::sin(angle);
        Vec2 rt{scale * (c * other.shift.x - s * other.shift.y),
                scale * (s * other.shift.x + c * other.shift.y)};
        return SimilarityMap(scale * other.scale, angle + other.angle, rt + shift);
    }
};

} // namespace fracperim
