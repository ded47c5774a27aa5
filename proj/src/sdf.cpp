#include "fracperim/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracperim {

DistanceGrid::DistanceGrid(const PolygonRegion& poly, double spacing, Box2 bbox) : bbox_(bbox) {
    if (!(spacing > 0.0)) throw std::invalid_argument("DistanceGrid: spacing must be > 0");
    Box2 pb = poly.bbox();
    margin_ = std::min(std::min(pb.lo.x - bbox.lo.x, bbox.hi.x - pb.hi.x),
                       std::min(pb.lo.y - bbox.lo.y, bbox.hi.y - pb.hi.y));
    if (!(margin_ > 0.0)) throw std::invalid_argument("DistanceGrid: insufficient bounding box");

    nx_ = std::max(1, (int)std::ceil(bbox.width() / spacing));
    ny_ = std::max(1, (int)std::ceil(bbox.height() / spacing));
    if ((long long)(nx_ + 1) * (ny_ + 1) > 30'000'000)
        throw std::invalid_argument("DistanceGrid: grid too large");
    hx_ = bbox.width() / nx_;
    hy_ = bbox.height() / ny_;

    vals_.resize((std::size_t)(nx_ + 1) * (ny_ + 1));
    for (int j = 0; j <= ny_; ++j) {
        for (int i = 0; i <= nx_; ++i) {
            Vec2 p = node(i, j);
            double d = poly.boundary_dist(p);
            vals_[(std::size_t)j * (nx_ + 1) + i] = poly.contains(p) ? -d : d;
        }
    }
}

namespace {

// area of {v < r} inside a triangle with linearly interpolated vertex values
double tri_sublevel_area(Vec2 p0, double v0, Vec2 p1, double v1, Vec2 p2, double v2, double r) {
    double T = 0.5 * std::fabs((p1 - p0).cross(p2 - p0));
    bool b0 = v0 < r, b1 = v1 < r, b2 = v2 < r;
    int nb = (int)b0 + (int)b1 + (int)b2;
    if (nb == 3) return T;
    if (nb == 0) return 0.0;
    // rotate so the odd vertex is v0
    auto frac = [r](double va, double vb) {
        double d = vb - va;
        if (d == 0.0) return 0.5;
        double t = (r - va) / d;
        return std::clamp(t, 0.0, 1.0);
    };
    if (nb == 1) {
        if (b1) { std::swap(v0, v1); std::swap(p0, p1); }
        else if (b2) { std::swap(v0, v2); std::swap(p0, p2); }
        return T * frac(v0, v1) * frac(v0, v2);
    }
    // nb == 2: odd vertex is the one above the level
    if (!b1) { std::swap(v0, v1); std::swap(p0, p1); }
    else if (!b2) { std::swap(v0, v2); std::swap(p0, p2); }
    return T * (1.0 - frac(v0, v1) * frac(v0, v2));
}

} // namespace

LevelSetClassification level_set_region(const DistanceGrid& field, double r) {
    if (r >= field.margin())
        throw std::invalid_argument("level_set_region: level exceeds grid margin");

    LevelSetClassification out;
    out.ncx = field.nx();
    out.ncy = field.ny();
    out.cells.resize((std::size_t)out.ncx * out.ncy);

    double halfdiag = 0.5 * std::hypot(field.hx(), field.hy());
    double cell_area = field.hx() * field.hy();
    double lower = 0.0, band = 0.0, value = 0.0;

    for (int j = 0; j < out.ncy; ++j) {
        for (int i = 0; i < out.ncx; ++i) {
            double v00 = field.value(i, j), v10 = field.value(i + 1, j);
            double v01 = field.value(i, j + 1), v11 = field.value(i + 1, j + 1);
            double vmin = std::min(std::min(v00, v10), std::min(v01, v11));
            double vmax = std::max(std::max(v00, v10), std::max(v01, v11));
            LevelCell tag;
            if (vmax + halfdiag < r) {
                tag = LevelCell::Inside;
                lower += cell_area;
                value += cell_area;
            } else if (vmin - halfdiag > r) {
                tag = LevelCell::Outside;
            } else {
                tag = LevelCell::Band;
                band += cell_area;
                Vec2 p00 = field.node(i, j), p10 = field.node(i + 1, j);
                Vec2 p01 = field.node(i, j + 1), p11 = field.node(i + 1, j + 1);
                value += tri_sublevel_area(p00, v00, p10, v10, p11, v11, r);
                value += tri_sublevel_area(p00, v00, p11, v11, p01, v01, r);
            }
            out.cells[(std::size_t)j * out.ncx + i] = tag;
        }
    }
    double upper = lower + band;
    double err = std::max(value - lower, upper - value);
    out.area = Estimate(value, err, true);
    out.band_area = band;
    return out;
}

} // namespace fracperim
