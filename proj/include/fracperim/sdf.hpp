#pragma once

#include <cstdint>
#include <vector>

#include "fracperim/estimate.hpp"
#include "fracperim/geometry.hpp"

namespace fracperim {

// Signed distance to a polygon boundary sampled on a uniform node grid.
// Node values are exact (point-to-segment over all edges, sign by membership),
// so the 1-Lipschitz property of the distance gives rigorous cell bounds.
class DistanceGrid {
  public:
    DistanceGrid(const PolygonRegion& poly, double spacing, Box2 bbox);

    int nx() const { return nx_; }  // cells along x; nodes are nx+1
    int ny() const { return ny_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    Box2 bbox() const { return bbox_; }
    double margin() const { return margin_; } // clearance around the polygon bbox

    double value(int i, int j) const { return vals_[(std::size_t)j * (nx_ + 1) + i]; }
    Vec2 node(int i, int j) const { return {bbox_.lo.x + i * hx_, bbox_.lo.y + j * hy_}; }

  private:
    int nx_, ny_;
    double hx_, hy_;
    Box2 bbox_;
    double margin_;
    std::vector<double> vals_;
};

enum class LevelCell : std::uint8_t { Inside, Outside, Band };

// Classification of the grid cells against the sublevel set {d < r}, with an
// area estimate: Inside and Outside tags are certain (Lipschitz bound from
// the four exact corner values), Band cells contribute a bracket plus a
// linearly interpolated central value.
struct LevelSetClassification {
    int ncx = 0, ncy = 0;
    std::vector<LevelCell> cells; // row-major, ncx * ncy
    Estimate area;
    double band_area = 0.0;

    LevelCell at(int i, int j) const { return cells[(std::size_t)j * ncx + i]; }
};

LevelSetClassification level_set_region(const DistanceGrid& field, double r);

} // namespace fracperim
