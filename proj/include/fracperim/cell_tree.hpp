#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fracperim/estimate.hpp"
#include "fracperim/geometry.hpp"

namespace fracperim {

enum class CellTag : std::uint8_t { Interior, Exterior, Boundary, Internal };

struct CellNode {
    Box2 box;
    std::int16_t depth = 0;
    CellTag tag = CellTag::Internal;
    bool pure_interior = false; // subtree consists of Interior leaves only
    bool has_mass = false;      // subtree holds Interior or Boundary leaves
    std::int32_t child0 = -1;   // children occupy child0 .. child0+3
};

// Region oracle used when tagging cells: exact membership plus an exact test
// of whether the topological boundary meets a closed box.
class CellRegion {
  public:
    virtual ~CellRegion() = default;
    virtual bool contains(const Vec2& p) const = 0;
    virtual bool boundary_crosses(const Box2& b) const = 0;
};

std::unique_ptr<CellRegion> make_polygon_region(PolygonRegion poly);
std::unique_ptr<CellRegion> make_disk_region(std::vector<Disk> disks);

// Quadtree over `root`. A cell with uniform corner membership and no boundary
// crossing becomes an Interior/Exterior leaf; cells still cut by the boundary
// at max_depth become Boundary leaves. Every Boundary leaf meets the true
// boundary, so leaf boxes give two-sided enclosures of the region.
class AdaptiveCellTree {
  public:
    AdaptiveCellTree(const CellRegion& region, Box2 root, int max_depth);

    const std::vector<CellNode>& nodes() const { return nodes_; }
    const CellNode& root() const { return nodes_[0]; }
    int max_depth() const { return max_depth_; }

    std::size_t leaf_count(CellTag t) const;
    double leaf_area(CellTag t) const;
    std::vector<Box2> leaf_boxes(CellTag t) const;
    double max_boundary_leaf_size() const;

    // distance from a query box to the union of Boundary leaves
    double boundary_min_dist(const Box2& q) const;
    // min over Boundary leaves L of max-dist(q, L); each leaf holds a true
    // boundary point, so every x in q is within this of the boundary
    double boundary_minmax_dist(const Box2& q) const;

  private:
    std::vector<CellNode> nodes_;
    int max_depth_;
    std::int32_t build(const CellRegion& region, const Box2& box, int depth);
    void expand(const CellRegion& region, std::int32_t idx);
};

// Measure of {x in window : dist(x, boundary leaves) <= rho} with a rigorous
// two-sided bracket from a uniform scan grid. rigorous = false when rho is
// under twice the boundary leaf size (the bracket is then too coarse to pin
// the true boundary neighborhood).
Estimate tubular_volume(const AdaptiveCellTree& tree, double rho, const Window& window);

} // namespace fracperim
