#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fracperim/interval_set.hpp"
#include "fracperim/vec.hpp"

namespace fracperim {

// Finite union of disjoint bounded open intervals with positive total length.
class IntervalUnion {
  public:
    explicit IntervalUnion(std::vector<Interval1D> items);
    const IntervalSet& set() const { return set_; }
    double measure() const { return set_.measure(); }

  private:
    IntervalSet set_;
};

struct Disk {
    Vec2 c;
    double r;
};

// Simple polygon, stored counterclockwise. Membership uses even-odd ray
// casting; values on the boundary itself are unspecified (measure zero).
class PolygonRegion {
  public:
    explicit PolygonRegion(std::vector<Vec2> vertices, bool check_simple = true);

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t edge_count() const { return verts_.size(); }
    double area() const { return area_; }
    double perimeter() const;
    Box2 bbox() const { return bbox_; }

    bool contains(const Vec2& p) const;
    double boundary_dist(const Vec2& p) const;
    double signed_boundary_dist(const Vec2& p) const; // negative inside

    PolygonRegion transformed(const SimilarityMap& m) const;
    PolygonRegion translated(const Vec2& t) const;

    // Intersection with the line t -> origin + t*dir (dir unit), as sorted
    // open t-intervals. Vertices exactly on the line follow a half-open rule
    // so the crossing count stays even.
    IntervalSet slice(const Vec2& origin, const Vec2& dir) const;

    std::pair<Vec2, Vec2> edge(std::size_t i) const {
        return {verts_[i], verts_[(i + 1) % verts_.size()]};
    }

  private:
    std::vector<Vec2> verts_;
    Box2 bbox_;
    double area_ = 0.0;
};

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b);
bool segment_box_intersects(const Vec2& a, const Vec2& b, const Box2& box);
double polygon_area(const std::vector<Vec2>& verts); // signed shoelace

struct BallDesc {
    std::vector<double> c;
    double r;
};

// Union of open balls in dimension 1..3. Full geometric operations are
// provided for dim == 2; other dimensions support generation and gap queries.
class BallSet {
  public:
    BallSet(int dim, std::vector<BallDesc> balls);

    int dim() const { return dim_; }
    const std::vector<BallDesc>& balls() const { return balls_; }
    double measure() const;  // sum of ball volumes (balls assumed disjoint)
    double min_gap() const;  // min over pairs of dist(B_i, B_j), +inf if single

    std::vector<Disk> disks() const; // dim == 2 only

  private:
    int dim_;
    std::vector<BallDesc> balls_;
};

// ---------------------------------------------------------------------------
// Slice expressions: a set A together with exact line sections A ∩ l for the
// 1D-reduction estimators. Offsets/angles where the section can lose
// smoothness (vertices, tangencies) are exposed so quadrature can split there.

class SliceSet;
using SlicePtr = std::shared_ptr<const SliceSet>;

class SliceSet {
  public:
    virtual ~SliceSet() = default;
    virtual IntervalSet slice(const Vec2& origin, const Vec2& dir) const = 0;
    virtual bool bounded() const = 0;
    virtual Box2 bbox() const = 0; // valid only when bounded()
    virtual void critical_offsets(const Vec2& origin, const Vec2& normal,
                                  std::vector<double>& out) const = 0;
    virtual void critical_angles(std::vector<double>& out) const = 0; // mod pi
};

SlicePtr slice_polygon(PolygonRegion poly);
SlicePtr slice_disk(Disk d);
SlicePtr slice_box(Box2 b);
SlicePtr slice_union(std::vector<SlicePtr> parts);
SlicePtr slice_intersect(SlicePtr a, SlicePtr b);
SlicePtr slice_diff(SlicePtr a, SlicePtr b);
SlicePtr slice_complement(SlicePtr a);

// Observation window: the full space, an open ball or an open axis box.
struct Window {
    enum class Kind { Full, Ball, Rect };
    Kind kind = Kind::Full;
    Disk ball{{0.0, 0.0}, 1.0};
    Box2 rect;

    static Window full() { return Window{}; }
    static Window disk_window(Vec2 c, double r);
    static Window rect_window(Box2 b);

    bool bounded() const { return kind != Kind::Full; }
    double measure() const;
    double diam() const;   // bounded only
    Box2 bound_box() const; // bounded only
    bool contains(const Vec2& p) const;
    int classify_box(const Box2& b) const; // 0 outside, 1 inside, 2 straddles
    SlicePtr to_slice() const;             // bounded only
};

} // namespace fracperim
