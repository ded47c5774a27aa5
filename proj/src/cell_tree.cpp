#include "fracperim/cell_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fracperim/kernel.hpp"
#include "fracperim/quadrature.hpp"

namespace fracperim {

static const double INF = std::numeric_limits<double>::infinity();

namespace {

class PolygonCellRegion final : public CellRegion {
  public:
    explicit PolygonCellRegion(PolygonRegion poly) : poly_(std::move(poly)) {
        // uniform grid over edge bounding boxes for crossing queries
        std::size_t n = poly_.edge_count();
        Box2 bb = poly_.bbox();
        cell_ = std::max(bb.width(), bb.height()) / std::max<double>(1.0, std::sqrt((double)n));
        if (!(cell_ > 0.0)) cell_ = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto [p, q] = poly_.edge(i);
            long long x0 = (long long)std::floor(std::min(p.x, q.x) / cell_);
            long long x1 = (long long)std::floor(std::max(p.x, q.x) / cell_);
            long long y0 = (long long)std::floor(std::min(p.y, q.y) / cell_);
            long long y1 = (long long)std::floor(std::max(p.y, q.y) / cell_);
            for (long long ix = x0; ix <= x1; ++ix)
                for (long long iy = y0; iy <= y1; ++iy) grid_[key(ix, iy)].push_back((int)i);
        }
    }

    bool contains(const Vec2& p) const override { return poly_.contains(p); }

    bool boundary_crosses(const Box2& b) const override {
        long long x0 = (long long)std::floor(b.lo.x / cell_);
        long long x1 = (long long)std::floor(b.hi.x / cell_);
        long long y0 = (long long)std::floor(b.lo.y / cell_);
        long long y1 = (long long)std::floor(b.hi.y / cell_);
        // for large query boxes fall back to scanning all edges once
        if ((x1 - x0 + 1) * (y1 - y0 + 1) > (long long)poly_.edge_count()) {
            for (std::size_t i = 0; i < poly_.edge_count(); ++i) {
                auto [p, q] = poly_.edge(i);
                if (segment_box_intersects(p, q, b)) return true;
            }
            return false;
        }
        scratch_.clear();
        for (long long ix = x0; ix <= x1; ++ix)
            for (long long iy = y0; iy <= y1; ++iy) {
                auto it = grid_.find(key(ix, iy));
                if (it == grid_.end()) continue;
                for (int e : it->second) scratch_.push_back(e);
            }
        std::sort(scratch_.begin(), scratch_.end());
        scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
        for (int e : scratch_) {
            auto [p, q] = poly_.edge((std::size_t)e);
            if (segment_box_intersects(p, q, b)) return true;
        }
        return false;
    }

  private:
    static long long key(long long ix, long long iy) { return ix * 2000003LL + iy; }
    PolygonRegion poly_;
    double cell_;
    std::unordered_map<long long, std::vector<int>> grid_;
    mutable std::vector<int> scratch_;
};

class DiskCellRegion final : public CellRegion {
  public:
    explicit DiskCellRegion(std::vector<Disk> d) : disks_(std::move(d)) {
        if (disks_.empty()) throw std::invalid_argument("DiskCellRegion: empty");
    }
    bool contains(const Vec2& p) const override {
        for (const auto& d : disks_)
            if ((p - d.c).norm2() < d.r * d.r) return true;
        return false;
    }
    bool boundary_crosses(const Box2& b) const override {
        for (const auto& d : disks_) {
            if (box_point_dist(b, d.c) <= d.r && box_point_max_dist(b, d.c) >= d.r) return true;
        }
        return false;
    }

  private:
    std::vector<Disk> disks_;
};

} // namespace

std::unique_ptr<CellRegion> make_polygon_region(PolygonRegion poly) {
    return std::make_unique<PolygonCellRegion>(std::move(poly));
}
std::unique_ptr<CellRegion> make_disk_region(std::vector<Disk> disks) {
    return std::make_unique<DiskCellRegion>(std::move(disks));
}

AdaptiveCellTree::AdaptiveCellTree(const CellRegion& region, Box2 root, int max_depth)
    : max_depth_(max_depth) {
    if (max_depth < 0 || max_depth > 16)
        throw std::invalid_argument("AdaptiveCellTree: max_depth out of range");
    if (!(root.area() > 0.0)) throw std::invalid_argument("AdaptiveCellTree: empty root box");
    build(region, root, 0);
}

std::int32_t AdaptiveCellTree::build(const CellRegion& region, const Box2& box, int depth) {
    std::int32_t idx = (std::int32_t)nodes_.size();
    nodes_.push_back(CellNode{box, (std::int16_t)depth, CellTag::Internal, false, false, -1});
    expand(region, idx);
    return idx;
}

// Tags nodes_[idx] or splits it. The four children are allocated as one
// contiguous block before any grandchild, so child indices are child0 + k;
// nodes_ reallocates while recursing, so no references are held across calls.
void AdaptiveCellTree::expand(const CellRegion& region, std::int32_t idx) {
    const Box2 box = nodes_[idx].box;
    const int depth = nodes_[idx].depth;

    bool crossing = region.boundary_crosses(box);
    Vec2 corners[4] = {box.lo, {box.hi.x, box.lo.y}, box.hi, {box.lo.x, box.hi.y}};
    bool c0 = region.contains(corners[0]);
    bool uniform = true;
    for (int i = 1; i < 4; ++i) uniform = uniform && region.contains(corners[i]) == c0;

    if (!crossing && uniform) {
        nodes_[idx].tag = c0 ? CellTag::Interior : CellTag::Exterior;
        nodes_[idx].pure_interior = c0;
        nodes_[idx].has_mass = c0;
        return;
    }
    if (depth >= max_depth_) {
        nodes_[idx].tag = CellTag::Boundary;
        nodes_[idx].has_mass = true;
        return;
    }
    Vec2 c = box.center();
    Box2 quads[4] = {Box2(box.lo, c), Box2({c.x, box.lo.y}, {box.hi.x, c.y}),
                     Box2({box.lo.x, c.y}, {c.x, box.hi.y}), Box2(c, box.hi)};
    const std::int32_t first = (std::int32_t)nodes_.size();
    for (int i = 0; i < 4; ++i)
        nodes_.push_back(
            CellNode{quads[i], (std::int16_t)(depth + 1), CellTag::Internal, false, false, -1});
    nodes_[idx].child0 = first;
    for (int i = 0; i < 4; ++i) expand(region, first + i);
    bool pure = true, mass = false;
    for (int i = 0; i < 4; ++i) {
        pure = pure && nodes_[first + i].pure_interior;
        mass = mass || nodes_[first + i].has_mass;
    }
    nodes_[idx].pure_interior = pure;
    nodes_[idx].has_mass = mass;
}

std::size_t AdaptiveCellTree::leaf_count(CellTag t) const {
    std::size_t n = 0;
    for (const auto& nd : nodes_)
        if (nd.tag == t) ++n;
    return n;
}

double AdaptiveCellTree::leaf_area(CellTag t) const {
    double a = 0.0;
    for (const auto& nd : nodes_)
        if (nd.tag == t) a += nd.box.area();
    return a;
}

std::vector<Box2> AdaptiveCellTree::leaf_boxes(CellTag t) const {
    std::vector<Box2> out;
    for (const auto& nd : nodes_)
        if (nd.tag == t) out.push_back(nd.box);
    return out;
}

double AdaptiveCellTree::max_boundary_leaf_size() const {
    double m = 0.0;
    for (const auto& nd : nodes_)
        if (nd.tag == CellTag::Boundary) m = std::max(m, std::max(nd.box.width(), nd.box.height()));
    return m;
}

// branch-and-bound over the quadtree; subtrees without Boundary leaves are
// skipped via a per-node flag computed on demand
static bool subtree_has_boundary(const std::vector<CellNode>& nodes, std::int32_t i) {
    const CellNode& nd = nodes[i];
    if (nd.child0 < 0) return nd.tag == CellTag::Boundary;
    for (int k = 0; k < 4; ++k)
        if (subtree_has_boundary(nodes, nd.child0 + k)) return true;
    return false;
}

double AdaptiveCellTree::boundary_min_dist(const Box2& q) const {
    double best = INF;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        std::int32_t i = stack.back();
        stack.pop_back();
        const CellNode& nd = nodes_[i];
        double lb = box_min_dist(q, nd.box);
        if (lb >= best) continue;
        if (nd.child0 < 0) {
            if (nd.tag == CellTag::Boundary) best = std::min(best, lb);
            continue;
        }
        for (int k = 0; k < 4; ++k) stack.push_back(nd.child0 + k);
    }
    return best;
}

double AdaptiveCellTree::boundary_minmax_dist(const Box2& q) const {
    double best = INF;
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
        std::int32_t i = stack.back();
        stack.pop_back();
        const CellNode& nd = nodes_[i];
        if (box_min_dist(q, nd.box) >= best) continue;
        if (nd.child0 < 0) {
            if (nd.tag == CellTag::Boundary) best = std::min(best, box_max_dist(q, nd.box));
            continue;
        }
        for (int k = 0; k < 4; ++k) stack.push_back(nd.child0 + k);
    }
    return best;
}

Estimate tubular_volume(const AdaptiveCellTree& tree, double rho, const Window& window) {
    if (!(rho > 0.0)) throw std::invalid_argument("tubular_volume: rho must be > 0");
    double maxleaf = tree.max_boundary_leaf_size();
    if (maxleaf == 0.0) return Estimate::exact(0.0);

    Box2 reach = tree.root().box;
    reach.lo.x -= rho;
    reach.lo.y -= rho;
    reach.hi.x += rho;
    reach.hi.y += rho;
    Box2 domain = reach;
    if (window.bounded()) {
        Box2 wb = window.bound_box();
        domain = Box2({std::max(reach.lo.x, wb.lo.x), std::max(reach.lo.y, wb.lo.y)},
                      {std::min(reach.hi.x, wb.hi.x), std::min(reach.hi.y, wb.hi.y)});
        if (!(domain.lo.x < domain.hi.x && domain.lo.y < domain.hi.y)) return Estimate::exact(0.0);
    } else if (!std::isfinite(domain.area())) {
        throw std::invalid_argument("tubular_volume: unbounded window needs bounded tree");
    }

    double h = std::min(maxleaf, rho / 2);
    double cap = std::sqrt(domain.area() / 4.0e6);
    h = std::max(h, cap);
    int nx = std::max(1, (int)std::ceil(domain.width() / h));
    int ny = std::max(1, (int)std::ceil(domain.height() / h));
    double hx = domain.width() / nx, hy = domain.height() / ny;

    double inner = 0.0, outer = 0.0;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            Box2 cell({domain.lo.x + i * hx, domain.lo.y + j * hy},
                      {domain.lo.x + (i + 1) * hx, domain.lo.y + (j + 1) * hy});
            int w = window.bounded() ? window.classify_box(cell) : 1;
            if (w == 0) continue;
            double dmin = tree.boundary_min_dist(cell);
            if (dmin > rho) continue;
            double a = cell.area();
            outer += a;
            if (w == 1 && tree.boundary_minmax_dist(cell) <= rho) inner += a;
        }
    }
    double value = 0.5 * (inner + outer);
    double err = 0.5 * (outer - inner);
    bool rigorous = rho >= 2.0 * maxleaf;
    return Estimate(value, err, rigorous);
}

// ---------------------------------------------------------------------------
// treecode

namespace {

struct TreecodeCtx {
    const std::vector<CellNode>* na;
    const std::vector<CellNode>* nb;
    double s;
    double alpha;
    int order;
    double theta;
    double rel_tol;
    int depth_budget;
};

Estimate touching_pair_refined(const Box2& A, const Box2& B, double s, int order, double tol,
                               int depth_left) {
    double d = box_min_dist(A, B);
    if (d > 0.0) {
        Estimate e = box_pair_interaction_gl(A, B, s, order);
        if (e.error <= tol || depth_left <= 0) return e;
    }
    if (depth_left <= 0) {
        double up = box_pair_upper_bound(A, B, s);
        double lo = A.area() * B.area() * std::pow(box_max_dist(A, B), -(2.0 + s));
        return Estimate(0.5 * (lo + up), 0.5 * (up - lo), false); // unresolved singular pair
    }
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
    if (big == &A)
        return touching_pair_refined(b1, B, s, order, tol / 2, depth_left - 1) +
               touching_pair_refined(b2, B, s, order, tol / 2, depth_left - 1);
    return touching_pair_refined(A, b1, s, order, tol / 2, depth_left - 1) +
           touching_pair_refined(A, b2, s, order, tol / 2, depth_left - 1);
}

Estimate bracket_with_boundary(const Box2& A, const Box2& B, double s) {
    double d = box_min_dist(A, B);
    double up;
    if (d > 0.0) {
        up = A.area() * B.area() * std::pow(d, -(2.0 + s));
    } else {
        up = box_pair_upper_bound(A, B, s);
    }
    return Estimate(up / 2, up / 2, true); // sound inclusion bracket
}

Estimate treecode_pair(const TreecodeCtx& c, std::int32_t ia, std::int32_t ib) {
    const CellNode& a = (*c.na)[ia];
    const CellNode& b = (*c.nb)[ib];
    if (!a.has_mass || !b.has_mass) return Estimate::exact(0.0);

    double dist = box_min_dist(a.box, b.box);
    bool admissible = dist >= c.theta * (a.box.diam() + b.box.diam());
    if (admissible && a.pure_interior && b.pure_interior)
        return box_pair_interaction_gl(a.box, b.box, c.s, c.order);

    bool a_leaf = a.child0 < 0, b_leaf = b.child0 < 0;
    if (a_leaf && b_leaf) {
        if (a.tag == CellTag::Interior && b.tag == CellTag::Interior) {
            if (dist > 0.0) {
                Estimate e0 = box_pair_interaction_gl(a.box, b.box, c.s, c.order);
                double tol = c.rel_tol * std::fabs(e0.value);
                if (e0.error <= tol) return e0;
                return touching_pair_refined(a.box, b.box, c.s, c.order, tol, c.depth_budget);
            }
            Box2 ov({std::max(a.box.lo.x, b.box.lo.x), std::max(a.box.lo.y, b.box.lo.y)},
                    {std::min(a.box.hi.x, b.box.hi.x), std::min(a.box.hi.y, b.box.hi.y)});
            if (ov.area() > 0.0)
                throw std::invalid_argument("treecode_interaction: interior regions overlap");
            double tol = c.rel_tol * box_pair_upper_bound(a.box, b.box, c.s);
            return touching_pair_refined(a.box, b.box, c.s, c.order, tol, c.depth_budget);
        }
        // a Boundary leaf on either side: geometric inclusion bracket
        if (box_min_dist(a.box, b.box) == 0.0) {
            Box2 ov({std::max(a.box.lo.x, b.box.lo.x), std::max(a.box.lo.y, b.box.lo.y)},
                    {std::min(a.box.hi.x, b.box.hi.x), std::min(a.box.hi.y, b.box.hi.y)});
            if (ov.area() > 0.0)
                throw std::invalid_argument(
                    "treecode_interaction: boundary cells overlap; trees must be separated");
        }
        return bracket_with_boundary(a.box, b.box, c.s);
    }
    // descend the node with the larger box (prefer internal nodes)
    bool split_a = !a_leaf && (b_leaf || a.box.diam() >= b.box.diam());
    Estimate sum = Estimate::exact(0.0);
    if (split_a) {
        for (int k = 0; k < 4; ++k) sum += treecode_pair(c, a.child0 + k, ib);
    } else {
        for (int k = 0; k < 4; ++k) sum += treecode_pair(c, ia, b.child0 + k);
    }
    return sum;
}

} // namespace

Estimate treecode_interaction(const AdaptiveCellTree& A, const AdaptiveCellTree& B,
                              const KernelParams& k, const QuadraturePolicy& pol) {
    validate_s(k.s);
    if (k.n != 2) throw std::invalid_argument("treecode_interaction: kernel dimension must be 2");
    TreecodeCtx ctx;
    ctx.na = &A.nodes();
    ctx.nb = &B.nodes();
    ctx.s = k.s;
    ctx.alpha = 2.0 + k.s;
    ctx.order = pol.gauss_order;
    ctx.theta = pol.separation_ratio;
    ctx.rel_tol = pol.rel_tol;
    ctx.depth_budget = 10;
    return treecode_pair(ctx, 0, 0);
}

} // namespace fracperim
