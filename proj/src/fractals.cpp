#include "fracperim/fractals.hpp"

#include <cmath>
#include <stdexcept>

#include "fracperim/kernel.hpp"

namespace fracperim {

namespace {

const double kTriTop = 1.0 / std::sqrt(3.0); // circumradius of the unit triangle

// unit equilateral triangle, barycenter at 0, top vertex (0, 1/sqrt(3))
std::vector<Vec2> base_triangle_verts() {
    double t = kTriTop;
    return {{0.0, t}, {-0.5, -t / 2}, {0.5, -t / 2}};
}

Vec2 rot60cw(const Vec2& v) {
    // rotation by -pi/3
    const double c = 0.5, s = -std::sqrt(3.0) / 2.0;
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 rot60ccw(const Vec2& v) {
    // rotation by +pi/3
    const double c = 0.5, s = std::sqrt(3.0) / 2.0;
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// one Koch subdivision step; bumps to the right of each directed edge
// (outward for a counterclockwise outline, upward for the left-to-right curve
// when bump_left is set)
std::vector<Vec2> koch_step(const std::vector<Vec2>& pts, bool closed, bool bump_left) {
    std::vector<Vec2> out;
    std::size_t nseg = closed ? pts.size() : pts.size() - 1;
    out.reserve(pts.size() * 4);
    for (std::size_t e = 0; e < nseg; ++e) {
        Vec2 u = pts[e], v = pts[(e + 1) % pts.size()];
        Vec2 d = (v - u) * (1.0 / 3.0);
        Vec2 m1 = u + d, m2 = u + d * 2.0;
        Vec2 apex = m1 + (bump_left ? rot60ccw(d) : rot60cw(d));
        out.push_back(u);
        out.push_back(m1);
        out.push_back(apex);
        out.push_back(m2);
    }
    if (!closed) out.push_back(pts.back());
    return out;
}

Disk map_disk(const SimilarityMap& m, const Disk& d) { return {m(d.c), m.scale * d.r}; }

} // namespace

PolygonRegion koch_snowflake(int level) {
    if (level < 0 || level > 9) throw std::invalid_argument("koch_snowflake: level out of range");
    std::vector<Vec2> pts = base_triangle_verts();
    for (int k = 0; k < level; ++k) pts = koch_step(pts, true, false);
    // vertices were generated consistently; skip the quadratic simplicity scan
    return PolygonRegion(std::move(pts), level <= 3);
}

std::vector<Vec2> koch_curve(int level) {
    if (level < 0 || level > 10) throw std::invalid_argument("koch_curve: level out of range");
    std::vector<Vec2> pts{{0.0, 0.0}, {1.0, 0.0}};
    for (int k = 0; k < level; ++k) pts = koch_step(pts, false, true);
    return pts;
}

std::vector<KochPiece> koch_pieces(int level) {
    if (level < 1 || level > 9) throw std::invalid_argument("koch_pieces: level must be >= 1");
    std::vector<Vec2> prev = base_triangle_verts();
    for (int k = 0; k < level - 1; ++k) prev = koch_step(prev, true, false);

    double scale = std::pow(3.0, -level);
    Vec2 P{0.0, kTriTop};
    Disk B{{0.0, kTriTop + 1e-3}, 1e-3};
    double argP = std::atan2(P.y, P.x);

    std::vector<KochPiece> out;
    out.reserve(prev.size());
    for (std::size_t e = 0; e < prev.size(); ++e) {
        Vec2 u = prev[e], v = prev[(e + 1) % prev.size()];
        Vec2 d = (v - u) * (1.0 / 3.0);
        Vec2 m1 = u + d, m2 = u + d * 2.0;
        Vec2 apex = m1 + rot60cw(d);
        PolygonRegion tri({m1, apex, m2}, true);
        // the map sends the block's barycenter (origin) to the piece's
        // barycenter and the top vertex to the apex
        Vec2 c = (m1 + apex + m2) * (1.0 / 3.0);
        double ang = std::atan2(apex.y - c.y, apex.x - c.x) - argP;
        SimilarityMap F(scale, ang, c);
        out.push_back({std::move(tri), map_disk(F, B), F});
    }
    return out;
}

BallSet exploded_fractal(int b, double sigma, int n, int K) {
    if (b < 2) throw std::invalid_argument("exploded_fractal: b must be >= 2");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("exploded_fractal: sigma must be in (0,1)");
    if (n < 2 || n > 3) throw std::invalid_argument("exploded_fractal: dim must be 2 or 3");
    if (K < 1 || K > 24) throw std::invalid_argument("exploded_fractal: levels out of range");
    double lambda = std::pow((double)b, 1.0 / (n - sigma));
    std::vector<BallDesc> balls;
    long count = 1;
    for (int k = 1; k <= K; ++k, count *= b) {
        if (count > 200000) throw std::invalid_argument("exploded_fractal: too many balls");
        double r = 0.25 * std::pow(lambda, -k);
        for (long i = 1; i <= count; ++i) {
            std::vector<double> c((std::size_t)n, 0.0);
            c[0] = k;
            c[(std::size_t)n - 1] = (double)i;
            balls.push_back({std::move(c), r});
        }
    }
    return BallSet(n, std::move(balls));
}

// ---------------------------------------------------------------------------
// RecursiveFamily

RecursiveFamily RecursiveFamily::koch(int max_level) {
    RecursiveFamily f;
    f.kind_ = Kind::Koch;
    f.name_ = "koch";
    f.a_ = 3;
    f.b_ = 4;
    f.lambda_ = 3.0;
    f.max_level_ = max_level;
    f.block_poly_ = PolygonRegion(base_triangle_verts());
    f.witness_disk_ = Disk{{0.0, kTriTop + 1e-3}, 1e-3};
    return f;
}

namespace {

// Dendrite building block: the medial triangle of the unit block plus three
// spikes reaching the block's vertices. Each spike has its base on the middle
// half of a medial edge, so two corner slivers are removed per vertex; the
// resulting outline is a six-pointed star (tips at the three vertices and the
// three edge midpoints), area 5*sqrt(3)/32.
PolygonRegion dendrite_star() {
    auto V = base_triangle_verts(); // V[0] top, V[1] left, V[2] right (ccw)
    Vec2 M01 = (V[0] + V[1]) * 0.5;
    Vec2 M12 = (V[1] + V[2]) * 0.5;
    Vec2 M20 = (V[2] + V[0]) * 0.5;
    auto lerp = [](Vec2 p, Vec2 q, double t) { return p + (q - p) * t; };
    // walking ccw: vertex tip, quarter point, midpoint tip, quarter point, ...
    std::vector<Vec2> loop{
        V[0], lerp(M01, M20, 0.25), M01, lerp(M12, M01, 0.75),
        V[1], lerp(M12, M01, 0.25), M12, lerp(M20, M12, 0.75),
        V[2], lerp(M20, M12, 0.25), M20, lerp(M01, M20, 0.75),
    };
    return PolygonRegion(std::move(loop));
}

// one of the six removed slivers: at the top vertex, against the M01 side
PolygonRegion dendrite_witness_triangle() {
    auto V = base_triangle_verts();
    Vec2 M01 = (V[0] + V[1]) * 0.5;
    Vec2 M20 = (V[2] + V[0]) * 0.5;
    Vec2 q = M01 + (M20 - M01) * 0.25;
    return PolygonRegion({V[0], M01, q});
}

} // namespace

RecursiveFamily RecursiveFamily::sierpinski_dendrite(int max_level) {
    RecursiveFamily f;
    f.kind_ = Kind::Dendrite;
    f.name_ = "sierpinski_dendrite";
    f.a_ = 1;
    f.b_ = 3;
    f.lambda_ = 2.0;
    f.max_level_ = max_level;
    f.block_poly_ = dendrite_star();
    f.witness_poly_ = dendrite_witness_triangle();
    return f;
}

RecursiveFamily RecursiveFamily::sponge(int max_level) {
    RecursiveFamily f;
    f.kind_ = Kind::Sponge;
    f.name_ = "sponge";
    f.a_ = 1;
    f.b_ = 3;
    f.lambda_ = 2.0;
    f.max_level_ = max_level;
    f.block_poly_ = PolygonRegion(base_triangle_verts());
    f.block_hole_ = Disk{{0.0, 0.0}, 0.125};
    f.witness_disk_ = f.block_hole_;
    return f;
}

RecursiveFamily RecursiveFamily::exploded(int b, double sigma, int max_level) {
    if (b < 2) throw std::invalid_argument("exploded: b must be >= 2");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("exploded: sigma in (0,1)");
    RecursiveFamily f;
    f.kind_ = Kind::Exploded;
    f.name_ = "exploded";
    f.a_ = 1;
    f.b_ = b;
    f.lambda_ = std::pow((double)b, 1.0 / (2.0 - sigma));
    f.max_level_ = max_level;
    f.block_disk_ = Disk{{0.0, 0.0}, 0.25};
    // a ball of the same size touching the block from above; its images touch
    // their own piece only and keep clear of every other piece
    f.witness_disk_ = Disk{{0.0, 0.5}, 0.25};
    return f;
}

bool RecursiveFamily::dimension_valid() const {
    double r = std::log((double)b_) / std::log(lambda_);
    return r > 1.0 && r < 2.0;
}

double RecursiveFamily::threshold_s() const {
    return 2.0 - std::log((double)b_) / std::log(lambda_);
}

long RecursiveFamily::piece_count(int level) const {
    if (level < 1 || level > max_level_)
        throw std::invalid_argument("piece_count: level out of range");
    long c = a_;
    for (int k = 1; k < level; ++k) {
        c *= b_;
        if (c > 100'000'000L) throw std::invalid_argument("piece_count: overflow");
    }
    return c;
}

void RecursiveFamily::ensure_maps(int level) const {
    if ((int)level_maps_.size() >= level) return;
    level_maps_.reserve((std::size_t)level);
    while ((int)level_maps_.size() < level) {
        int k = (int)level_maps_.size() + 1;
        std::vector<SimilarityMap> maps;
        switch (kind_) {
            case Kind::Koch: {
                for (const auto& p : koch_pieces(k)) maps.push_back(p.map);
                break;
            }
            case Kind::Dendrite:
            case Kind::Sponge: {
                // pieces sit at dyadic combinations of the block vertices,
                // rotated by pi: the level-k removed triangle indexed by the
                // base-3 digits (j_1 .. j_{k-1}) has center sum_m V_{j_m}/2^m
                auto V = base_triangle_verts();
                long cnt = piece_count(k);
                maps.reserve((std::size_t)cnt);
                for (long i = 0; i < cnt; ++i) {
                    Vec2 shift{0.0, 0.0};
                    long d = i;
                    for (int m = k - 1; m >= 1; --m) {
                        shift = shift + V[(std::size_t)(d % 3)] * std::pow(2.0, -m);
                        d /= 3;
                    }
                    maps.emplace_back(std::pow(2.0, -k), M_PI, shift);
                }
                break;
            }
            case Kind::Exploded: {
                long cnt = piece_count(k);
                maps.reserve((std::size_t)cnt);
                for (long i = 1; i <= cnt; ++i)
                    maps.emplace_back(std::pow(lambda_, -k), 0.0, Vec2{(double)k, (double)i});
                break;
            }
        }
        level_maps_.push_back(std::move(maps));
    }
}

const std::vector<SimilarityMap>& RecursiveFamily::maps(int level) const {
    if (level < 1 || level > max_level_) throw std::invalid_argument("maps: level out of range");
    ensure_maps(level);
    return level_maps_[(std::size_t)level - 1];
}

SlicePtr RecursiveFamily::block() const {
    if (kind_ == Kind::Exploded) return slice_disk(*block_disk_);
    SlicePtr p = slice_polygon(*block_poly_);
    if (block_hole_) p = slice_diff(p, slice_disk(*block_hole_));
    return p;
}

SlicePtr RecursiveFamily::witness0() const {
    if (witness_disk_) return slice_disk(*witness_disk_);
    if (witness_poly_) return slice_polygon(*witness_poly_);
    return nullptr;
}

SlicePtr RecursiveFamily::piece(int level, long i) const {
    const SimilarityMap& m = maps(level).at((std::size_t)i);
    if (kind_ == Kind::Exploded) return slice_disk(map_disk(m, *block_disk_));
    SlicePtr p = slice_polygon(block_poly_->transformed(m));
    if (block_hole_) p = slice_diff(p, slice_disk(map_disk(m, *block_hole_)));
    return p;
}

SlicePtr RecursiveFamily::witness(int level, long i) const {
    const SimilarityMap& m = maps(level).at((std::size_t)i);
    if (witness_disk_) return slice_disk(map_disk(m, *witness_disk_));
    if (witness_poly_) return slice_polygon(witness_poly_->transformed(m));
    return nullptr;
}

PolygonRegion RecursiveFamily::piece_polygon(int level, long i) const {
    if (kind_ == Kind::Exploded)
        throw std::invalid_argument("piece_polygon: exploded pieces are balls");
    return block_poly_->transformed(maps(level).at((std::size_t)i));
}

std::optional<Disk> RecursiveFamily::piece_hole(int level, long i) const {
    if (!block_hole_) return std::nullopt;
    return map_disk(maps(level).at((std::size_t)i), *block_hole_);
}

std::optional<Disk> RecursiveFamily::piece_disk(int level, long i) const {
    if (!block_disk_) return std::nullopt;
    return map_disk(maps(level).at((std::size_t)i), *block_disk_);
}

double RecursiveFamily::block_area() const {
    if (kind_ == Kind::Exploded) return M_PI * block_disk_->r * block_disk_->r;
    double a = block_poly_->area();
    if (block_hole_) a -= M_PI * block_hole_->r * block_hole_->r;
    return a;
}

void check_non_overlap(const RecursiveFamily& fam, int level, double rel_tol) {
    struct Item {
        SlicePtr s;
        double area;
        Box2 bb;
        bool is_witness;
        int k;
        long i;
    };
    std::vector<Item> items;
    for (int k = 1; k <= level; ++k) {
        long cnt = fam.piece_count(k);
        // deep levels: check a deterministic stride sample
        long stride = std::max(1L, cnt / 64);
        for (long i = 0; i < cnt; i += stride) {
            SlicePtr p = fam.piece(k, i);
            items.push_back({p, slice_overlap_area(p, p), p->bbox(), false, k, i});
            if (SlicePtr w = fam.witness(k, i))
                items.push_back({w, slice_overlap_area(w, w), w->bbox(), true, k, i});
        }
    }
    for (std::size_t u = 0; u < items.size(); ++u) {
        for (std::size_t v = u + 1; v < items.size(); ++v) {
            if (items[u].is_witness && items[v].is_witness) continue; // may overlap freely
            if (!items[u].bb.intersects(items[v].bb)) continue;
            double ov = slice_overlap_area(items[u].s, items[v].s);
            double tol = rel_tol * std::min(items[u].area, items[v].area);
            if (ov > tol)
                throw std::runtime_error(
                    "check_non_overlap: pieces (" + std::to_string(items[u].k) + "," +
                    std::to_string(items[u].i) + ") and (" + std::to_string(items[v].k) + "," +
                    std::to_string(items[v].i) + ") overlap with area " + std::to_string(ov));
        }
    }
}

} // namespace fracperim
