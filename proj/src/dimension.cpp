#include "fracperim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "fracperim/parallel.hpp"
#include "fracperim/perimeter.hpp"

namespace fracperim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long long cell_key(long ix, long iy) {
    return ((ix + (1LL << 30)) << 32) + (iy + (1LL << 30));
}

// Grid index of coordinate u (in cell units). Points sitting exactly on a
// gridline belong to the cell ahead in the travel direction `du`, or to the
// upper cell when not moving (matching the half-open cells of floor); this
// keeps a segment lying on a gridline inside a single row of cells.
long cell_index(double u, double du) {
    double r = std::nearbyint(u);
    if (std::fabs(u - r) <= 1e-9 * std::max(1.0, std::fabs(u))) {
        long m = static_cast<long>(r);
        return du < 0.0 ? m - 1 : m;
    }
    return static_cast<long>(std::floor(u));
}

void walk_segment(std::unordered_set<long long>& cells, Vec2 p, Vec2 q, double delta) {
    const double ux0 = p.x / delta, uy0 = p.y / delta;
    const double ux1 = q.x / delta, uy1 = q.y / delta;
    const double dx = ux1 - ux0, dy = uy1 - uy0;

    long ix = cell_index(ux0, dx);
    long iy = cell_index(uy0, dy);
    cells.insert(cell_key(ix, iy));
    if (dx == 0.0 && dy == 0.0) return;

    const long sx = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
    const long sy = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
    // parameter values of the next strict gridline crossings
    double tnx = kInf, tny = kInf, tdx = kInf, tdy = kInf;
    if (sx != 0) {
        const double bx = static_cast<double>(sx > 0 ? ix + 1 : ix);
        tnx = (bx - ux0) / dx;
        tdx = std::fabs(1.0 / dx);
    }
    if (sy != 0) {
        const double by = static_cast<double>(sy > 0 ? iy + 1 : iy);
        tny = (by - uy0) / dy;
        tdy = std::fabs(1.0 / dy);
    }

    const double tie = 1e-12;
    for (;;) {
        const double t = std::min(tnx, tny);
        if (!(t < 1.0 - tie)) break;
        if (tnx < tny - tie) {
            ix += sx;
            tnx += tdx;
        } else if (tny < tnx - tie) {
            iy += sy;
            tny += tdy;
        } else { // exact corner: step diagonally, the corner itself is not an entry
            ix += sx;
            iy += sy;
            tnx += tdx;
            tny += tdy;
        }
        cells.insert(cell_key(ix, iy));
    }
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t m = xs.size();
    if (m < 2 || ys.size() != m) throw std::invalid_argument("line fit needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("degenerate abscissae in line fit");
    LineFit f;
    f.slope = (m * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / m;
    double rss = 0;
    for (size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        rss += r * r;
    }
    f.rms = std::sqrt(rss / m);
    return f;
}

} // namespace

long box_count(const std::vector<Vec2>& pts, double delta, bool connected) {
    if (!(delta > 0.0)) throw std::invalid_argument("box_count: delta must be positive");
    if (pts.empty()) throw std::invalid_argument("box_count: empty point set");
    for (const Vec2& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("box_count: non-finite coordinate");

    std::unordered_set<long long> cells;
    cells.reserve(pts.size() * 2);
    if (connected && pts.size() > 1) {
        for (size_t i = 0; i + 1 < pts.size(); ++i) walk_segment(cells, pts[i], pts[i + 1], delta);
    } else {
        for (const Vec2& p : pts)
            cells.insert(cell_key(cell_index(p.x / delta, 0.0), cell_index(p.y / delta, 0.0)));
    }
    return static_cast<long>(cells.size());
}

namespace {

// Greedy maximal rho-separated subset, hashed on a rho-pitch grid. A maximal
// rho-separated subset of G is simultaneously a rho-cover of G and a packing
// with rho/2-balls, so its size sits inside the cover/packing sandwich.
class GreedyNet {
public:
    explicit GreedyNet(double rho) : rho_(rho) {}
    void feed(const Vec2& p) {
        const long cx = static_cast<long>(std::floor(p.x / rho_));
        const long cy = static_cast<long>(std::floor(p.y / rho_));
        for (long ax = cx - 1; ax <= cx + 1; ++ax)
            for (long ay = cy - 1; ay <= cy + 1; ++ay) {
                auto it = kept_.find(cell_key(ax, ay));
                if (it == kept_.end()) continue;
                for (const Vec2& q : it->second)
                    if ((p - q).norm2() < rho_ * rho_) return;
            }
        kept_[cell_key(cx, cy)].push_back(p);
        ++count_;
    }
    long count() const { return count_; }

    std::vector<Vec2> points() const {
        std::vector<Vec2> out;
        out.reserve(static_cast<size_t>(count_));
        for (const auto& [k, v] : kept_) out.insert(out.end(), v.begin(), v.end());
        return out;
    }

private:
    double rho_;
    std::unordered_map<long long, std::vector<Vec2>> kept_;
    long count_ = 0;
};

} // namespace

long cover_count(const std::vector<Vec2>& pts, double rho, bool connected) {
    if (!(rho > 0.0)) throw std::invalid_argument("cover_count: rho must be positive");
    if (pts.empty()) throw std::invalid_argument("cover_count: empty point set");

    GreedyNet net(rho);
    if (connected && pts.size() > 1) {
        // resample each edge well below rho so the net covers the whole
        // polyline, not just its vertices
        const double pitch = rho / 4.0;
        double total = 0.0;
        for (size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();
        if (total / pitch > 5e7)
            throw std::invalid_argument("cover_count: rho below resolvable scale for this polyline");
        for (size_t i = 0; i + 1 < pts.size(); ++i) {
            const Vec2 a = pts[i], b = pts[i + 1];
            const double len = (b - a).norm();
            const long nseg = std::max(1L, static_cast<long>(std::ceil(len / pitch)));
            for (long k = (i == 0 ? 0 : 1); k <= nseg; ++k) {
                const double t = static_cast<double>(k) / static_cast<double>(nseg);
                net.feed({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            }
        }
    } else {
        for (const Vec2& p : pts) net.feed(p);
    }
    return net.count();
}

long packing_count(const std::vector<Vec2>& pts, double delta, bool connected) {
    // a maximal 2*delta-separated subset gives pairwise disjoint delta-balls
    return cover_count(pts, 2.0 * delta, connected);
}

long arc_cover_count(const std::vector<Vec2>& pts, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("arc_cover_count: delta must be positive");
    if (pts.empty()) throw std::invalid_argument("arc_cover_count: empty polyline");
    if (pts.size() == 1) return 1;

    // dense resampling keeps per-arc extents faithful to the curve
    const double pitch = delta / 8.0;
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) total += (pts[i + 1] - pts[i]).norm();
    if (total / pitch > 5e7)
        throw std::invalid_argument("arc_cover_count: delta below resolvable scale");
    std::vector<Vec2> samples;
    samples.reserve(static_cast<size_t>(total / pitch) + pts.size() + 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec2 a = pts[i], b = pts[i + 1];
        const double len = (b - a).norm();
        const long nseg = std::max(1L, static_cast<long>(std::ceil(len / pitch)));
        for (long k = (i == 0 ? 0 : 1); k <= nseg; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(nseg);
            samples.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }

    // greedy farthest reach: split into as few arcs as possible, each fitting
    // inside one freely placed axis-aligned square of side delta. The bounding
    // box only grows as an arc extends, so the greedy split is minimal over
    // contiguous splits.
    const double side = delta * (1.0 + 1e-12);
    const size_t n = samples.size();
    size_t i = 0;
    long count = 0;
    while (i + 1 < n) {
        double xmin = samples[i].x, xmax = xmin, ymin = samples[i].y, ymax = ymin;
        size_t j = i + 1;
        while (j < n) {
            const double nxmin = std::min(xmin, samples[j].x);
            const double nxmax = std::max(xmax, samples[j].x);
            const double nymin = std::min(ymin, samples[j].y);
            const double nymax = std::max(ymax, samples[j].y);
            if (nxmax - nxmin > side || nymax - nymin > side) break;
            xmin = nxmin;
            xmax = nxmax;
            ymin = nymin;
            ymax = nymax;
            ++j;
        }
        ++count;
        i = j - 1; // adjacent samples are delta/8 apart, so j > i + 1
    }
    return std::max(count, 1L);
}

BoxCountSeries box_count_series(const std::vector<Vec2>& pts, const std::vector<double>& deltas,
                                bool connected, CountMode mode) {
    BoxCountSeries out;
    for (size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw std::invalid_argument("box_count_series: delta <= 0");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("box_count_series: deltas must decrease");
    }
    out.deltas = deltas;
    out.counts.resize(deltas.size());
    parallel_for(static_cast<long>(deltas.size()), [&](long i) {
        const double d = deltas[static_cast<size_t>(i)];
        long c;
        if (mode == CountMode::GridCells)
            c = box_count(pts, d, connected);
        else if (connected && pts.size() > 1)
            c = arc_cover_count(pts, d);
        else
            c = cover_count(pts, d, false);
        out.counts[static_cast<size_t>(i)] = c;
    });
    return out;
}

BoxFit minkowski_dimension_boxes(const BoxCountSeries& series) {
    const size_t m = series.deltas.size();
    if (m < 2 || series.counts.size() != m)
        throw std::invalid_argument("box fit: need >= 2 scales with matching counts");
    bool constant = true;
    for (size_t i = 0; i < m; ++i) {
        if (series.counts[i] <= 0) throw std::invalid_argument("box fit: nonpositive count");
        if (series.counts[i] != series.counts[0]) constant = false;
    }
    if (constant) throw std::invalid_argument("box fit: constant counts, slope undetermined");

    std::vector<double> xs(m), ys(m);
    for (size_t i = 0; i < m; ++i) {
        xs[i] = -std::log(series.deltas[i]);
        ys[i] = std::log(static_cast<double>(series.counts[i]));
    }
    const LineFit f = fit_line(xs, ys);
    BoxFit out;
    out.dim = f.slope;
    out.intercept = f.intercept;
    out.residual = f.rms;
    out.local_slopes.reserve(m - 1);
    for (size_t i = 0; i + 1 < m; ++i)
        out.local_slopes.push_back((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]));
    out.narrow_range = m < 4 || series.deltas.front() / series.deltas.back() < 100.0;
    return out;
}

std::vector<Estimate> minkowski_content(const AdaptiveCellTree& tree, const Window& window,
                                        double r, const std::vector<double>& rho_list) {
    std::vector<Estimate> out(rho_list.size());
    parallel_for(static_cast<long>(rho_list.size()), [&](long i) {
        const double rho = rho_list[static_cast<size_t>(i)];
        if (!(rho > 0.0)) throw std::invalid_argument("minkowski_content: rho must be positive");
        const Estimate vol = tubular_volume(tree, rho, window);
        out[static_cast<size_t>(i)] = vol.scaled(std::pow(rho, r - 2.0));
    });
    return out;
}

namespace {

// Sum over the pieces of one level of the interaction with either the
// matching witness copy or the piece's own complement. Levels with few pieces
// are summed exactly; deeper levels use one representative times the count
// (all copies are congruent), spot-checking two other copies against it.
double level_sum(const RecursiveFamily& fam, int level, double s, const QuadraturePolicy& pol,
                 bool vs_witness) {
    const long cnt = fam.piece_count(level);
    auto one = [&](long i) {
        SlicePtr A = fam.piece(level, i);
        SlicePtr B = vs_witness ? fam.witness(level, i) : slice_complement(fam.piece(level, i));
        return sliced_interaction(A, B, s, pol).value;
    };
    const long full_cap = 64;
    if (cnt <= full_cap) {
        double total = 0.0;
        for (long i = 0; i < cnt; ++i) total += one(i);
        return total;
    }
    const double rep = one(0);
    const double tol = std::max(1e-4, 200.0 * pol.rel_tol);
    for (long i : {cnt / 2, cnt - 1}) {
        const double v = one(i);
        if (std::fabs(v - rep) > tol * std::max(std::fabs(rep), 1e-300))
            throw std::runtime_error("level_sum: congruent piece deviates from representative");
    }
    return static_cast<double>(cnt) * rep;
}

// Root of the fitted rate curve. Rates decrease in s; fit an affine model on
// the 3 grid points nearest the sign change.
double rate_root(const std::vector<double>& s_grid, const std::vector<double>& rates,
                 const std::vector<double>& rate_errs, double* ci_out) {
    const size_t m = s_grid.size();
    size_t cross = m; // index i with rates[i] >= 0 > rates[i+1]
    for (size_t i = 0; i + 1 < m; ++i)
        if (rates[i] >= 0.0 && rates[i + 1] < 0.0) {
            cross = i;
            break;
        }
    bool extrapolated = false;
    double s_c;
    if (cross == m) {
        extrapolated = true;
        s_c = rates.front() < 0.0 ? s_grid.front() : s_grid.back();
    } else {
        const double r0 = rates[cross], r1 = rates[cross + 1];
        s_c = s_grid[cross] + r0 * (s_grid[cross + 1] - s_grid[cross]) / (r0 - r1);
    }

    size_t nearest = 0;
    for (size_t i = 1; i < m; ++i)
        if (std::fabs(s_grid[i] - s_c) < std::fabs(s_grid[nearest] - s_c)) nearest = i;
    size_t j0 = nearest == 0 ? 0 : nearest - 1;
    if (j0 + 3 > m) j0 = m - 3;

    std::vector<double> xs(s_grid.begin() + j0, s_grid.begin() + j0 + 3);
    std::vector<double> ys(rates.begin() + j0, rates.begin() + j0 + 3);
    const LineFit f = fit_line(xs, ys);
    if (!(std::fabs(f.slope) > 0.0)) throw std::runtime_error("rate_root: flat rate curve");
    double root = -f.intercept / f.slope;

    double err_sum = 0.0;
    for (size_t i = j0; i < j0 + 3; ++i) err_sum += rate_errs[i];
    double ci = (f.rms + err_sum / 3.0) / std::fabs(f.slope) + 1e-9;
    if (extrapolated) {
        const double hull = root < s_grid.front() ? s_grid.front() - root : root - s_grid.back();
        ci += std::max(hull, 0.0);
    }
    root = std::min(std::max(root, 1e-6), 1.0 - 1e-6);
    if (ci_out) *ci_out = ci;
    return root;
}

} // namespace

ThresholdFit dimF_threshold(const RecursiveFamily& fam, const std::vector<double>& s_grid_in,
                            int levels, const QuadraturePolicy& pol) {
    if (!fam.dimension_valid())
        throw std::domain_error("dimF_threshold: log b/log lambda outside (n-1, n)");
    if (levels < 3) throw std::invalid_argument("dimF_threshold: need at least 3 levels");
    if (levels > fam.max_level())
        throw std::invalid_argument("dimF_threshold: levels exceeds family max_level");
    if (!fam.witness0()) throw std::domain_error("dimF_threshold: family has no witness set");

    std::vector<double> s_grid = s_grid_in;
    std::sort(s_grid.begin(), s_grid.end());
    if (s_grid.size() < 3) throw std::invalid_argument("dimF_threshold: need >= 3 grid points");
    for (double s : s_grid)
        if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("dimF_threshold: s outside (0,1)");

    ThresholdFit out;
    out.s_grid = s_grid;
    out.level_rates.resize(s_grid.size());
    out.upper_rates.resize(s_grid.size());
    out.rate_errs.resize(s_grid.size());

    parallel_for(static_cast<long>(s_grid.size()), [&](long si) {
        const double s = s_grid[static_cast<size_t>(si)];
        std::vector<double> ks, log_lo, log_up;
        for (int k = 1; k <= levels; ++k) {
            const double cl = level_sum(fam, k, s, pol, true);
            const double cu = level_sum(fam, k, s, pol, false);
            if (!(cl > 0.0) || !(cu > 0.0) || !std::isfinite(cl) || !std::isfinite(cu))
                throw std::runtime_error("dimF_threshold: nonpositive level contribution");
            ks.push_back(static_cast<double>(k));
            log_lo.push_back(std::log(cl));
            log_up.push_back(std::log(cu));
        }
        const LineFit fl = fit_line(ks, log_lo);
        const LineFit fu = fit_line(ks, log_up);
        out.level_rates[static_cast<size_t>(si)] = fl.slope;
        out.upper_rates[static_cast<size_t>(si)] = fu.slope;
        out.rate_errs[static_cast<size_t>(si)] = fl.rms;
    });

    double ci_l = 0.0, ci_u = 0.0;
    out.s_star_lower = rate_root(s_grid, out.level_rates, out.rate_errs, &ci_l);
    out.s_star_upper = rate_root(s_grid, out.upper_rates, out.rate_errs, &ci_u);
    out.s_star = 0.5 * (out.s_star_lower + out.s_star_upper);
    out.ci = 0.5 * std::fabs(out.s_star_upper - out.s_star_lower) + std::max(ci_l, ci_u);
    out.dim_f = 2.0 - out.s_star;
    return out;
}

ThresholdFit dimF_finite_report(const PolygonRegion& E, const Window& omega,
                                const std::vector<double>& s_grid_in,
                                const QuadraturePolicy& pol) {
    std::vector<double> s_grid = s_grid_in;
    std::sort(s_grid.begin(), s_grid.end());
    if (s_grid.empty()) throw std::invalid_argument("dimF_finite_report: empty s grid");
    for (double s : s_grid)
        if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("dimF_finite_report: s outside (0,1)");

    ThresholdFit out;
    out.s_grid = s_grid;
    out.method = "finite_perimeter";
    out.finite_perimeter_branch = true;
    out.s_star = 1.0;
    out.s_star_lower = out.s_star_upper = 1.0;
    out.ci = 0.0;
    out.dim_f = 1.0;
    out.scaled_local.resize(s_grid.size());

    SlicePtr Eslice = slice_polygon(E);
    parallel_for(static_cast<long>(s_grid.size()), [&](long si) {
        const double s = s_grid[static_cast<size_t>(si)];
        const PerimeterBreakdown pb = frac_perimeter(Eslice, omega, s, pol);
        out.scaled_local[static_cast<size_t>(si)] = (1.0 - s) * pb.local.value;
    });
    return out;
}

namespace {

// area of the intersection of two rho-disks with centers d apart
double lens_area(double d, double rho) {
    if (d >= 2.0 * rho) return 0.0;
    if (d <= 0.0) return M_PI * rho * rho;
    return 2.0 * rho * rho * std::acos(d / (2.0 * rho)) -
           0.5 * d * std::sqrt(4.0 * rho * rho - d * d);
}

// Lower bound for |N̄_rho^Omega(∂E)| built from Boundary leaves. Every leaf
// holds a true boundary point, so the rho-ball around that point lies inside
// the tube; leaves whose rho-grown box stays inside the window contribute a
// full disk. Takes the better of a disjoint packing (centers 2rho apart) and
// a second-order inclusion-exclusion sum at separation rho, both padded by
// the leaf diagonal since the point's position inside its leaf is unknown.
double tube_lower_from_leaves(const std::vector<Box2>& leaves, const Window& omega,
                              double maxleaf, double rho) {
    const double pad = maxleaf * std::sqrt(2.0);
    std::vector<Vec2> centers;
    centers.reserve(leaves.size());
    for (const Box2& b : leaves) {
        const Box2 grown(b.lo - Vec2{rho, rho}, b.hi + Vec2{rho, rho});
        if (omega.classify_box(grown) == 1) centers.push_back(b.center());
    }
    if (centers.empty()) return 0.0;
    const double disk = M_PI * rho * rho;

    GreedyNet far_net(2.0 * rho + pad);
    for (const Vec2& c : centers) far_net.feed(c);
    double best = static_cast<double>(far_net.count()) * disk;

    GreedyNet near_net(rho + pad);
    for (const Vec2& c : centers) near_net.feed(c);
    const std::vector<Vec2> kept = near_net.points();

    const double reach = 2.0 * rho + pad;
    std::unordered_map<long long, std::vector<Vec2>> grid;
    auto key = [](long x, long y) { return x * 2000003LL + y; };
    auto cell = [&](const Vec2& p) {
        return std::pair<long, long>(static_cast<long>(std::floor(p.x / reach)),
                                     static_cast<long>(std::floor(p.y / reach)));
    };
    double overlap = 0.0;
    for (const Vec2& p : kept) {
        auto [cx, cy] = cell(p);
        for (long ax = cx - 1; ax <= cx + 1; ++ax)
            for (long ay = cy - 1; ay <= cy + 1; ++ay) {
                auto it = grid.find(key(ax, ay));
                if (it == grid.end()) continue;
                for (const Vec2& q : it->second) {
                    const double d = (p - q).norm();
                    if (d < reach) overlap += lens_area(std::max(0.0, d - pad), rho);
                }
            }
        grid[key(cx, cy)].push_back(p);
    }
    best = std::max(best, static_cast<double>(kept.size()) * disk - overlap);
    return std::max(best, 0.0);
}

} // namespace

std::vector<TubeIneqRow> dim_inequality_check(const PolygonRegion& E, const Window& omega,
                                              const std::vector<double>& s_grid,
                                              const std::vector<double>& rho_list,
                                              const QuadraturePolicy& pol, int tree_depth) {
    if (!omega.bounded())
        throw std::invalid_argument("dim_inequality_check: window must be bounded");
    if (rho_list.size() < 2) throw std::invalid_argument("dim_inequality_check: need >= 2 rho");
    for (size_t i = 0; i < rho_list.size(); ++i) {
        if (!(rho_list[i] > 0.0)) throw std::invalid_argument("dim_inequality_check: rho <= 0");
        if (i > 0 && !(rho_list[i] > rho_list[i - 1]))
            throw std::invalid_argument("dim_inequality_check: rho_list must increase");
    }
    for (double s : s_grid)
        if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("dim_inequality_check: s outside (0,1)");

    // quadtree over the polygon, root covering both the set and the window
    Box2 root = E.bbox();
    const double pad = 0.05 * std::max(root.width(), root.height());
    root.lo = root.lo - Vec2{pad, pad};
    root.hi = root.hi + Vec2{pad, pad};
    root = root.merged(omega.bound_box());
    AdaptiveCellTree tree(*make_polygon_region(E), root, tree_depth);

    // D bounds sup_{x in Omega} dist(x, boundary of E) from above
    const Vec2 v0 = E.vertices().front();
    const double D = box_max_dist(omega.bound_box(), Box2{v0, v0});
    const double area_w = omega.measure();

    std::vector<double> rhos;
    for (double rho : rho_list)
        if (rho < D) rhos.push_back(rho);
    if (rhos.empty()) rhos.push_back(0.5 * D);

    std::vector<Estimate> tube(rhos.size());
    parallel_for(static_cast<long>(rhos.size()), [&](long i) {
        tube[static_cast<size_t>(i)] = tubular_volume(tree, rhos[static_cast<size_t>(i)], omega);
    });

    // packing bounds: one per sampled rho (backing up weak scan brackets) and
    // a dyadic ladder below the sampled range, where the integrand peaks
    const std::vector<Box2> bleaves = tree.leaf_boxes(CellTag::Boundary);
    const double maxleaf = tree.max_boundary_leaf_size();
    std::vector<double> sub_r;
    for (double r = rhos.front() / 2.0; r >= 2.0 * maxleaf && sub_r.size() < 8; r /= 2.0)
        sub_r.push_back(r);
    std::vector<double> fills(rhos.size() + sub_r.size());
    parallel_for(static_cast<long>(fills.size()), [&](long i) {
        const size_t u = static_cast<size_t>(i);
        const double r = u < rhos.size() ? rhos[u] : sub_r[u - rhos.size()];
        fills[u] = tube_lower_from_leaves(bleaves, omega, maxleaf, r);
    });
    const std::vector<double> pack(fills.begin(), fills.begin() + rhos.size());
    const std::vector<double> sub_m(fills.begin() + rhos.size(), fills.end());

    SlicePtr Eslice = slice_polygon(E);
    std::vector<TubeIneqRow> rows(s_grid.size());
    parallel_for(static_cast<long>(s_grid.size()), [&](long si) {
        const double s = s_grid[static_cast<size_t>(si)];
        TubeIneqRow row;
        row.s = s;
        const PerimeterBreakdown pb = frac_perimeter(Eslice, omega, s, pol);
        row.lhs = pb.local.scaled(2.0);

        const double two_pi = 2.0 * M_PI; // n * omega_n at n = 2
        // rigorous lower bound: the tube volume is nondecreasing in rho, so a
        // left sum against the exact kernel integral underestimates
        double lower = 0.0;
        double sub_hi = rhos.front();
        for (size_t j = 0; j < sub_r.size(); ++j) {
            lower += sub_m[j] * (std::pow(sub_r[j], -s) - std::pow(sub_hi, -s)) / s;
            sub_hi = sub_r[j];
        }
        for (size_t i = 0; i + 1 < rhos.size(); ++i) {
            const double w = (std::pow(rhos[i], -s) - std::pow(rhos[i + 1], -s)) / s;
            lower += std::max({tube[i].lower(), pack[i], 0.0}) * w;
        }
        lower += std::max({tube.back().lower(), pack.back(), 0.0}) *
                 (std::pow(rhos.back(), -s) - std::pow(D, -s)) / s;
        lower += area_w * std::pow(D, -s) / s;
        row.rhs_lower = two_pi * lower;

        // reported value: trapezoid on the sampled integrand plus the tail
        double val = 0.0, err = 0.0;
        auto f_val = [&](size_t i) { return tube[i].value * std::pow(rhos[i], -1.0 - s); };
        auto f_err = [&](size_t i) { return tube[i].error * std::pow(rhos[i], -1.0 - s); };
        for (size_t i = 0; i + 1 < rhos.size(); ++i) {
            const double h = rhos[i + 1] - rhos[i];
            val += 0.5 * (f_val(i) + f_val(i + 1)) * h;
            err += 0.5 * (f_err(i) + f_err(i + 1)) * h;
        }
        const double fD = area_w * std::pow(D, -1.0 - s);
        val += 0.5 * (f_val(rhos.size() - 1) + fD) * (D - rhos.back());
        err += 0.5 * f_err(rhos.size() - 1) * (D - rhos.back());
        val += area_w * std::pow(D, -s) / s;
        row.rhs = Estimate(two_pi * val, two_pi * err, false);

        row.margin = row.rhs_lower - row.lhs.upper();
        row.holds = row.margin >= 0.0;
        rows[static_cast<size_t>(si)] = row;
    });
    return rows;
}

} // namespace fracperim
