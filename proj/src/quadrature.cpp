#include "fracperim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracperim {

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes by Newton iteration on P_n

static void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

static std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_gl_cache;
static std::mutex g_gl_mutex;

static const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int order) {
    if (order < 2 || order > 64) throw std::invalid_argument("gauss rule: order out of range");
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(order);
    if (it == g_gl_cache.end()) {
        std::vector<double> x, w;
        legendre_nodes(order, x, w);
        it = g_gl_cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first;
    }
    return it->second;
}

const std::vector<double>& gauss_nodes(int order) { return gl_rule(order).first; }
const std::vector<double>& gauss_weights(int order) { return gl_rule(order).second; }

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15

static const double kGK_X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
static const double kGK_WK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
static const double kGK_WG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

namespace {
struct Panel {
    double lo, hi;
    double value;      // K15 estimate of the integral
    double qerr;       // |K15 - G7|
    double point_err;  // K15 estimate of the integrated pointwise error bound
};
} // namespace

static Panel eval_panel(const std::function<std::pair<double, double>(double)>& f, double lo,
                        double hi) {
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double k = 0.0, g = 0.0, perr = 0.0;
    for (int i = 0; i < 8; ++i) {
        if (i == 7) {
            auto [v, e] = f(c);
            k += kGK_WK[7] * v;
            g += kGK_WG[3] * v;
            perr += kGK_WK[7] * e;
        } else {
            auto [v1, e1] = f(c - h * kGK_X[i]);
            auto [v2, e2] = f(c + h * kGK_X[i]);
            k += kGK_WK[i] * (v1 + v2);
            perr += kGK_WK[i] * (e1 + e2);
            if (i % 2 == 1) g += kGK_WG[i / 2] * (v1 + v2);
        }
    }
    return Panel{lo, hi, k * h, std::fabs(k - g) * h, perr * h};
}

Estimate integrate_adaptive(const std::function<std::pair<double, double>(double)>& f,
                            std::vector<double> breakpoints, const AdaptiveOptions& opt) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    if (breakpoints.size() < 2) return Estimate::exact(0.0);

    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i] < breakpoints[i + 1])
            panels.push_back(eval_panel(f, breakpoints[i], breakpoints[i + 1]));
    }

    auto totals = [&]() {
        double v = 0.0, qe = 0.0, pe = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            qe += p.qerr;
            pe += p.point_err;
        }
        return std::array<double, 3>{v, qe, pe};
    };

    while ((int)panels.size() < opt.max_panels) {
        auto [v, qe, pe] = totals();
        double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(v));
        if (opt.safety * qe <= tol) break;
        // split the worst panel; deterministic tie-break on position
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].qerr > panels[worst].qerr ||
                (panels[i].qerr == panels[worst].qerr && panels[i].lo < panels[worst].lo))
                worst = i;
        }
        Panel p = panels[worst];
        double mid = 0.5 * (p.lo + p.hi);
        if (!(p.lo < mid && mid < p.hi)) break; // interval exhausted
        panels[worst] = eval_panel(f, p.lo, mid);
        panels.push_back(eval_panel(f, mid, p.hi));
    }

    auto [v, qe, pe] = totals();
    double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(v));
    bool converged = opt.safety * qe <= tol || qe == 0.0;
    return Estimate(v, opt.safety * qe + pe, converged);
}

// ---------------------------------------------------------------------------
// separated box pair, tensor Gauss-Legendre with analytic remainder

// sup over the pair of |d^m/dt^m |x-y|^(-alpha)| along one coordinate is at
// most m! * ((m+alpha)^(m+alpha) / (m^m alpha^alpha)) * dist^(-alpha-m)
// (Cauchy estimate on the disk of radius dist reaching the branch points).
static double kernel_deriv_bound_log(int m, double alpha, double dist) {
    return std::lgamma(m + 1.0) + (m + alpha) * std::log(m + alpha) - m * std::log((double)m) -
           alpha * std::log(alpha) - (alpha + m) * std::log(dist);
}

// one-dimensional Gauss-Legendre remainder factor h^(2p+1) (p!)^4 / ((2p+1)((2p)!)^3)
static double gl_remainder_log(int p, double h) {
    return (2.0 * p + 1.0) * std::log(h) + 4.0 * std::lgamma(p + 1.0) - std::log(2.0 * p + 1.0) -
           3.0 * std::lgamma(2.0 * p + 1.0);
}

Estimate box_pair_interaction_gl(const Box2& A, const Box2& B, double s, int order) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("box_pair_interaction_gl: s in (0,1)");
    double dist = box_min_dist(A, B);
    if (!(dist > 0.0))
        throw std::invalid_argument("box_pair_interaction_gl: boxes must be separated");
    const auto& xs = gauss_nodes(order);
    const auto& ws = gauss_weights(order);
    double alpha = 2.0 + s;

    auto map_nodes = [&](double lo, double hi, std::vector<double>& pts, std::vector<double>& wts) {
        double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        pts.resize(xs.size());
        wts.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            pts[i] = c + h * xs[i];
            wts[i] = h * ws[i];
        }
    };
    std::vector<double> ax, aw, ay, ayw, bx, bw, by, byw;
    map_nodes(A.lo.x, A.hi.x, ax, aw);
    map_nodes(A.lo.y, A.hi.y, ay, ayw);
    map_nodes(B.lo.x, B.hi.x, bx, bw);
    map_nodes(B.lo.y, B.hi.y, by, byw);

    double sum = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i)
        for (std::size_t j = 0; j < ay.size(); ++j) {
            double wa = aw[i] * ayw[j];
            for (std::size_t k = 0; k < bx.size(); ++k)
                for (std::size_t l = 0; l < by.size(); ++l) {
                    double dx = ax[i] - bx[k], dy = ay[j] - by[l];
                    double r2 = dx * dx + dy * dy;
                    sum += wa * bw[k] * byw[l] * std::pow(r2, -alpha / 2);
                }
        }

    double vol4 = A.area() * B.area();
    double hs[4] = {A.width(), A.height(), B.width(), B.height()};
    double err = 0.0;
    double dlog = kernel_deriv_bound_log(2 * order, alpha, dist);
    for (double h : hs) {
        if (h <= 0.0) continue;
        err += std::exp(gl_remainder_log(order, h) + dlog) * (vol4 / h);
    }
    return Estimate(sum, err, true);
}

double box_pair_upper_bound(const Box2& A, const Box2& B, double s) {
    // (2 pi / s) * \int_A dist(x,B)^(-s) dx, bounded through a separating slab
    // or, for corner contact, dist >= (dx+dy)/2.
    double gx = std::max(B.lo.x - A.hi.x, A.lo.x - B.hi.x);
    double gy = std::max(B.lo.y - A.hi.y, A.lo.y - B.hi.y);
    if (gx < 0.0 && gy < 0.0)
        throw std::invalid_argument("box_pair_upper_bound: boxes must have disjoint interiors");
    double c = 2.0 * M_PI / s;
    auto slab = [&](double gap, double depth, double lateral) {
        // \int_gap^{gap+depth} u^(-s) du * lateral
        return c * lateral * (std::pow(gap + depth, 1.0 - s) - std::pow(gap, 1.0 - s)) / (1.0 - s);
    };
    double best = std::numeric_limits<double>::infinity();
    if (gx >= 0.0) best = std::min(best, slab(gx, A.width(), A.height()));
    if (gy >= 0.0) best = std::min(best, slab(gy, A.height(), A.width()));
    if (gx >= 0.0 && gy >= 0.0 && gx + gy == 0.0) {
        // corner contact: dist(x,B) >= ((x-gap)_x + (x-gap)_y)/2
        double hx = A.width(), hy = A.height();
        double i2 = (std::pow(hx + hy, 2.0 - s) - std::pow(hx, 2.0 - s) - std::pow(hy, 2.0 - s)) /
                    ((1.0 - s) * (2.0 - s));
        best = std::min(best, c * std::pow(2.0, s) * i2);
    }
    return best;
}

} // namespace fracperim
