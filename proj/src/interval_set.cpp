#include "fracperim/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracperim {

static const double INF = std::numeric_limits<double>::infinity();

IntervalSet::IntervalSet(std::vector<Interval1D> parts) : parts_(std::move(parts)) { normalize(); }

IntervalSet IntervalSet::whole_line() { return IntervalSet({{-INF, INF}}); }

void IntervalSet::normalize() {
    for (auto& iv : parts_) {
        if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw std::invalid_argument("IntervalSet: nan endpoint");
    }
    parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                                [](const Interval1D& iv) { return !(iv.lo < iv.hi); }),
                 parts_.end());
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval1D& a, const Interval1D& b) { return a.lo < b.lo; });
    std::vector<Interval1D> merged;
    for (const auto& iv : parts_) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    parts_ = std::move(merged);
}

double IntervalSet::measure() const {
    double m = 0.0;
    for (const auto& iv : parts_) m += iv.length();
    return m;
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    std::vector<Interval1D> out;
    std::size_t i = 0, j = 0;
    while (i < parts_.size() && j < o.parts_.size()) {
        double lo = std::max(parts_[i].lo, o.parts_[j].lo);
        double hi = std::min(parts_[i].hi, o.parts_[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (parts_[i].hi < o.parts_[j].hi) ++i; else ++j;
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<Interval1D> out = parts_;
    out.insert(out.end(), o.parts_.begin(), o.parts_.end());
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
    std::vector<Interval1D> out;
    double cur = -INF;
    for (const auto& iv : parts_) {
        if (cur < iv.lo) out.push_back({cur, iv.lo});
        cur = iv.hi;
    }
    if (cur < INF) out.push_back({cur, INF});
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& o) const { return intersect(o.complement()); }

IntervalSet IntervalSet::translated(double t) const {
    std::vector<Interval1D> out = parts_;
    for (auto& iv : out) {
        iv.lo += t;
        iv.hi += t;
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("IntervalSet::scaled: factor must be > 0");
    std::vector<Interval1D> out = parts_;
    for (auto& iv : out) {
        iv.lo *= c;
        iv.hi *= c;
    }
    return IntervalSet(std::move(out));
}

bool IntervalSet::contains_point(double x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](double v, const Interval1D& iv) { return v < iv.lo; });
    if (it == parts_.begin()) return false;
    --it;
    return x > it->lo && x < it->hi;
}

} // namespace fracperim
