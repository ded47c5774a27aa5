#pragma once

#include <limits>
#include <vector>

namespace fracperim {

// Open interval (lo, hi); lo = -inf or hi = +inf encode rays.
struct Interval1D {
    double lo, hi;
    double length() const { return hi - lo; }
    bool unbounded() const {
        return lo == -std::numeric_limits<double>::infinity() ||
               hi == std::numeric_limits<double>::infinity();
    }
};

// Sorted list of disjoint open intervals with positive length.
class IntervalSet {
  public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval1D> parts); // sorts and merges

    static IntervalSet whole_line();

    const std::vector<Interval1D>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }
    double measure() const; // +inf if any ray

    IntervalSet intersect(const IntervalSet& o) const;
    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet subtract(const IntervalSet& o) const;
    IntervalSet complement() const; // within the whole line

    IntervalSet translated(double t) const;
    IntervalSet scaled(double c) const; // c > 0

    bool contains_point(double x) const;

  private:
    std::vector<Interval1D> parts_;
    void normalize();
};

} // namespace fracperim
