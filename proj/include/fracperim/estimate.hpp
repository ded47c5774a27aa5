#pragma once

#include <cmath>
#include <stdexcept>

namespace fracperim {

// Numeric result with an error bound. When `rigorous` is true the true value
// lies in [value - error, value + error] under the estimator's stated error
// model (closed forms and geometric tail bounds, analytic Gauss remainders,
// set-inclusion brackets, or converged a-posteriori quadrature estimates).
// rigorous = false marks results that hit a resolution or depth limit before
// meeting their target.
struct Estimate {
    double value = 0.0;
    double error = 0.0;
    bool rigorous = true;

    Estimate() = default;
    Estimate(double v, double e, bool r = true) : value(v), error(e), rigorous(r) {
        if (e < 0.0 || std::isnan(e)) throw std::invalid_argument("Estimate: error must be >= 0");
    }

    static Estimate exact(double v) { return Estimate(v, 0.0, true); }

    Estimate operator+(const Estimate& o) const {
        return Estimate(value + o.value, error + o.error, rigorous && o.rigorous);
    }
    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        rigorous = rigorous && o.rigorous;
        return *this;
    }
    Estimate scaled(double c) const { return Estimate(c * value, std::fabs(c) * error, rigorous); }

    double lower() const { return value - error; }
    double upper() const { return value + error; }
};

} // namespace fracperim
