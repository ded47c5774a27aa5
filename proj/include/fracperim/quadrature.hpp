#pragma once

#include <functional>
#include <vector>

#include "fracperim/estimate.hpp"
#include "fracperim/vec.hpp"

namespace fracperim {

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::vector<double>& gauss_nodes(int order);
const std::vector<double>& gauss_weights(int order);

struct AdaptiveOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-8;
    int max_panels = 2000;
    double safety = 4.0; // multiplies the Gauss/Kronrod difference
};

// Adaptive Gauss-Kronrod (G7,K15) over the panels delimited by `breakpoints`
// (sorted, at least two entries). The integrand returns (value, error_bound);
// pointwise error bounds are integrated and added to the quadrature error.
// rigorous = false when the panel budget ran out before the tolerance was met.
Estimate integrate_adaptive(const std::function<std::pair<double, double>(double)>& f,
                            std::vector<double> breakpoints, const AdaptiveOptions& opt);

// \int_A \int_B |x-y|^(-(2+s)) for boxes with dist(A,B) > 0 by tensor
// Gauss-Legendre. The error field is an analytic derivative-based remainder
// (Cauchy estimate for the kernel's one-coordinate derivatives), valid
// whenever the boxes are disjoint.
Estimate box_pair_interaction_gl(const Box2& A, const Box2& B, double s, int order);

// Upper bound for touching or nearly touching disjoint boxes, from
// L(A,B) <= (2*pi/s) * \int_A dist(x, B)^(-s) dx.
double box_pair_upper_bound(const Box2& A, const Box2& B, double s);

} // namespace fracperim
