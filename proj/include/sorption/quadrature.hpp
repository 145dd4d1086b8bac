#pragma once

#include <functional>
#include <vector>

namespace sorption {

struct QuadNodes {
    std::vector<double> x;  // abscissae on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
const QuadNodes& gauss_legendre(int order);

struct QuadResult {
    double value = 0.0;
    bool converged = false;
    double rel_change = 0.0;  // |I2 - I1| / max(|I2|, tiny) at the last doubling
};

using Integrand = std::function<double(double)>;

// Single composite pass: `segments` equal panels of `order`-point GL.
double integrate_composite(const Integrand& f, double a, double b, int segments, int order);

// Composite GL with an automatic panel-doubling convergence check.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, int order = 64,
                              int initial_segments = 1, double rel_tol = 1e-6,
                              int max_doublings = 12);

// Composite GL on panels geometrically refined toward `b`; for integrands with
// steep growth at the upper end (truncated pole neighbourhoods).
QuadResult integrate_graded_upper(const Integrand& f, double a, double b, int levels = 24,
                                  int order = 32, double rel_tol = 1e-6);

}  // namespace sorption
