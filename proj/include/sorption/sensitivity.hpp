#pragma once

#include <vector>

#include "sorption/linalg.hpp"
#include "sorption/models.hpp"
#include "sorption/quadrature.hpp"
#include "sorption/types.hpp"

namespace sorption {

struct SensitivityOptions {
    int param_order = 64;        // GL order over a parameter interval
    int activity_order = 128;    // GL order over the activity window
    double rel_tol = 1e-6;       // node-doubling convergence requirement
    double window_lo = 0.05;
    double window_hi = 0.935;    // screening window upper end (calibrated)
    double pole_margin = 1e-3;   // truncation distance below a tan pole
};

// nu_n(a): 1-D quadrature of theta_n^2 over the n-th prior interval, other
// parameters held at `nominal`. Throws SingularityError when the interval
// crosses a tan pole at this activity; QuadratureError on non-convergence.
QuadResult nu_local(ModelId m, const ParamBox& box, const ParamVector& nominal,
                    std::size_t n, double a, const SensitivityOptions& opts = {});

// gamma_n(a) = nu_n / sum_k nu_k. Throws DataError when all nu vanish.
std::vector<double> gamma_local(ModelId m, const ParamBox& box, const ParamVector& nominal,
                                double a, const SensitivityOptions& opts = {});

// Pointwise normalised squared sensitivities theta_n^2 / sum_k theta_k^2;
// finite wherever the model is evaluable, used for the curve reports.
std::vector<double> gamma_point(ModelId m, const ParamVector& nominal, double a);

struct GammaTotalResult {
    std::vector<double> gamma;   // normalised, sums to 1
    std::vector<double> nu;      // raw integrals of theta_n^2 over the window
    double window_hi = 0.0;      // after pole truncation
    bool converged = true;
};

// Global index: integral of theta_n^2 at the nominal point over the screening
// window (pole-truncated, graded quadrature), normalised across parameters.
GammaTotalResult gamma_total(ModelId m, const ParamBox& box, const ParamVector& nominal,
                             const SensitivityOptions& opts = {});

struct FisherResult {
    Matrix F;
    double condition = 0.0;
    bool converged = true;
    double window_lo = 0.0, window_hi = 0.0;
};

// F_{n1 n2} = integral over the activity window of theta_n1 * theta_n2 at
// fixed p (composite GL with doubling check). The default window is the
// measured span capped below any tan pole.
FisherResult fisher_matrix(ModelId m, const ParamVector& p, double window_lo = 0.05,
                           double window_hi = 0.916,
                           const SensitivityOptions& opts = {});

// Discrete counterpart: Gram matrix of the analytic Jacobian over given
// activity points (the information matrix of a fitted row set).
FisherResult fisher_from_rows(ModelId m, const ParamVector& p,
                              const std::vector<double>& activities);

// eta_n = noise * sqrt((F^-1)_{nn}) / |p_n|; entries become +inf when F is
// numerically singular (condition above threshold or factorisation failure).
std::vector<double> error_estimator(const FisherResult& fr, const ParamVector& p_est,
                                    double noise_scale = 1.0,
                                    double cond_threshold = 1e12);

struct SensitivityReport {
    ModelId model{};
    std::vector<double> grid;                 // activity grid
    std::vector<std::vector<double>> gamma;   // [n][grid] pointwise profiles
    GammaTotalResult total;
};

SensitivityReport sensitivity_report(ModelId m, const ParamBox& box, const ParamVector& nominal,
                                     int grid_points = 97,
                                     const SensitivityOptions& opts = {});

}  // namespace sorption
