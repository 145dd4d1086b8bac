#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sorption/dataset.hpp"
#include "sorption/models.hpp"
#include "sorption/types.hpp"

namespace sorption {

// Discrete reading of the model-data distance: sqrt of the sum of squared
// errors over the dataset's activity points.
double distance(ModelId m, const ParamVector& p, const SorptionDataset& ds);

// (activity, model - measurement) pairs in dataset order.
std::vector<std::pair<double, double>> residual_profile(ModelId m, const ParamVector& p,
                                                        const SorptionDataset& ds);

struct FitOptions {
    int n_starts = 16;          // Halton starts in addition to the box midpoint
    int max_iterations = 200;
    double step_tol = 1e-10;    // relative step-norm stopping rule
    double cauchy_scale = 0.01; // bounded-influence scale on moisture residuals
    bool include_zero_row = true;  // add the a = 0 row for models defined there
    double eta_activity_cap = 0.8; // rows feeding the post-fit information matrix
    std::uint64_t seed = 0;        // reserved; the solver itself is deterministic
};

struct FitResult {
    ModelId model{};
    ParamVector p_est;
    double distance = 0.0;     // sqrt(SSE) over the analysis rows
    double sse = 0.0;          // distance^2
    std::vector<double> eta;   // relative error estimators at p_est
    int iterations = 0;
    bool converged = false;
    int starts_used = 0;
    double robust_cost = 0.0;  // objective value actually minimised
};

// Multi-start projected damped Gauss-Newton with Cauchy IRLS reweighting.
// `ds` is the full dataset; the fit consumes its analysis rows (plus the a=0
// row where defined), and the reported distance covers the analysis rows.
FitResult fit_least_squares(ModelId m, const SorptionDataset& ds, const ParamBox& box,
                            const FitOptions& opts = FitOptions{});

std::vector<FitResult> fit_all_models(const SorptionDataset& ds,
                                      const FitOptions& opts = FitOptions{});

// Internal single-start core, exposed for tests and refit checks.
struct GnTrace {
    ParamVector p;
    double robust_cost = 0.0;
    int iterations = 0;
    bool converged = false;
};
GnTrace gn_irls_minimize(ModelId m, const std::vector<double>& a, const std::vector<double>& u,
                         const ParamBox& box, ParamVector p0, const FitOptions& opts);

}  // namespace sorption
