#include "sorption/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sorption/linalg.hpp"
#include "sorption/rng.hpp"
#include "sorption/sensitivity.hpp"

namespace sorption {

namespace {

double robust_cost(const std::vector<double>& r, double c) {
    double acc = 0.0;
    for (double ri : r) acc += c * c * std::log1p((ri / c) * (ri / c));
    return acc;
}

bool residuals(ModelId m, const ParamVector& p, const std::vector<double>& a,
               const std::vector<double>& u, std::vector<double>& r) {
    r.resize(a.size());
    try {
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = eval_model(m, p, a[i]) - u[i];
            if (!std::isfinite(r[i])) return false;
        }
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

ParamVector clamp_to(const ParamBox& box, ParamVector p) {
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::clamp(p[n], box.lo[n], box.hi[n]);
    return p;
}

}  // namespace

double distance(ModelId m, const ParamVector& p, const SorptionDataset& ds) {
    if (ds.rows.empty()) throw DataError("distance: empty dataset");
    double sse = 0.0;
    for (const auto& row : ds.rows) {
        const double r = eval_model(m, p, row.activity) - row.moisture;
        sse += r * r;
    }
    return std::sqrt(sse);
}

std::vector<std::pair<double, double>> residual_profile(ModelId m, const ParamVector& p,
                                                        const SorptionDataset& ds) {
    std::vector<std::pair<double, double>> out;
    out.reserve(ds.rows.size());
    for (const auto& row : ds.rows)
        out.emplace_back(row.activity, eval_model(m, p, row.activity) - row.moisture);
    return out;
}

GnTrace gn_irls_minimize(ModelId m, const std::vector<double>& a, const std::vector<double>& u,
                         const ParamBox& box, ParamVector p0, const FitOptions& opts) {
    const std::size_t np = box.size();
    const double c = opts.cauchy_scale;
    GnTrace tr;
    tr.p = clamp_to(box, std::move(p0));

    std::vector<double> r;
    if (!residuals(m, tr.p, a, u, r)) return tr;  // converged=false, cost 0: caller skips
    tr.robust_cost = robust_cost(r, c);

    double lambda = 1e-3;
    std::vector<std::vector<double>> J(a.size());
    for (int it = 0; it < opts.max_iterations; ++it) {
        ++tr.iterations;
        bool grad_ok = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            try {
                J[i] = eval_grad(m, tr.p, a[i]);
            } catch (const std::exception&) {
                grad_ok = false;
                break;
            }
        }
        if (!grad_ok) break;

        // IRLS normal equations: (J^T W J + lambda diag) dp = -J^T W r
        Matrix H(np);
        std::vector<double> g(np, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double w = 1.0 / (1.0 + (r[i] / c) * (r[i] / c));
            for (std::size_t n1 = 0; n1 < np; ++n1) {
                g[n1] += w * J[i][n1] * r[i];
                for (std::size_t n2 = n1; n2 < np; ++n2) H(n1, n2) += w * J[i][n1] * J[i][n2];
            }
        }
        for (std::size_t n1 = 0; n1 < np; ++n1)
            for (std::size_t n2 = 0; n2 < n1; ++n2) H(n1, n2) = H(n2, n1);

        bool accepted = false;
        ParamVector p_new;
        std::vector<double> r_new;
        double cost_new = 0.0;
        for (int damp = 0; damp < 40 && !accepted; ++damp) {
            Matrix Hd = H;
            for (std::size_t n = 0; n < np; ++n)
                Hd(n, n) += lambda * std::max(H(n, n), 1e-30);
            std::vector<double> rhs(np), dp;
            for (std::size_t n = 0; n < np; ++n) rhs[n] = -g[n];
            if (!solve(Hd, rhs, dp)) {
                lambda *= 10.0;
                continue;
            }
            p_new = tr.p;
            for (std::size_t n = 0; n < np; ++n) p_new[n] += dp[n];
            p_new = clamp_to(box, std::move(p_new));
            if (residuals(m, p_new, a, u, r_new)) {
                cost_new = robust_cost(r_new, c);
                if (cost_new <= tr.robust_cost) {
                    accepted = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!accepted) break;

        double step2 = 0.0, base2 = 0.0;
        for (std::size_t n = 0; n < np; ++n) {
            const double d = p_new[n] - tr.p[n];
            step2 += d * d;
            base2 += tr.p[n] * tr.p[n];
        }
        tr.p = std::move(p_new);
        r = std::move(r_new);
        tr.robust_cost = cost_new;
        lambda = std::max(lambda * 0.3, 1e-12);
        if (std::sqrt(step2) < opts.step_tol * std::max(std::sqrt(base2), 1e-30)) {
            tr.converged = true;
            break;
        }
    }
    return tr;
}

FitResult fit_least_squares(ModelId m, const SorptionDataset& ds, const ParamBox& box,
                            const FitOptions& opts) {
    const SorptionDataset analysis = ds.analysis_rows();
    if (analysis.size() < box.size())
        throw DataError("fit_least_squares: fewer analysis rows than parameters");

    // Fit rows: analysis rows, plus the measured a=0 row for models whose
    // formula is defined there.
    std::vector<double> a = analysis.activities();
    std::vector<double> u = analysis.moistures();
    if (opts.include_zero_row && defined_at_zero(m)) {
        for (const auto& row : ds.rows) {
            if (row.activity == 0.0) {
                a.insert(a.begin(), row.activity);
                u.insert(u.begin(), row.moisture);
                break;
            }
        }
    }

    FitResult best;
    best.model = m;
    best.robust_cost = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= opts.n_starts; ++s) {
        ParamVector p0(box.size());
        if (s == 0) {
            p0 = box.midpoint();
        } else {
            const auto h = halton_point(static_cast<std::uint64_t>(s), box.size());
            for (std::size_t n = 0; n < box.size(); ++n)
                p0[n] = box.lo[n] + h[n] * box.width(n);
        }
        GnTrace tr = gn_irls_minimize(m, a, u, box, p0, opts);
        ++best.starts_used;
        if (tr.iterations == 0 && tr.robust_cost == 0.0 && !tr.converged) continue;
        if (tr.robust_cost < best.robust_cost) {
            best.p_est = tr.p;
            best.robust_cost = tr.robust_cost;
            best.iterations = tr.iterations;
            best.converged = tr.converged;
        }
    }
    if (best.p_est.empty())
        throw std::runtime_error(std::string("fit_least_squares: all starts failed for ") +
                                 model_name(m));

    best.distance = distance(m, best.p_est, analysis);
    best.sse = best.distance * best.distance;

    // Post-fit relative error estimator from the information actually fitted:
    // discrete Fisher over rows up to the hygroscopic cap, noise = rms(delta).
    SorptionDataset eta_rows = analysis.restrict(0.0, opts.eta_activity_cap);
    FisherResult fr = fisher_from_rows(m, best.p_est, eta_rows.activities());
    best.eta = error_estimator(fr, best.p_est, analysis.rms_delta());
    return best;
}

std::vector<FitResult> fit_all_models(const SorptionDataset& ds, const FitOptions& opts) {
    std::vector<FitResult> out;
    out.reserve(kAllModels.size());
    for (ModelId m : kAllModels) out.push_back(fit_least_squares(m, ds, prior_box(m), opts));
    return out;
}

}  // namespace sorption
