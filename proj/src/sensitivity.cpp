#include "sorption/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sorption {

namespace {

// Does p1 + p2*a cross an odd multiple of pi/2 while p_n sweeps its interval?
bool mads_interval_hits_pole(const ParamBox& box, const ParamVector& nominal, std::size_t n,
                             double a, double margin) {
    double lo_arg, hi_arg;
    if (n == 0) {
        lo_arg = box.lo[0] + nominal[1] * a;
        hi_arg = box.hi[0] + nominal[1] * a;
    } else {
        lo_arg = nominal[0] + box.lo[1] * a;
        hi_arg = nominal[0] + box.hi[1] * a;
    }
    for (int k = -4; k <= 4; ++k) {
        const double pole = (2.0 * k + 1.0) * M_PI / 2.0;
        if (pole > lo_arg - margin && pole < hi_arg + margin) return true;
    }
    return false;
}

double truncated_hi(ModelId m, const ParamVector& nominal, double lo, double hi, double margin) {
    if (m != ModelId::MADS) return hi;
    const double pole = mads_first_pole(nominal, hi + margin);
    if (std::isfinite(pole) && pole - margin < hi) return std::max(lo + margin, pole - margin);
    return hi;
}

}  // namespace

QuadResult nu_local(ModelId m, const ParamBox& box, const ParamVector& nominal, std::size_t n,
                    double a, const SensitivityOptions& opts) {
    if (n >= box.size()) throw ArityError("nu_local: parameter index out of range");
    if (m == ModelId::MADS && mads_interval_hits_pole(box, nominal, n, a, 1e-6))
        throw SingularityError("nu_local: tan pole inside the parameter interval");
    auto integrand = [&](double pn) {
        ParamVector p = nominal;
        p[n] = pn;
        const double th = eval_grad(m, p, a)[n];
        return th * th;
    };
    QuadResult r = integrate_adaptive(integrand, box.lo[n], box.hi[n], opts.param_order, 1,
                                      opts.rel_tol);
    if (!r.converged)
        throw QuadratureError("nu_local: node doubling did not converge for " +
                              std::string(model_name(m)) + " p" + std::to_string(n + 1));
    return r;
}

std::vector<double> gamma_local(ModelId m, const ParamBox& box, const ParamVector& nominal,
                                double a, const SensitivityOptions& opts) {
    std::vector<double> nu(box.size());
    double total = 0.0;
    for (std::size_t n = 0; n < box.size(); ++n) {
        nu[n] = nu_local(m, box, nominal, n, a, opts).value;
        total += nu[n];
    }
    if (total <= 0.0) throw DataError("gamma_local: all sensitivities vanish");
    for (auto& v : nu) v /= total;
    return nu;
}

std::vector<double> gamma_point(ModelId m, const ParamVector& nominal, double a) {
    const ParamVector th = eval_grad(m, nominal, a);
    std::vector<double> g(th.size());
    double total = 0.0;
    for (std::size_t n = 0; n < th.size(); ++n) {
        g[n] = th[n] * th[n];
        total += g[n];
    }
    if (total <= 0.0) throw DataError("gamma_point: all sensitivities vanish");
    for (auto& v : g) v /= total;
    return g;
}

GammaTotalResult gamma_total(ModelId m, const ParamBox& box, const ParamVector& nominal,
                             const SensitivityOptions& opts) {
    GammaTotalResult out;
    const double hi = truncated_hi(m, nominal, opts.window_lo, opts.window_hi, opts.pole_margin);
    out.window_hi = hi;
    out.nu.resize(box.size());
    double total = 0.0;
    for (std::size_t n = 0; n < box.size(); ++n) {
        auto integrand = [&](double a) {
            const double th = eval_grad(m, nominal, a)[n];
            return th * th;
        };
        QuadResult r = (m == ModelId::MADS)
                           ? integrate_graded_upper(integrand, opts.window_lo, hi, 24, 32,
                                                    opts.rel_tol)
                           : integrate_adaptive(integrand, opts.window_lo, hi,
                                                opts.activity_order, 1, opts.rel_tol);
        out.converged = out.converged && r.converged;
        out.nu[n] = r.value;
        total += r.value;
    }
    out.gamma = out.nu;
    for (auto& v : out.gamma) v /= total;
    return out;
}

FisherResult fisher_matrix(ModelId m, const ParamVector& p, double window_lo, double window_hi,
                           const SensitivityOptions& opts) {
    const std::size_t np = p.size();
    FisherResult fr;
    fr.window_lo = window_lo;
    fr.window_hi = truncated_hi(m, p, window_lo, window_hi, opts.pole_margin);
    fr.F = Matrix(np);
    for (std::size_t n1 = 0; n1 < np; ++n1) {
        for (std::size_t n2 = n1; n2 < np; ++n2) {
            auto integrand = [&](double a) {
                const ParamVector th = eval_grad(m, p, a);
                return th[n1] * th[n2];
            };
            QuadResult r = integrate_adaptive(integrand, fr.window_lo, fr.window_hi,
                                              opts.activity_order, 1, opts.rel_tol);
            fr.converged = fr.converged && r.converged;
            fr.F(n1, n2) = r.value;
            fr.F(n2, n1) = r.value;
        }
    }
    fr.condition = condition1(fr.F);
    return fr;
}

FisherResult fisher_from_rows(ModelId m, const ParamVector& p,
                              const std::vector<double>& activities) {
    const std::size_t np = p.size();
    FisherResult fr;
    fr.window_lo = activities.empty() ? 0.0 : activities.front();
    fr.window_hi = activities.empty() ? 0.0 : activities.back();
    fr.F = Matrix(np);
    for (double a : activities) {
        const ParamVector th = eval_grad(m, p, a);
        for (std::size_t n1 = 0; n1 < np; ++n1)
            for (std::size_t n2 = 0; n2 < np; ++n2) fr.F(n1, n2) += th[n1] * th[n2];
    }
    fr.condition = condition1(fr.F);
    return fr;
}

std::vector<double> error_estimator(const FisherResult& fr, const ParamVector& p_est,
                                    double noise_scale, double cond_threshold) {
    const std::size_t np = p_est.size();
    std::vector<double> eta(np, std::numeric_limits<double>::infinity());
    Matrix inv;
    if (!(fr.condition < cond_threshold) || !invert(fr.F, inv)) return eta;
    for (std::size_t n = 0; n < np; ++n) {
        const double v = inv(n, n);
        eta[n] = noise_scale * std::sqrt(std::max(v, 0.0)) / std::fabs(p_est[n]);
    }
    return eta;
}

SensitivityReport sensitivity_report(ModelId m, const ParamBox& box, const ParamVector& nominal,
                                     int grid_points, const SensitivityOptions& opts) {
    SensitivityReport rep;
    rep.model = m;
    rep.total = gamma_total(m, box, nominal, opts);
    const double hi = rep.total.window_hi;
    rep.gamma.assign(box.size(), {});
    for (int i = 0; i < grid_points; ++i) {
        const double a = opts.window_lo + (hi - opts.window_lo) * i / (grid_points - 1);
        rep.grid.push_back(a);
        const auto g = gamma_point(m, nominal, a);
        for (std::size_t n = 0; n < box.size(); ++n) rep.gamma[n].push_back(g[n]);
    }
    return rep;
}

}  // namespace sorption
