#include "sorption/sgi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sorption {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Standard Nelder-Mead on a fixed evaluation budget; objective returns +inf
// outside the feasible box, which the reflect/shrink steps tolerate.
struct NelderMead {
    std::function<double(const ParamVector&)> f;
    int budget;
    int used = 0;

    double eval(const ParamVector& x) {
        ++used;
        return f(x);
    }

    std::pair<ParamVector, double> minimize(std::vector<ParamVector> simplex) {
        const std::size_t n = simplex[0].size();
        std::vector<double> fv(simplex.size());
        for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = eval(simplex[i]);
        while (used < budget) {
            // order
            std::vector<std::size_t> idx(simplex.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(),
                      [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            std::vector<ParamVector> s2;
            std::vector<double> f2;
            for (auto i : idx) {
                s2.push_back(simplex[i]);
                f2.push_back(fv[i]);
            }
            simplex = std::move(s2);
            fv = std::move(f2);

            ParamVector centroid(n, 0.0);
            for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
                for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
            for (auto& c : centroid) c /= static_cast<double>(simplex.size() - 1);

            auto blend = [&](double t) {
                ParamVector x(n);
                for (std::size_t k = 0; k < n; ++k)
                    x[k] = centroid[k] + t * (simplex.back()[k] - centroid[k]);
                return x;
            };

            const ParamVector xr = blend(-1.0);
            const double fr = eval(xr);
            if (fr < fv.front()) {
                const ParamVector xe = blend(-2.0);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex.back() = xe;
                    fv.back() = fe;
                } else {
                    simplex.back() = xr;
                    fv.back() = fr;
                }
            } else if (fr < fv[fv.size() - 2]) {
                simplex.back() = xr;
                fv.back() = fr;
            } else {
                const ParamVector xc = blend(0.5);
                const double fc = eval(xc);
                if (fc < fv.back()) {
                    simplex.back() = xc;
                    fv.back() = fc;
                } else {
                    for (std::size_t i = 1; i < simplex.size(); ++i) {
                        for (std::size_t k = 0; k < n; ++k)
                            simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
                        fv[i] = eval(simplex[i]);
                    }
                }
            }
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < fv.size(); ++i)
            if (fv[i] < fv[best]) best = i;
        return {simplex[best], fv[best]};
    }
};

}  // namespace

CurveFamily model_family(ModelId m) {
    CurveFamily fam;
    fam.name = model_name(m);
    fam.box = prior_box(m);
    fam.eval = [m](const ParamVector& p, double a) { return eval_model(m, p, a); };
    return fam;
}

CurveFamily planted_non_sgi_family() {
    CurveFamily fam;
    fam.name = "CONTROL";
    fam.box = ParamBox{{0.0, 0.0}, {1.0, 1.0}};
    fam.eval = [](const ParamVector& p, double a) { return (p[0] + p[1]) * a; };
    return fam;
}

double curve_distance(const CurveFamily& fam, const ParamVector& p, const ParamVector& q,
                      const SgiOptions& opts) {
    double worst = 0.0;
    for (int i = 0; i < opts.grid_points; ++i) {
        const double a =
            opts.grid_lo + (opts.grid_hi - opts.grid_lo) * i / (opts.grid_points - 1);
        double fp, fq;
        try {
            fp = fam.eval(p, a);
            fq = fam.eval(q, a);
        } catch (const std::exception&) {
            return kInf;
        }
        if (!std::isfinite(fp) || !std::isfinite(fq)) return kInf;
        worst = std::max(worst, std::fabs(fp - fq));
    }
    return worst;
}

double param_distance(const ParamVector& p, const ParamVector& q) {
    double worst = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double scale = std::max({std::fabs(p[n]), std::fabs(q[n]), 1e-12});
        worst = std::max(worst, std::fabs(p[n] - q[n]) / scale);
    }
    return worst;
}

SgiReport sgi_falsify(const CurveFamily& fam, const SgiOptions& opts) {
    if (opts.trials < 1) throw DataError("sgi_falsify: trials must be >= 1");
    if (!(opts.curve_tol > 0.0) || !(opts.param_tol > 0.0))
        throw DataError("sgi_falsify: tolerances must be positive");
    SgiReport rep;
    rep.family = fam.name;
    rep.trials = opts.trials;
    rep.worst_curve_distance = kInf;
    Rng rng(opts.seed);
    const std::size_t np = fam.box.size();

    std::vector<double> grid(opts.grid_points);
    for (int i = 0; i < opts.grid_points; ++i)
        grid[i] = opts.grid_lo + (opts.grid_hi - opts.grid_lo) * i / (opts.grid_points - 1);

    std::vector<double> target(grid.size());
    auto eval_curve = [&](const ParamVector& q, std::vector<double>& out) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            try {
                out[i] = fam.eval(q, grid[i]);
            } catch (const std::exception&) {
                return false;
            }
            if (!std::isfinite(out[i])) return false;
        }
        return true;
    };

    std::vector<double> scratch(grid.size());
    for (int trial = 0; trial < opts.trials; ++trial) {
        ParamVector p(np);
        for (std::size_t n = 0; n < np; ++n)
            p[n] = rng.uniform(fam.box.lo[n], fam.box.hi[n]);
        if (!eval_curve(p, target)) continue;  // tan-pole draws are not usable targets
        if (curve_distance(fam, p, p, opts) != 0.0) {
            ++rep.identity_failures;
            continue;
        }

        auto objective = [&](const ParamVector& q) {
            if (!fam.box.contains(q)) return kInf;
            if (param_distance(p, q) <= opts.param_tol) return kInf;  // search away from p
            if (!eval_curve(q, scratch)) return kInf;
            double worst = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                worst = std::max(worst, std::fabs(scratch[i] - target[i]));
            return worst;
        };

        // simplex seeded at a random point away from p
        ParamVector q0(np);
        for (std::size_t n = 0; n < np; ++n)
            q0[n] = rng.uniform(fam.box.lo[n], fam.box.hi[n]);
        std::vector<ParamVector> simplex{q0};
        for (std::size_t n = 0; n < np; ++n) {
            ParamVector v = q0;
            v[n] = std::clamp(v[n] + 0.1 * fam.box.width(n), fam.box.lo[n], fam.box.hi[n]);
            if (v[n] == q0[n]) v[n] -= 0.1 * fam.box.width(n);
            simplex.push_back(v);
        }
        NelderMead nm{objective, opts.nm_evaluations};
        auto [q_best, d_best] = nm.minimize(std::move(simplex));
        if (!std::isfinite(d_best)) {
            ++rep.stalls;
            continue;
        }
        const double pd = param_distance(p, q_best);
        if (d_best < rep.worst_curve_distance) {
            rep.worst_curve_distance = d_best;
            rep.worst_param_distance = pd;
            rep.worst_p = p;
            rep.worst_p_tilde = q_best;
        }
        if (d_best < opts.curve_tol && pd > opts.param_tol) {
            rep.counterexample = true;
            return rep;
        }
    }
    return rep;
}

}  // namespace sorption
