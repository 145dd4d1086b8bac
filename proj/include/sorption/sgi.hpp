#pragma once

#include <functional>
#include <string>

#include "sorption/models.hpp"
#include "sorption/rng.hpp"
#include "sorption/types.hpp"

namespace sorption {

// A parametric curve a -> f(p, a); the eight sorption models wrap into this,
// and deliberately degenerate control families plug in for harness checks.
struct CurveFamily {
    std::string name;
    ParamBox box;
    std::function<double(const ParamVector&, double)> eval;
};

CurveFamily model_family(ModelId m);

// f(p, a) = (p1 + p2) * a: distinct parameter pairs on a p1 + p2 level set
// produce identical curves, so the harness must flag it.
CurveFamily planted_non_sgi_family();

struct SgiOptions {
    int trials = 10000;
    double curve_tol = 1e-10;
    double param_tol = 1e-3;   // relative, per component
    int grid_points = 97;
    double grid_lo = 0.05;
    double grid_hi = 0.95;
    int nm_evaluations = 160;  // direct-search budget per trial
    std::uint64_t seed = 2024;
};

struct SgiReport {
    std::string family;
    int trials = 0;
    bool counterexample = false;
    ParamVector worst_p;
    ParamVector worst_p_tilde;
    double worst_curve_distance = 0.0;  // smallest curve distance among separated pairs
    double worst_param_distance = 0.0;
    int identity_failures = 0;          // constructive direction must give 0
    int stalls = 0;
};

// Max-abs curve separation over the evaluation grid; +inf when either
// parameter vector is not evaluable everywhere.
double curve_distance(const CurveFamily& fam, const ParamVector& p, const ParamVector& q,
                      const SgiOptions& opts);

// Relative parameter separation (max over components).
double param_distance(const ParamVector& p, const ParamVector& q);

// Random-restart falsification: draw p, search for a distinct p~ with an
// indistinguishable curve. Counterexample when curve distance < curve_tol
// while parameter distance > param_tol.
SgiReport sgi_falsify(const CurveFamily& fam, const SgiOptions& opts);

}  // namespace sorption
