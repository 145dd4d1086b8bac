#pragma once

#include "sorption/types.hpp"

namespace sorption {

// Moisture content u(a) for model m at parameters p.
//
// Valid activity range is [0, 1]; callers performing analysis restrict to
// ActivityDomain. Endpoints are admitted only where a model is defined there
// (BET/GAB/SM/MADS at a = 0; FX/VG at a = 1 as an algebraic limit).
double eval_model(ModelId m, const ParamVector& p, double a,
                  const PhysicalConstants& c = PhysicalConstants{});

// Analytic parameter gradient d f_m / d p_n, one entry per parameter.
ParamVector eval_grad(ModelId m, const ParamVector& p, double a,
                      const PhysicalConstants& c = PhysicalConstants{});

// Kelvin relation: capillary pressure [Pa] at water activity a.
double capillary_pressure(double a, const PhysicalConstants& c = PhysicalConstants{});

struct MadsShape {
    double u0;
    double alpha;
};

// Offset/scale pair that turns u0 + alpha*tan(p1 + p2*a) into the closed-form
// MADS curve: zero moisture at a = 0 and slope K at a = a0 = 0.
MadsShape mads_shape_coefficients(double p1, double p2,
                                  const PhysicalConstants& c = PhysicalConstants{});

// Table-2 uniform prior intervals.
ParamBox prior_box(ModelId m);

// True for models whose formula is defined at a = 0 (BET, GAB, SM, MADS).
bool defined_at_zero(ModelId m);

// Distance from p1 + p2*a to the nearest odd multiple of pi/2 (the tan pole).
double mads_pole_distance(double p1, double p2, double a);

// Smallest activity in (0, hi] where MADS at p hits a tan pole, or +inf.
double mads_first_pole(const ParamVector& p, double hi);

// Scan helper: true when every grid activity keeps clear of tan poles.
bool mads_pole_free(const ParamVector& p, double lo, double hi, int grid = 97);

}  // namespace sorption
