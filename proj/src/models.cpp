#include "sorption/models.hpp"

#include <cmath>
#include <limits>

namespace sorption {

namespace {

constexpr double kPoleGuard = 1e-9;

void check_arity(ModelId m, const ParamVector& p) {
    if (p.size() != param_count(m))
        throw ArityError(std::string(model_name(m)) + ": expected " +
                         std::to_string(param_count(m)) + " parameters, got " +
                         std::to_string(p.size()));
}

void check_activity(ModelId m, double a) {
    if (!(a >= 0.0 && a <= 1.0))
        throw DomainError(std::string(model_name(m)) + ": activity " + std::to_string(a) +
                          " outside [0, 1]");
}

[[noreturn]] void undefined_at(ModelId m, double a) {
    throw DomainError(std::string(model_name(m)) + " is not defined at a = " +
                      std::to_string(a));
}

// x^y as exp(y*ln(x)) with x > 0; keeps fractional powers single-valued.
double pow_pos(double x, double y) { return std::exp(y * std::log(x)); }

}  // namespace

const char* model_name(ModelId m) {
    switch (m) {
        case ModelId::BET: return "BET";
        case ModelId::GAB: return "GAB";
        case ModelId::TRM: return "TRM";
        case ModelId::OSW: return "OSW";
        case ModelId::FX: return "FX";
        case ModelId::VG: return "VG";
        case ModelId::SM: return "SM";
        case ModelId::MADS: return "MADS";
    }
    return "?";
}

ModelId model_from_name(const std::string& name) {
    for (ModelId m : kAllModels)
        if (name == model_name(m)) return m;
    throw std::invalid_argument("unknown model name: " + name);
}

std::size_t param_count(ModelId m) {
    switch (m) {
        case ModelId::BET:
        case ModelId::OSW:
        case ModelId::SM:
        case ModelId::MADS: return 2;
        case ModelId::GAB:
        case ModelId::TRM:
        case ModelId::VG: return 3;
        case ModelId::FX: return 4;
    }
    return 0;
}

bool ParamBox::contains(const ParamVector& p, double slack) const {
    if (p.size() != lo.size()) return false;
    for (std::size_t n = 0; n < p.size(); ++n)
        if (p[n] < lo[n] - slack || p[n] > hi[n] + slack) return false;
    return true;
}

ParamVector ParamBox::midpoint() const {
    ParamVector m(lo.size());
    for (std::size_t n = 0; n < lo.size(); ++n) m[n] = 0.5 * (lo[n] + hi[n]);
    return m;
}

double capillary_pressure(double a, const PhysicalConstants& c) {
    if (!(a > 0.0 && a <= 1.0))
        throw DomainError("capillary pressure requires 0 < a <= 1; got " + std::to_string(a));
    return -c.rho_R_T() * std::log(a);
}

MadsShape mads_shape_coefficients(double p1, double p2, const PhysicalConstants& c) {
    if (p2 == 0.0) throw ArityError("MADS shape coefficients require p2 != 0");
    if (mads_pole_distance(p1, 0.0, 0.0) < kPoleGuard)
        throw SingularityError("MADS: tan pole at p1");
    const double t = std::tan(p1);
    const double alpha = c.K_slope / (p2 * (1.0 + t * t));
    return MadsShape{-alpha * t, alpha};
}

double mads_pole_distance(double p1, double p2, double a) {
    const double arg = p1 + p2 * a;
    // nearest odd multiple of pi/2
    const double k = std::round(arg / M_PI - 0.5);
    const double pole = (2.0 * k + 1.0) * M_PI / 2.0;
    return std::fabs(arg - pole);
}

double mads_first_pole(const ParamVector& p, double hi) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = -4; k <= 4; ++k) {
        const double pole = (2.0 * k + 1.0) * M_PI / 2.0;
        const double a = (pole - p[0]) / p[1];
        if (a > 0.0 && a <= hi && a < best) best = a;
    }
    return best;
}

bool mads_pole_free(const ParamVector& p, double lo, double hi, int) {
    // p1 + p2*a sweeps [arg_lo, arg_hi] monotonically (p2 > 0 in the box);
    // a pole-free window means no odd multiple of pi/2 inside that sweep.
    const double arg_lo = p[0] + p[1] * std::min(lo, hi);
    const double arg_hi = p[0] + p[1] * std::max(lo, hi);
    for (int k = -6; k <= 6; ++k) {
        const double pole = (2.0 * k + 1.0) * M_PI / 2.0;
        if (pole > arg_lo - 1e-6 && pole < arg_hi + 1e-6) return false;
    }
    return true;
}

double eval_model(ModelId m, const ParamVector& p, double a, const PhysicalConstants& c) {
    check_arity(m, p);
    check_activity(m, a);
    switch (m) {
        case ModelId::BET: {
            if (a >= 1.0) undefined_at(m, a);
            return p[0] * p[1] * a / ((1.0 - a) * (1.0 + (p[1] - 1.0) * a));
        }
        case ModelId::GAB: {
            const double s = 1.0 - p[1] * a;
            const double q = s + p[1] * p[2] * a;
            return p[0] * p[1] * p[2] * a / (s * q);
        }
        case ModelId::TRM: {
            if (a <= 0.0) undefined_at(m, a);
            return p[0] * std::exp(p[1] * std::log(a) * std::exp(p[2] * a));
        }
        case ModelId::OSW: {
            if (a <= 0.0) return 0.0;  // limit value; p2 > 0 throughout the prior box
            if (a >= 1.0) undefined_at(m, a);
            return p[0] * pow_pos(a / (1.0 - a), p[1]);
        }
        case ModelId::FX: {
            if (a <= 0.0) undefined_at(m, a);
            const double h = -p[1] * std::log(a);
            const double x = h > 0.0 ? pow_pos(h, p[2]) : 0.0;
            return p[0] * pow_pos(std::log(M_E + x), -p[3]);
        }
        case ModelId::VG: {
            if (a <= 0.0) undefined_at(m, a);
            const double y = -p[1] * std::log(a);
            const double z = y > 0.0 ? pow_pos(y, p[2]) : 0.0;
            return p[0] * pow_pos(1.0 + z, -1.0 + 1.0 / p[2]);
        }
        case ModelId::SM: {
            // Smith's subtractive form; positive p2 gives a rising curve.
            if (a >= 1.0) undefined_at(m, a);
            return p[0] - p[1] * std::log(1.0 - a);
        }
        case ModelId::MADS: {
            if (mads_pole_distance(p[0], p[1], a) < kPoleGuard)
                throw SingularityError("MADS: tan pole at a = " + std::to_string(a));
            const double t = std::tan(p[0]);
            return c.K_slope / (p[1] * (1.0 + t * t)) * (std::tan(p[0] + p[1] * a) - t);
        }
    }
    return 0.0;
}

ParamVector eval_grad(ModelId m, const ParamVector& p, double a, const PhysicalConstants& c) {
    check_arity(m, p);
    check_activity(m, a);
    ParamVector g(p.size(), 0.0);
    switch (m) {
        case ModelId::BET: {
            if (a >= 1.0) undefined_at(m, a);
            const double D = 1.0 + (p[1] - 1.0) * a;
            g[0] = p[1] * a / ((1.0 - a) * D);
            g[1] = p[0] * a / (D * D);
            break;
        }
        case ModelId::GAB: {
            const double s = 1.0 - p[1] * a;
            const double q = s + p[1] * p[2] * a;
            const double sq = s * q;
            g[0] = p[1] * p[2] * a / sq;
            g[1] = p[0] * p[2] * a * (sq + p[1] * a * (q - s * (p[2] - 1.0))) / (sq * sq);
            g[2] = p[0] * p[1] * a / (q * q);
            break;
        }
        case ModelId::TRM: {
            if (a <= 0.0) undefined_at(m, a);
            const double e3 = std::exp(p[2] * a);
            const double gexp = p[1] * std::log(a) * e3;
            const double f = p[0] * std::exp(gexp);
            g[0] = f / p[0];
            g[1] = f * std::log(a) * e3;
            g[2] = f * gexp * a;
            break;
        }
        case ModelId::OSW: {
            if (a <= 0.0 || a >= 1.0) undefined_at(m, a);
            const double t = a / (1.0 - a);
            const double tp = pow_pos(t, p[1]);
            g[0] = tp;
            g[1] = p[0] * tp * std::log(t);
            break;
        }
        case ModelId::FX: {
            if (a <= 0.0) undefined_at(m, a);
            const double h = -p[1] * std::log(a);
            const double x = h > 0.0 ? pow_pos(h, p[2]) : 0.0;
            const double B = std::log(M_E + x);
            const double Bp = pow_pos(B, -p[3]);
            const double common = -p[0] * p[3] * Bp / (B * (M_E + x));
            g[0] = Bp;
            g[1] = common * p[2] * x / p[1];
            g[2] = x > 0.0 ? common * x * std::log(h) : 0.0;
            g[3] = -p[0] * Bp * std::log(B);
            break;
        }
        case ModelId::VG: {
            if (a <= 0.0) undefined_at(m, a);
            const double y = -p[1] * std::log(a);
            const double z = y > 0.0 ? pow_pos(y, p[2]) : 0.0;
            const double G = 1.0 + z;
            const double E = -1.0 + 1.0 / p[2];
            const double GE = pow_pos(G, E);
            const double f = p[0] * GE;
            g[0] = GE;
            g[1] = p[0] * E * pow_pos(G, E - 1.0) * p[2] * z / p[1];
            g[2] = f * ((z > 0.0 ? E * z * std::log(y) / G : 0.0) -
                        std::log(G) / (p[2] * p[2]));
            break;
        }
        case ModelId::SM: {
            if (a >= 1.0) undefined_at(m, a);
            g[0] = 1.0;
            g[1] = -std::log(1.0 - a);
            break;
        }
        case ModelId::MADS: {
            if (mads_pole_distance(p[0], p[1], a) < kPoleGuard)
                throw SingularityError("MADS: tan pole at a = " + std::to_string(a));
            const double t = std::tan(p[0]);
            const double T = std::tan(p[0] + p[1] * a);
            const double sec2_p = 1.0 + t * t;
            const double sec2_P = 1.0 + T * T;
            const double cos2 = 1.0 / sec2_p;
            const double Kp2 = c.K_slope / p[1];
            g[0] = Kp2 * (-std::sin(2.0 * p[0]) * (T - t) + cos2 * (sec2_P - sec2_p));
            g[1] = Kp2 * cos2 * (a * sec2_P - (T - t) / p[1]);
            break;
        }
    }
    return g;
}

ParamBox prior_box(ModelId m) {
    switch (m) {
        case ModelId::GAB: return {{1.06e-2, 0.95, 5.0}, {5.31e-2, 1.05, 171.0}};
        case ModelId::TRM: return {{1.0, 1.0, 2.0}, {3.0, 1.55, 3.0}};
        case ModelId::OSW: return {{0.013, 0.75}, {0.14, 1.28}};
        case ModelId::FX: return {{4.9, 18.0, 7.0, 1.46}, {40.0, 18.69, 18.5, 1.7}};
        case ModelId::BET: return {{0.034, 0.20}, {0.09, 10.0}};
        case ModelId::VG: return {{0.99, 26.6, 1.7}, {179.0, 3.73e3, 2.4}};
        case ModelId::SM: return {{0.0026, 0.04}, {0.013, 0.20}};
        case ModelId::MADS: return {{-1.1, 2.1}, {-0.4, 2.9}};
    }
    return {};
}

bool defined_at_zero(ModelId m) {
    switch (m) {
        case ModelId::BET:
        case ModelId::GAB:
        case ModelId::SM:
        case ModelId::MADS: return true;
        default: return false;
    }
}

}  // namespace sorption
