#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sorption {

// The eight sorption models, numbered as in the source material.
enum class ModelId : int {
    BET = 1,
    GAB = 2,
    TRM = 3,
    OSW = 4,
    FX = 5,
    VG = 6,
    SM = 7,
    MADS = 8,
};

constexpr std::array<ModelId, 8> kAllModels = {
    ModelId::GAB, ModelId::TRM, ModelId::OSW, ModelId::FX,
    ModelId::BET, ModelId::VG,  ModelId::SM,  ModelId::MADS,
};

using ParamVector = std::vector<double>;

// Per-parameter uniform prior intervals.
struct ParamBox {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t size() const { return lo.size(); }
    bool contains(const ParamVector& p, double slack = 0.0) const;
    ParamVector midpoint() const;
    double width(std::size_t n) const { return hi[n] - lo[n]; }
};

// Restricted water-activity domain for all analysis operations.
struct ActivityDomain {
    double lo = 0.05;
    double hi = 0.95;
};

struct PhysicalConstants {
    double rho2 = 1000.0;     // liquid water density [kg m^-3]
    double R1 = 462.0;        // water vapour gas constant [J kg^-1 K^-1]
    double T = 296.15;        // temperature [K]
    double K_slope = 0.2416;  // prescribed sorption-curve slope at a0
    double a0 = 0.0;          // anchor activity for the slope constraint

    double rho_R_T() const { return rho2 * R1 * T; }
};

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class ArityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class SingularityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

const char* model_name(ModelId m);
ModelId model_from_name(const std::string& name);  // throws std::invalid_argument
std::size_t param_count(ModelId m);

}  // namespace sorption
