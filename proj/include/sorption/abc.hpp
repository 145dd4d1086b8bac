#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sorption/dataset.hpp"
#include "sorption/models.hpp"
#include "sorption/rng.hpp"
#include "sorption/types.hpp"

namespace sorption {

struct Particle {
    ModelId model{};
    ParamVector p;
    double weight = 0.0;
    double dist = 0.0;  // distance at acceptance time
};

struct Population {
    int index = 0;
    double epsilon = 0.0;
    std::vector<Particle> particles;
    double acceptance_rate = 0.0;
    std::map<ModelId, int> model_counts;
    long proposals = 0;
};

struct AbcConfig {
    int n_populations = 22;
    int n_particles = 4000;
    double kappa0 = 0.01;
    double ladder_scale = 1.4;        // Morozov factor on sqrt(sum delta^2)
    double ladder_first_factor = 20.0;  // epsilon_1 = factor * epsilon_final
    std::uint64_t seed = 1;
    long max_attempts_per_particle = 1000000;
    std::vector<double> tolerances;   // explicit ladder; built from ds when empty
};

struct AbcResult {
    std::vector<Population> populations;
    bool stalled = false;
    std::string stall_info;
    std::vector<double> tolerances;
};

// Decreasing tolerance ladder ending at scale * sqrt(sum delta_i^2); geometric
// from first_factor * final down to final. Throws DataError when the dataset
// carries no uncertainties.
std::vector<double> tolerance_ladder(const SorptionDataset& ds, int n_eps, double scale = 1.4,
                                     double first_factor = 20.0);

// Componentwise uniform draw from the prior box.
ParamVector sample_prior(const ParamBox& box, Rng& rng);

// Random-walk move: p**_n = p*_n + kappa_n * U(-1, 1).
ParamVector perturb(const ParamVector& p_star, const std::vector<double>& kappa, Rng& rng);

// Uniform kernel density of the move from `from` to `to`; 0 outside support.
double kernel_density(const ParamVector& from, const ParamVector& to,
                      const std::vector<double>& kappa);

// Importance weight for a proposal in population i > 1: prior density over the
// kernel-smoothed previous population of the same model. First population: 1.
double weight_update(const ParamVector& p_star2, const std::vector<Particle>& prev_same_model,
                     const ParamBox& box, const std::vector<double>& kappa, bool first_population);

// Normalises weights within each model group; throws DataError when a
// represented model has all-zero weight.
void normalize_weights(Population& pop);

// Algorithm driver: simultaneous model selection + calibration over all eight
// models (or a subset), sequential and deterministic for a fixed seed.
AbcResult run_abc(const AbcConfig& cfg, const SorptionDataset& ds,
                  const std::vector<ModelId>& models = {kAllModels.begin(), kAllModels.end()});

struct PosteriorSummary {
    ModelId model{};
    int count = 0;
    double fraction = 0.0;
    ParamVector mean;
    ParamVector stddev;
};

std::vector<PosteriorSummary> posterior_summary(const Population& pop);

}  // namespace sorption
