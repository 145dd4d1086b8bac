#include "sorption/abc.hpp"

#include <algorithm>
#include <cmath>

#include "sorption/estimation.hpp"

namespace sorption {

std::vector<double> tolerance_ladder(const SorptionDataset& ds, int n_eps, double scale,
                                     double first_factor) {
    if (n_eps < 1) throw DataError("tolerance_ladder: need at least one population");
    const double ssq = ds.sum_delta_sq();
    if (ssq <= 0.0)
        throw DataError("tolerance_ladder: dataset carries no measurement uncertainties");
    const double eps_final = scale * std::sqrt(ssq);
    std::vector<double> eps(n_eps);
    if (n_eps == 1) {
        eps[0] = eps_final;
        return eps;
    }
    const double eps_first = first_factor * eps_final;
    for (int i = 0; i < n_eps; ++i) {
        const double t = static_cast<double>(i) / (n_eps - 1);
        eps[i] = eps_first * std::pow(eps_final / eps_first, t);
    }
    return eps;
}

ParamVector sample_prior(const ParamBox& box, Rng& rng) {
    ParamVector p(box.size());
    for (std::size_t n = 0; n < box.size(); ++n) p[n] = rng.uniform(box.lo[n], box.hi[n]);
    return p;
}

ParamVector perturb(const ParamVector& p_star, const std::vector<double>& kappa, Rng& rng) {
    ParamVector p(p_star.size());
    for (std::size_t n = 0; n < p_star.size(); ++n)
        p[n] = p_star[n] + kappa[n] * (2.0 * rng.uniform() - 1.0);
    return p;
}

double kernel_density(const ParamVector& from, const ParamVector& to,
                      const std::vector<double>& kappa) {
    double dens = 1.0;
    for (std::size_t n = 0; n < from.size(); ++n) {
        if (std::fabs(to[n] - from[n]) > kappa[n]) return 0.0;
        dens /= 2.0 * kappa[n];
    }
    return dens;
}

namespace {

double prior_density(const ParamBox& box, const ParamVector& p) {
    if (!box.contains(p)) return 0.0;
    double dens = 1.0;
    for (std::size_t n = 0; n < box.size(); ++n) dens /= box.width(n);
    return dens;
}

std::vector<double> kernel_scales(const std::vector<Particle>& prev_same_model, double kappa0,
                                  std::size_t np) {
    // kappa_n = kappa0 * max |p_n| over the previous accepted particles.
    std::vector<double> kappa(np, 0.0);
    for (const auto& q : prev_same_model)
        for (std::size_t n = 0; n < np; ++n) kappa[n] = std::max(kappa[n], std::fabs(q.p[n]));
    for (auto& k : kappa) k = std::max(k * kappa0, 1e-300);
    return kappa;
}

}  // namespace

double weight_update(const ParamVector& p_star2, const std::vector<Particle>& prev_same_model,
                     const ParamBox& box, const std::vector<double>& kappa,
                     bool first_population) {
    if (first_population) return 1.0;
    const double pi = prior_density(box, p_star2);
    if (pi == 0.0) return 0.0;
    double denom = 0.0;
    for (const auto& q : prev_same_model)
        denom += q.weight * kernel_density(q.p, p_star2, kappa);
    if (denom <= 0.0) return 0.0;
    return pi / denom;
}

void normalize_weights(Population& pop) {
    std::map<ModelId, double> totals;
    for (const auto& q : pop.particles) totals[q.model] += q.weight;
    for (const auto& [m, tot] : totals)
        if (tot <= 0.0)
            throw DataError(std::string("normalize_weights: zero total weight for ") +
                            model_name(m));
    for (auto& q : pop.particles) q.weight /= totals[q.model];
}

AbcResult run_abc(const AbcConfig& cfg, const SorptionDataset& ds,
                  const std::vector<ModelId>& models) {
    if (cfg.n_populations < 1 || cfg.n_particles < 1)
        throw DataError("run_abc: populations and particles must be >= 1");
    const SorptionDataset analysis = ds.analysis_rows();

    AbcResult res;
    res.tolerances = cfg.tolerances.empty()
                         ? tolerance_ladder(analysis, cfg.n_populations, cfg.ladder_scale,
                                            cfg.ladder_first_factor)
                         : cfg.tolerances;
    for (std::size_t i = 1; i < res.tolerances.size(); ++i)
        if (res.tolerances[i] >= res.tolerances[i - 1])
            throw DataError("run_abc: tolerance ladder must be strictly decreasing");

    std::map<ModelId, ParamBox> boxes;
    for (ModelId m : models) boxes[m] = prior_box(m);

    Rng rng(cfg.seed);
    std::vector<Particle> prev;  // previous population, weights normalised per model
    std::map<ModelId, std::vector<Particle>> prev_by_model;
    std::map<ModelId, std::vector<double>> kappa_by_model;
    std::map<ModelId, std::vector<double>> cumw_by_model;  // per-model weight cumsums

    for (int i = 0; i < cfg.n_populations; ++i) {
        Population pop;
        pop.index = i + 1;
        pop.epsilon = res.tolerances[i];
        const bool first = (i == 0);

        if (!first) {
            prev_by_model.clear();
            kappa_by_model.clear();
            cumw_by_model.clear();
            for (const auto& q : prev) prev_by_model[q.model].push_back(q);
            for (auto& [m, vec] : prev_by_model) {
                kappa_by_model[m] = kernel_scales(vec, cfg.kappa0, vec.front().p.size());
                std::vector<double> cum;
                cum.reserve(vec.size());
                double acc = 0.0;
                for (const auto& q : vec) {
                    acc += q.weight;
                    cum.push_back(acc);
                }
                cumw_by_model[m] = std::move(cum);
            }
        }

        for (int j = 0; j < cfg.n_particles; ++j) {
            long attempts = 0;
            for (;;) {
                if (++attempts > cfg.max_attempts_per_particle) {
                    res.stalled = true;
                    res.stall_info = "population " + std::to_string(pop.index) + ", particle " +
                                     std::to_string(j + 1) + ": no acceptance within " +
                                     std::to_string(cfg.max_attempts_per_particle) +
                                     " attempts";
                    pop.proposals += attempts - 1;
                    pop.acceptance_rate =
                        pop.proposals > 0
                            ? static_cast<double>(pop.particles.size()) / pop.proposals
                            : 0.0;
                    for (const auto& q : pop.particles) pop.model_counts[q.model]++;
                    res.populations.push_back(std::move(pop));
                    return res;
                }
                // Step 1: sample the model from its (uniform) prior.
                const ModelId m = models[rng.uniform_index(models.size())];
                const ParamBox& box = boxes[m];

                // Step 2: candidate parameter.
                ParamVector p2;
                if (first) {
                    p2 = sample_prior(box, rng);
                } else {
                    auto it = prev_by_model.find(m);
                    if (it == prev_by_model.end()) continue;  // model extinct
                    const auto& vec = it->second;
                    const auto& cum = cumw_by_model[m];
                    const double u = rng.uniform() * cum.back();
                    const std::size_t pick = static_cast<std::size_t>(
                        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
                    p2 = perturb(vec[std::min(pick, vec.size() - 1)].p, kappa_by_model[m], rng);
                    if (prior_density(box, p2) == 0.0) continue;  // outside the prior support
                }

                // Step 3: direct problem + distance test.
                double d;
                try {
                    d = distance(m, p2, analysis);
                } catch (const std::exception&) {
                    continue;
                }
                if (!(d <= pop.epsilon)) continue;

                Particle q;
                q.model = m;
                q.p = std::move(p2);
                q.dist = d;
                q.weight = first ? 1.0
                                 : weight_update(q.p, prev_by_model[m], box, kappa_by_model[m],
                                                 false);
                if (!first && q.weight <= 0.0) continue;
                pop.particles.push_back(std::move(q));
                pop.proposals += attempts;
                break;
            }
        }

        normalize_weights(pop);
        pop.acceptance_rate = static_cast<double>(cfg.n_particles) / pop.proposals;
        for (const auto& q : pop.particles) pop.model_counts[q.model]++;
        prev = pop.particles;
        res.populations.push_back(std::move(pop));
    }
    return res;
}

std::vector<PosteriorSummary> posterior_summary(const Population& pop) {
    std::map<ModelId, std::vector<const Particle*>> groups;
    for (const auto& q : pop.particles) groups[q.model].push_back(&q);
    std::vector<PosteriorSummary> out;
    for (const auto& [m, vec] : groups) {
        PosteriorSummary s;
        s.model = m;
        s.count = static_cast<int>(vec.size());
        s.fraction = static_cast<double>(vec.size()) / pop.particles.size();
        const std::size_t np = vec.front()->p.size();
        s.mean.assign(np, 0.0);
        s.stddev.assign(np, 0.0);
        double wtot = 0.0;
        for (const auto* q : vec) wtot += q->weight;
        for (const auto* q : vec)
            for (std::size_t n = 0; n < np; ++n) s.mean[n] += q->weight * q->p[n];
        for (auto& v : s.mean) v /= wtot;
        for (const auto* q : vec)
            for (std::size_t n = 0; n < np; ++n) {
                const double d = q->p[n] - s.mean[n];
                s.stddev[n] += q->weight * d * d;
            }
        for (auto& v : s.stddev) v = std::sqrt(v / wtot);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const PosteriorSummary& a, const PosteriorSummary& b) {
                  return a.count > b.count;
              });
    return out;
}

}  // namespace sorption
