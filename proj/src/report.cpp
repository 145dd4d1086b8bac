#include "sorption/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sorption/svg.hpp"
#include <json.hpp>

namespace sorption {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write artifact: " + path);
    return out;
}

std::string eta_cell(double eta) {
    if (!std::isfinite(eta) || eta > 1.0) return ">1";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", eta);
    return buf;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void write_fit_results_csv(const std::string& path, const std::vector<FitResult>& results) {
    auto out = open_out(path);
    out << "model,p1,p2,p3,p4,eta1,eta2,eta3,eta4,distance,sse\n";
    for (const auto& r : results) {
        out << model_name(r.model);
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < r.p_est.size() ? format_double(r.p_est[n]) : "");
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < r.eta.size() ? format_double(r.eta[n]) : "");
        out << ',' << format_double(r.distance) << ',' << format_double(r.sse) << '\n';
    }
}

void write_residuals_csv(const std::string& path, ModelId m, const ParamVector& p,
                         const SorptionDataset& analysis_rows) {
    auto out = open_out(path);
    out << "activity,residual\n";
    for (const auto& [a, r] : residual_profile(m, p, analysis_rows))
        out << format_double(a) << ',' << format_double(r) << '\n';
}

void write_gamma_total_csv(const std::string& path,
                           const std::vector<SensitivityReport>& reps) {
    auto out = open_out(path);
    out << "model,gamma1,gamma2,gamma3,gamma4,window_hi\n";
    for (const auto& rep : reps) {
        out << model_name(rep.model);
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < rep.total.gamma.size() ? format_double(rep.total.gamma[n]) : "");
        out << ',' << format_double(rep.total.window_hi) << '\n';
    }
}

void write_gamma_curves_csv(const std::string& path, const SensitivityReport& rep) {
    auto out = open_out(path);
    out << "a";
    for (std::size_t n = 0; n < rep.gamma.size(); ++n) out << ",gamma" << n + 1;
    out << '\n';
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        out << format_double(rep.grid[i]);
        for (std::size_t n = 0; n < rep.gamma.size(); ++n)
            out << ',' << format_double(rep.gamma[n][i]);
        out << '\n';
    }
}

void write_abc_manifest_json(const std::string& path, const AbcConfig& cfg,
                             const AbcResult& res) {
    nlohmann::ordered_json j;
    j["populations"] = cfg.n_populations;
    j["particles"] = cfg.n_particles;
    j["kappa0"] = cfg.kappa0;
    j["ladder_scale"] = cfg.ladder_scale;
    j["ladder_first_factor"] = cfg.ladder_first_factor;
    j["seed"] = cfg.seed;
    j["max_attempts_per_particle"] = cfg.max_attempts_per_particle;
    j["stalled"] = res.stalled;
    if (res.stalled) j["stall_info"] = res.stall_info;
    j["tolerances"] = res.tolerances;
    nlohmann::ordered_json pops = nlohmann::ordered_json::array();
    for (const auto& pop : res.populations) {
        nlohmann::ordered_json jp;
        jp["index"] = pop.index;
        jp["epsilon"] = pop.epsilon;
        jp["acceptance_rate"] = pop.acceptance_rate;
        jp["proposals"] = pop.proposals;
        nlohmann::ordered_json counts;
        for (const auto& [m, c] : pop.model_counts) counts[model_name(m)] = c;
        jp["model_counts"] = counts;
        pops.push_back(jp);
    }
    j["population_history"] = pops;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_abc_populations_csv(const std::string& path, const AbcResult& res,
                               const std::vector<ModelId>& models) {
    auto out = open_out(path);
    out << "population,epsilon,acceptance_rate";
    for (ModelId m : models) out << ',' << model_name(m);
    out << '\n';
    for (const auto& pop : res.populations) {
        out << pop.index << ',' << format_double(pop.epsilon) << ','
            << format_double(pop.acceptance_rate);
        for (ModelId m : models) {
            auto it = pop.model_counts.find(m);
            out << ',' << (it == pop.model_counts.end() ? 0 : it->second);
        }
        out << '\n';
    }
}

void write_posterior_csv(const std::string& path, const Population& final_pop) {
    auto out = open_out(path);
    out << "model,p1,p2,p3,p4,weight,distance\n";
    for (const auto& q : final_pop.particles) {
        out << model_name(q.model);
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < q.p.size() ? format_double(q.p[n]) : "");
        out << ',' << format_double(q.weight) << ',' << format_double(q.dist) << '\n';
    }
}

void write_posterior_summary_csv(const std::string& path, const Population& final_pop) {
    auto out = open_out(path);
    out << "model,count,fraction,mean1,mean2,mean3,mean4,std1,std2,std3,std4\n";
    for (const auto& s : posterior_summary(final_pop)) {
        out << model_name(s.model) << ',' << s.count << ',' << format_double(s.fraction);
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < s.mean.size() ? format_double(s.mean[n]) : "");
        for (std::size_t n = 0; n < 4; ++n)
            out << ',' << (n < s.stddev.size() ? format_double(s.stddev[n]) : "");
        out << '\n';
    }
}

void write_sgi_csv(const std::string& path, const std::vector<SgiReport>& reports) {
    auto out = open_out(path);
    out << "family,trials,verdict,best_curve_distance,param_distance_at_best,identity_failures,"
           "stalls\n";
    for (const auto& r : reports) {
        out << r.family << ',' << r.trials << ','
            << (r.counterexample ? "counterexample" : "no-counterexample") << ','
            << format_double(r.worst_curve_distance) << ','
            << format_double(r.worst_param_distance) << ',' << r.identity_failures << ','
            << r.stalls << '\n';
    }
}

std::string format_fit_table(const std::vector<FitResult>& results) {
    std::ostringstream o;
    o << "model   p1         p2         p3         p4         eta1  eta2  eta3  eta4  sse\n";
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof line, "%-7s", model_name(r.model));
        o << line;
        for (std::size_t n = 0; n < 4; ++n) {
            if (n < r.p_est.size())
                std::snprintf(line, sizeof line, " %-10.4g", r.p_est[n]);
            else
                std::snprintf(line, sizeof line, " %-10s", "-");
            o << line;
        }
        for (std::size_t n = 0; n < 4; ++n) {
            std::snprintf(line, sizeof line, " %-5s",
                          n < r.eta.size() ? eta_cell(r.eta[n]).c_str() : "-");
            o << line;
        }
        std::snprintf(line, sizeof line, " %.3g\n", r.sse);
        o << line;
    }
    return o.str();
}

void write_fit_plots(const std::string& dir, const std::vector<FitResult>& results,
                     const SorptionDataset& analysis_rows) {
    svg::Chart chart;
    chart.title = "Fitted sorption isotherms";
    chart.xlabel = "water activity";
    chart.ylabel = "moisture content";
    chart.add("measured", analysis_rows.activities(), analysis_rows.moistures(), true);
    for (const auto& r : results) {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 120; ++i) {
            const double a = 0.05 + (0.916 - 0.05) * i / 120.0;
            try {
                ys.push_back(eval_model(r.model, r.p_est, a));
                xs.push_back(a);
            } catch (const std::exception&) {
            }
        }
        chart.add(model_name(r.model), xs, ys);
    }
    chart.write(dir + "/fit_curves.svg");
}

void write_sensitivity_plots(const std::string& dir,
                             const std::vector<SensitivityReport>& reps) {
    for (const auto& rep : reps) {
        svg::Chart chart;
        chart.title = std::string("Sensitivity profile: ") + model_name(rep.model);
        chart.xlabel = "water activity";
        chart.ylabel = "gamma";
        for (std::size_t n = 0; n < rep.gamma.size(); ++n)
            chart.add("gamma" + std::to_string(n + 1), rep.grid, rep.gamma[n]);
        chart.write(dir + "/gamma_" + model_name(rep.model) + ".svg");
    }
}

void write_abc_plots(const std::string& dir, const AbcResult& res,
                     const std::vector<ModelId>& models) {
    svg::Chart counts;
    counts.title = "Model selection by population";
    counts.xlabel = "population";
    counts.ylabel = "particles";
    for (ModelId m : models) {
        std::vector<double> xs, ys;
        for (const auto& pop : res.populations) {
            xs.push_back(pop.index);
            auto it = pop.model_counts.find(m);
            ys.push_back(it == pop.model_counts.end() ? 0.0 : it->second);
        }
        counts.add(model_name(m), xs, ys);
    }
    counts.write(dir + "/selection_evolution.svg");

    svg::Chart tol;
    tol.title = "Tolerance and acceptance rate";
    tol.xlabel = "population";
    tol.ylabel = "value (log10)";
    tol.log_y = true;
    std::vector<double> xs, eps, tau;
    for (const auto& pop : res.populations) {
        xs.push_back(pop.index);
        eps.push_back(pop.epsilon);
        tau.push_back(std::max(pop.acceptance_rate, 1e-6));
    }
    tol.add("epsilon", xs, eps);
    tol.add("acceptance", xs, tau);
    tol.write(dir + "/tolerance_acceptance.svg");
}

void write_index_html(const std::string& dir, const std::vector<std::string>& artifacts) {
    auto out = open_out(dir + "/index.html");
    out << "<!doctype html><html><head><meta charset='utf-8'>"
        << "<title>sorption analysis report</title></head><body>\n"
        << "<h1>Sorption model analysis</h1>\n<ul>\n";
    for (const auto& a : artifacts) out << "<li><a href='" << a << "'>" << a << "</a></li>\n";
    out << "</ul>\n</body></html>\n";
}

}  // namespace sorption
