// Batch front end: fit / sensitivity / abc / sgi / report subcommands.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 ABC stall (partial artifacts are still written).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sorption/abc.hpp"
#include "sorption/dataset.hpp"
#include "sorption/estimation.hpp"
#include "sorption/report.hpp"
#include "sorption/sensitivity.hpp"
#include "sorption/sgi.hpp"

namespace fs = std::filesystem;
using namespace sorption;

namespace {

struct GlobalOpts {
    std::string data = "bundled:table1";
    std::string out;
    std::string config_path;
    std::vector<std::string> models;
    std::uint64_t seed = 1;
    bool seed_given = false;
    bool plots = false;
};

SorptionDataset load_data(const GlobalOpts& g) {
    if (g.data == "bundled:table1") return bundled_table1();
    return load_dataset(g.data);
}

std::vector<ModelId> resolve_models(const GlobalOpts& g) {
    if (g.models.empty()) return {kAllModels.begin(), kAllModels.end()};
    std::vector<ModelId> out;
    for (const auto& name : g.models) out.push_back(model_from_name(name));
    return out;
}

std::string out_dir(const GlobalOpts& g) {
    if (!g.out.empty()) return g.out;
    if (const char* env = std::getenv("SORPTIONLAB_OUT")) return env;
    return "sorption_out";
}

// Flat key=value config file; CLI flags override file values.
void apply_config_file(const std::string& path, GlobalOpts& g, AbcConfig& abc, int& sgi_trials) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "data") g.data = val;
        else if (key == "out") g.out = val;
        else if (key == "seed") { g.seed = std::stoull(val); g.seed_given = true; }
        else if (key == "plots") g.plots = (val == "1" || val == "true");
        else if (key == "models") {
            g.models.clear();
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ',')) g.models.push_back(tok);
        }
        else if (key == "populations") abc.n_populations = std::stoi(val);
        else if (key == "particles") abc.n_particles = std::stoi(val);
        else if (key == "kappa0") abc.kappa0 = std::stod(val);
        else if (key == "sgi_trials") sgi_trials = std::stoi(val);
        else throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                         ": unknown key '" + key + "'");
    }
}

std::vector<std::string> run_fit(const GlobalOpts& g, const std::string& dir) {
    const SorptionDataset ds = load_data(g);
    const SorptionDataset analysis = ds.analysis_rows();
    const auto models = resolve_models(g);
    std::vector<FitResult> results;
    for (ModelId m : models) results.push_back(fit_least_squares(m, ds, prior_box(m)));
    fs::create_directories(dir);
    std::vector<std::string> artifacts;
    write_fit_results_csv(dir + "/fit_results.csv", results);
    artifacts.push_back("fit_results.csv");
    for (const auto& r : results) {
        const std::string name = std::string("residuals_") + model_name(r.model) + ".csv";
        write_residuals_csv(dir + "/" + name, r.model, r.p_est, analysis);
        artifacts.push_back(name);
    }
    if (g.plots) {
        write_fit_plots(dir, results, analysis);
        artifacts.push_back("fit_curves.svg");
    }
    std::cout << format_fit_table(results);
    return artifacts;
}

std::vector<std::string> run_sensitivity(const GlobalOpts& g, const std::string& dir) {
    const auto models = resolve_models(g);
    std::vector<SensitivityReport> reps;
    for (ModelId m : models) {
        const ParamBox box = prior_box(m);
        reps.push_back(sensitivity_report(m, box, box.midpoint()));
    }
    fs::create_directories(dir);
    std::vector<std::string> artifacts;
    write_gamma_total_csv(dir + "/gamma_total.csv", reps);
    artifacts.push_back("gamma_total.csv");
    for (const auto& rep : reps) {
        const std::string name = std::string("gamma_curves_") + model_name(rep.model) + ".csv";
        write_gamma_curves_csv(dir + "/" + name, rep);
        artifacts.push_back(name);
    }
    if (g.plots) {
        write_sensitivity_plots(dir, reps);
        for (const auto& rep : reps)
            artifacts.push_back(std::string("gamma_") + model_name(rep.model) + ".svg");
    }
    for (const auto& rep : reps) {
        std::cout << model_name(rep.model) << " gamma_total:";
        for (double v : rep.total.gamma) std::cout << ' ' << format_double(v);
        std::cout << '\n';
    }
    return artifacts;
}

std::vector<std::string> run_abc_cmd(const GlobalOpts& g, AbcConfig cfg,
                                     const std::string& dir, int& exit_code) {
    if (!g.seed_given)
        throw std::invalid_argument("abc requires --seed for reproducibility");
    cfg.seed = g.seed;
    const SorptionDataset ds = load_data(g);
    const auto models = resolve_models(g);
    const AbcResult res = run_abc(cfg, ds, models);
    fs::create_directories(dir);
    std::vector<std::string> artifacts;
    write_abc_manifest_json(dir + "/abc_manifest.json", cfg, res);
    write_abc_populations_csv(dir + "/model_counts.csv", res, models);
    artifacts.insert(artifacts.end(), {"abc_manifest.json", "model_counts.csv"});
    if (!res.populations.empty()) {
        write_posterior_csv(dir + "/posterior_particles.csv", res.populations.back());
        write_posterior_summary_csv(dir + "/posterior_summary.csv", res.populations.back());
        artifacts.insert(artifacts.end(),
                         {"posterior_particles.csv", "posterior_summary.csv"});
    }
    if (g.plots) {
        write_abc_plots(dir, res, models);
        artifacts.insert(artifacts.end(),
                         {"selection_evolution.svg", "tolerance_acceptance.svg"});
    }
    if (res.stalled) {
        std::cerr << "abc: stalled: " << res.stall_info << " (partial artifacts written)\n";
        exit_code = 4;
    } else {
        for (const auto& s : posterior_summary(res.populations.back())) {
            std::cout << model_name(s.model) << ": " << s.count << " particles ("
                      << format_double(100.0 * s.fraction) << "%)\n";
        }
    }
    return artifacts;
}

std::vector<std::string> run_sgi(const GlobalOpts& g, SgiOptions opts, bool with_control,
                                 const std::string& dir) {
    opts.seed = g.seed;
    const auto models = resolve_models(g);
    std::vector<SgiReport> reports;
    for (ModelId m : models) reports.push_back(sgi_falsify(model_family(m), opts));
    if (with_control) reports.push_back(sgi_falsify(planted_non_sgi_family(), opts));
    fs::create_directories(dir);
    write_sgi_csv(dir + "/sgi_summary.csv", reports);
    for (const auto& r : reports)
        std::cout << r.family << ": "
                  << (r.counterexample ? "counterexample" : "no-counterexample") << '\n';
    return {"sgi_summary.csv"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sorption isotherm model fitting, identifiability analysis and "
                 "Bayesian model selection"};
    app.require_subcommand(1);

    GlobalOpts g;
    AbcConfig abc_cfg;
    SgiOptions sgi_opts;
    bool sgi_control = false;

    app.add_option("--data", g.data, "dataset CSV path or 'bundled:table1'");
    app.add_option("--out", g.out, "output directory (default $SORPTIONLAB_OUT or ./sorption_out)");
    app.add_option("--models", g.models, "subset of models (names, comma or repeated)")
        ->delimiter(',');
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed");
    app.add_flag("--plots", g.plots, "emit SVG plots");
    app.add_option("--config", g.config_path, "flat key=value config file");

    auto* fit = app.add_subcommand("fit", "least-squares parameter estimation (Table-4 style)");
    auto* sens = app.add_subcommand("sensitivity", "derivative-based identifiability (Table-3 style)");
    auto* abc = app.add_subcommand("abc", "ABC-SMC model selection and calibration");
    abc->add_option("--populations", abc_cfg.n_populations, "number of tolerance populations");
    abc->add_option("--particles", abc_cfg.n_particles, "particles per population");
    abc->add_option("--kappa0", abc_cfg.kappa0, "perturbation kernel scale");
    auto* sgi = app.add_subcommand("sgi", "structural identifiability falsification");
    sgi->add_option("--trials", sgi_opts.trials, "random falsification trials per model");
    sgi->add_option("--curve-tol", sgi_opts.curve_tol, "curve indistinguishability tolerance");
    sgi->add_option("--param-tol", sgi_opts.param_tol, "relative parameter separation");
    sgi->add_flag("--control", sgi_control, "include the planted non-identifiable control");
    auto* report = app.add_subcommand("report", "run everything and write an index page");

    CLI11_PARSE(app, argc, argv);

    try {
        int sgi_trials_cfg = -1;
        if (!g.config_path.empty()) apply_config_file(g.config_path, g, abc_cfg, sgi_trials_cfg);
        if (sgi_trials_cfg > 0 && sgi->count("--trials") == 0) sgi_opts.trials = sgi_trials_cfg;
        g.seed_given = g.seed_given || seed_opt->count() > 0;
        resolve_models(g);  // validate names before touching the filesystem
        if (sgi->parsed() && sgi_opts.trials < 1)
            throw std::invalid_argument("sgi: trials must be >= 1");
        if (abc_cfg.n_populations < 1 || abc_cfg.n_particles < 1)
            throw std::invalid_argument("abc: populations and particles must be >= 1");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    const std::string dir = out_dir(g);
    int exit_code = 0;
    try {
        if (fit->parsed()) {
            run_fit(g, dir);
        } else if (sens->parsed()) {
            run_sensitivity(g, dir);
        } else if (abc->parsed()) {
            run_abc_cmd(g, abc_cfg, dir, exit_code);
        } else if (sgi->parsed()) {
            run_sgi(g, sgi_opts, sgi_control, dir);
        } else if (report->parsed()) {
            if (!g.seed_given)
                throw std::invalid_argument("report includes abc and requires --seed");
            std::vector<std::string> artifacts;
            auto merge = [&](std::vector<std::string> v) {
                artifacts.insert(artifacts.end(), v.begin(), v.end());
            };
            merge(run_fit(g, dir));
            merge(run_sensitivity(g, dir));
            merge(run_abc_cmd(g, abc_cfg, dir, exit_code));
            SgiOptions quick = sgi_opts;
            merge(run_sgi(g, quick, true, dir));
            write_index_html(dir, artifacts);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return exit_code;
}
