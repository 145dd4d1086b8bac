#pragma once

#include <string>
#include <vector>

#include "sorption/abc.hpp"
#include "sorption/estimation.hpp"
#include "sorption/sensitivity.hpp"
#include "sorption/sgi.hpp"

namespace sorption {

// CSV / JSON / SVG artifact emitters used by the command-line front end.
// All emitters produce byte-stable output for identical inputs.

void write_fit_results_csv(const std::string& path, const std::vector<FitResult>& results);
void write_residuals_csv(const std::string& path, ModelId m, const ParamVector& p,
                         const SorptionDataset& analysis_rows);

void write_gamma_total_csv(const std::string& path, const std::vector<SensitivityReport>& reps);
void write_gamma_curves_csv(const std::string& path, const SensitivityReport& rep);

void write_abc_manifest_json(const std::string& path, const AbcConfig& cfg,
                             const AbcResult& res);
void write_abc_populations_csv(const std::string& path, const AbcResult& res,
                               const std::vector<ModelId>& models);
void write_posterior_csv(const std::string& path, const Population& final_pop);
void write_posterior_summary_csv(const std::string& path, const Population& final_pop);

void write_sgi_csv(const std::string& path, const std::vector<SgiReport>& reports);

// Table-4-style human-readable text (eta entries above 1 print as ">1").
std::string format_fit_table(const std::vector<FitResult>& results);

void write_fit_plots(const std::string& dir, const std::vector<FitResult>& results,
                     const SorptionDataset& analysis_rows);
void write_sensitivity_plots(const std::string& dir,
                             const std::vector<SensitivityReport>& reps);
void write_abc_plots(const std::string& dir, const AbcResult& res,
                     const std::vector<ModelId>& models);

void write_index_html(const std::string& dir, const std::vector<std::string>& artifacts);

std::string format_double(double v);  // stable shortest round-trip formatting

}  // namespace sorption
