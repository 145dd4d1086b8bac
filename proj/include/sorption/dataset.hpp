#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sorption/types.hpp"

namespace sorption {

struct SorptionRow {
    double activity = 0.0;
    double moisture = 0.0;
    double delta_total = 0.0;
    double delta_random = 0.0;
    double delta_sys = 0.0;
};

struct SorptionDataset {
    std::vector<SorptionRow> rows;
    std::vector<std::string> warnings;  // non-fatal validation notes

    std::size_t size() const { return rows.size(); }

    // Rows with lo <= activity <= hi, in order.
    SorptionDataset restrict(double lo, double hi) const;

    // Rows inside the analysis domain [0.05, 0.95].
    SorptionDataset analysis_rows(const ActivityDomain& dom = ActivityDomain{}) const;

    std::vector<double> activities() const;
    std::vector<double> moistures() const;

    double sum_delta_sq() const;   // sum of squared total uncertainties
    double rms_delta() const;      // sqrt(mean delta^2)

    // Throws DataError on hard invariant violations; appends warnings otherwise.
    void validate();
};

struct ReplicateSet {
    std::vector<double> activities;                // shared grid
    std::vector<std::vector<double>> readings;     // one series per specimen
};

// Best estimate + uncertainty decomposition across specimens.
SorptionDataset aggregate_replicates(const ReplicateSet& reps, double delta_sys = 1e-7);

// CSV schema: activity,moisture,uncertainty_total,uncertainty_random,uncertainty_systematic
SorptionDataset load_dataset(const std::string& path);
SorptionDataset load_dataset(std::istream& in, const std::string& origin = "<stream>");
void save_dataset(const SorptionDataset& ds, const std::string& path);
void save_dataset(const SorptionDataset& ds, std::ostream& out);

// The 21-row measured isotherm shipped with the library.
const SorptionDataset& bundled_table1();

}  // namespace sorption
