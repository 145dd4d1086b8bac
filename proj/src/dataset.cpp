#include "sorption/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sorption {

namespace {

std::string fmt_shortest(double v) {
    // shortest decimal form that round-trips a double
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

SorptionDataset SorptionDataset::restrict(double lo, double hi) const {
    SorptionDataset out;
    for (const auto& r : rows)
        if (r.activity >= lo && r.activity <= hi) out.rows.push_back(r);
    return out;
}

SorptionDataset SorptionDataset::analysis_rows(const ActivityDomain& dom) const {
    return restrict(dom.lo, dom.hi);
}

std::vector<double> SorptionDataset::activities() const {
    std::vector<double> a;
    a.reserve(rows.size());
    for (const auto& r : rows) a.push_back(r.activity);
    return a;
}

std::vector<double> SorptionDataset::moistures() const {
    std::vector<double> u;
    u.reserve(rows.size());
    for (const auto& r : rows) u.push_back(r.moisture);
    return u;
}

double SorptionDataset::sum_delta_sq() const {
    double s = 0.0;
    for (const auto& r : rows) s += r.delta_total * r.delta_total;
    return s;
}

double SorptionDataset::rms_delta() const {
    if (rows.empty()) return 0.0;
    return std::sqrt(sum_delta_sq() / static_cast<double>(rows.size()));
}

void SorptionDataset::validate() {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string where = "row " + std::to_string(i + 1) +
                                  " (a=" + fmt_shortest(r.activity) + ")";
        if (!std::isfinite(r.activity) || !std::isfinite(r.moisture) ||
            !std::isfinite(r.delta_total) || !std::isfinite(r.delta_random) ||
            !std::isfinite(r.delta_sys))
            throw DataError(where + ": non-finite value");
        if (r.activity < 0.0 || r.activity >= 1.0)
            throw DataError(where + ": activity outside [0, 1)");
        if (r.moisture < 0.0) throw DataError(where + ": negative moisture content");
        if (i > 0 && rows[i - 1].activity >= r.activity)
            throw DataError(where + ": activity column not strictly increasing");
        // Printed tables can carry rounded uncertainties that break the exact
        // decomposition; report, keep the row.
        if (r.delta_total < r.delta_random)
            warnings.push_back(where + ": total uncertainty below random component");
    }
}

SorptionDataset aggregate_replicates(const ReplicateSet& reps, double delta_sys) {
    const std::size_t n_e = reps.readings.size();
    if (n_e == 0) throw DataError("aggregate_replicates: no replicate series");
    for (std::size_t s = 0; s < n_e; ++s)
        if (reps.readings[s].size() != reps.activities.size())
            throw DataError("aggregate_replicates: series " + std::to_string(s + 1) +
                            " length does not match the activity grid");
    SorptionDataset out;
    if (n_e == 1)
        out.warnings.push_back("single replicate: random uncertainty is zero by construction");
    for (std::size_t i = 0; i < reps.activities.size(); ++i) {
        double mean = 0.0;
        for (std::size_t s = 0; s < n_e; ++s) mean += reps.readings[s][i];
        mean /= static_cast<double>(n_e);
        double var = 0.0;
        for (std::size_t s = 0; s < n_e; ++s) {
            const double d = reps.readings[s][i] - mean;
            var += d * d;
        }
        var /= static_cast<double>(n_e);  // population form, as printed
        const double d_rand = std::sqrt(var) / std::sqrt(static_cast<double>(n_e));
        SorptionRow row;
        row.activity = reps.activities[i];
        row.moisture = mean;
        row.delta_random = d_rand;
        row.delta_sys = delta_sys;
        row.delta_total = std::sqrt(d_rand * d_rand + delta_sys * delta_sys);
        out.rows.push_back(row);
    }
    out.validate();
    return out;
}

SorptionDataset load_dataset(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(origin + ": empty file");
    auto header = split_csv_line(line);
    const std::vector<std::string> expected = {"activity", "moisture", "uncertainty_total",
                                               "uncertainty_random", "uncertainty_systematic"};
    if (header.empty() || header[0] != "activity" || header.size() < 2 ||
        header[1] != "moisture")
        throw DataError(origin + ":1: header must start with 'activity,moisture'");
    for (std::size_t c = 0; c < header.size(); ++c)
        if (c < expected.size() && header[c] != expected[c])
            throw DataError(origin + ":1: unexpected column '" + header[c] + "'");

    SorptionDataset ds;
    if (header.size() < expected.size())
        ds.warnings.push_back(origin + ": missing uncertainty columns filled with zero");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw DataError(origin + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()));
        SorptionRow r;
        double* fields[5] = {&r.activity, &r.moisture, &r.delta_total, &r.delta_random,
                             &r.delta_sys};
        for (std::size_t c = 0; c < cells.size(); ++c) {
            char* end = nullptr;
            *fields[c] = std::strtod(cells[c].c_str(), &end);
            if (end == cells[c].c_str() || *end != '\0')
                throw DataError(origin + ":" + std::to_string(lineno) + ": column " +
                                std::to_string(c + 1) + ": cannot parse '" + cells[c] + "'");
        }
        ds.rows.push_back(r);
    }
    ds.validate();
    return ds;
}

SorptionDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    return load_dataset(in, path);
}

void save_dataset(const SorptionDataset& ds, std::ostream& out) {
    out << "activity,moisture,uncertainty_total,uncertainty_random,uncertainty_systematic\n";
    for (const auto& r : ds.rows)
        out << fmt_shortest(r.activity) << ',' << fmt_shortest(r.moisture) << ','
            << fmt_shortest(r.delta_total) << ',' << fmt_shortest(r.delta_random) << ','
            << fmt_shortest(r.delta_sys) << '\n';
}

void save_dataset(const SorptionDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write dataset file: " + path);
    save_dataset(ds, out);
}

const SorptionDataset& bundled_table1() {
    // Measured wood-fibre adsorption isotherm: best estimate over five
    // specimens with total/random uncertainty; systematic component 1e-7
    // (balance resolution over dry mass).
    static const SorptionDataset ds = [] {
        constexpr double d_sys = 1e-7;
        const double raw[21][4] = {
            {0.000, 0.0000, 0.0100, 0.0000}, {0.050, 0.0121, 0.0006, 0.0005},
            {0.100, 0.0208, 0.0009, 0.0008}, {0.150, 0.0276, 0.0012, 0.0011},
            {0.200, 0.0344, 0.0014, 0.0014}, {0.250, 0.0402, 0.0017, 0.0016},
            {0.300, 0.0468, 0.0019, 0.0019}, {0.350, 0.0527, 0.0022, 0.0021},
            {0.400, 0.0590, 0.0024, 0.0024}, {0.450, 0.0652, 0.0027, 0.0026},
            {0.500, 0.0720, 0.0029, 0.0029}, {0.550, 0.0795, 0.0032, 0.0032},
            {0.600, 0.0895, 0.0036, 0.0036}, {0.650, 0.1013, 0.0042, 0.0041},
            {0.700, 0.1203, 0.0050, 0.0048}, {0.750, 0.1531, 0.0064, 0.0061},
            {0.800, 0.1921, 0.0080, 0.0077}, {0.850, 0.2589, 0.0119, 0.0143},
            {0.881, 0.3568, 0.0186, 0.0120}, {0.900, 0.4647, 0.0250, 0.0186},
            {0.916, 0.8113, 0.0428, 0.0325},
        };
        SorptionDataset t;
        for (const auto& r : raw)
            t.rows.push_back(SorptionRow{r[0], r[1], r[2], r[3], d_sys});
        t.validate();
        return t;
    }();
    return ds;
}

}  // namespace sorption
