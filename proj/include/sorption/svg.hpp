#pragma once

#include <string>
#include <vector>

namespace sorption::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool points_only = false;
};

struct Chart {
    std::string title, xlabel, ylabel;
    bool log_y = false;
    std::vector<Series> series;

    void add(std::string label, std::vector<double> x, std::vector<double> y,
             bool points_only = false);
    std::string render(int width = 720, int height = 480) const;
    void write(const std::string& path, int width = 720, int height = 480) const;
};

}  // namespace sorption::svg
