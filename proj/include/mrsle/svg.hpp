#pragma once

// Minimal self-contained SVG plotting: polyline series over an auto-scaled
// frame with axes and tick labels. No external plotting dependency.

#include <filesystem>
#include <string>
#include <vector>

#include "mrsle/slit_map.hpp"

namespace mrsle {

struct SvgSeries {
    std::vector<double> x, y;
    std::string color = "#1f6feb";
    bool dashed = false;
    std::string label;
};

class SvgPlot {
  public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel);
    void add(SvgSeries s);
    void add_line(double x0, double y0, double x1, double y1, std::string color,
                  std::string label = "", bool dashed = true);
    void write(const std::filesystem::path& p) const;

  private:
    std::string title_, xlabel_, ylabel_;
    std::vector<SvgSeries> series_;
};

// Curve traces in the unit disk.
void write_disk_plot(const std::filesystem::path& p, const std::string& title,
                     const std::vector<std::vector<cplx>>& curves);

}  // namespace mrsle
