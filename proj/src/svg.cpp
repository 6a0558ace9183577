#include "mrsle/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mrsle {

namespace {
constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << v;
    return os.str();
}
}  // namespace

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel)
    : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

void SvgPlot::add(SvgSeries s) { series_.push_back(std::move(s)); }

void SvgPlot::add_line(double x0, double y0, double x1, double y1, std::string color,
                       std::string label, bool dashed) {
    SvgSeries s;
    s.x = {x0, x1};
    s.y = {y0, y1};
    s.color = std::move(color);
    s.dashed = dashed;
    s.label = std::move(label);
    series_.push_back(std::move(s));
}

void SvgPlot::write(const std::filesystem::path& p) const {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series_)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmin > xmax) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    const double padx = 0.04 * (xmax - xmin), pady = 0.06 * (ymax - ymin);
    xmin -= padx;
    xmax += padx;
    ymin -= pady;
    ymax += pady;
    auto X = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto Y = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title_
       << "</text>\n";
    // frame + ticks
    os << "<rect x='" << ML << "' y='" << MT << "' width='" << W - ML - MR << "' height='"
       << H - MT - MB << "' fill='none' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = xmin + (xmax - xmin) * i / 5.0;
        const double y = ymin + (ymax - ymin) * i / 5.0;
        os << "<line x1='" << X(x) << "' y1='" << H - MB << "' x2='" << X(x) << "' y2='"
           << H - MB + 5 << "' stroke='black'/>\n";
        os << "<text x='" << X(x) << "' y='" << H - MB + 18
           << "' text-anchor='middle' font-size='11'>" << fmt(x) << "</text>\n";
        os << "<line x1='" << ML - 5 << "' y1='" << Y(y) << "' x2='" << ML << "' y2='" << Y(y)
           << "' stroke='black'/>\n";
        os << "<text x='" << ML - 8 << "' y='" << Y(y) + 4
           << "' text-anchor='end' font-size='11'>" << fmt(y) << "</text>\n";
    }
    os << "<text x='" << W / 2 << "' y='" << H - 12 << "' text-anchor='middle' font-size='13'>"
       << xlabel_ << "</text>\n";
    os << "<text x='16' y='" << H / 2 << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
       << H / 2 << ")'>" << ylabel_ << "</text>\n";

    double ly = MT + 14;
    for (const auto& s : series_) {
        os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5'";
        if (s.dashed) os << " stroke-dasharray='6,4'";
        os << " points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << X(s.x[i]) << "," << Y(s.y[i]) << " ";
        }
        os << "'/>\n";
        if (!s.label.empty()) {
            os << "<line x1='" << W - MR - 150 << "' y1='" << ly << "' x2='" << W - MR - 120
               << "' y2='" << ly << "' stroke='" << s.color << "'"
               << (s.dashed ? " stroke-dasharray='6,4'" : "") << "/>\n";
            os << "<text x='" << W - MR - 114 << "' y='" << ly + 4 << "' font-size='11'>"
               << s.label << "</text>\n";
            ly += 16;
        }
    }
    os << "</svg>\n";

    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << os.str();
}

void write_disk_plot(const std::filesystem::path& p, const std::string& title,
                     const std::vector<std::vector<cplx>>& curves) {
    const double S = 480, C = S / 2, R = S / 2 - 10;
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << S << "' height='" << S + 30
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << C << "' y='20' text-anchor='middle' font-size='14'>" << title
       << "</text>\n";
    os << "<circle cx='" << C << "' cy='" << C + 30 << "' r='" << R
       << "' fill='none' stroke='black'/>\n";
    const char* colors[] = {"#1f6feb", "#d73a49", "#28a745", "#6f42c1", "#e36209", "#005cc5"};
    for (std::size_t j = 0; j < curves.size(); ++j) {
        os << "<polyline fill='none' stroke='" << colors[j % 6] << "' stroke-width='1.2' points='";
        for (const cplx& z : curves[j])
            os << C + R * z.real() << "," << C + 30 - R * z.imag() << " ";
        os << "'/>\n";
    }
    os << "</svg>\n";
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << os.str();
}

}  // namespace mrsle
