#include "mrsle/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mrsle {

std::string config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << h;
    return os.str();
}

nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
}

namespace {
void put_double(std::ostream& os, double v) {
    os << std::setprecision(17) << v;
}
}  // namespace

void write_csv(const std::filesystem::path& p, const CsvTable& t) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        f << (c ? "," : "") << t.columns[c];
    f << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) f << ",";
            put_double(f, row[c]);
        }
        f << "\n";
    }
}

void write_driver_csv(const std::filesystem::path& p, const DriverPath& d) {
    CsvTable t;
    t.columns = {"step", "t"};
    for (int j = 1; j <= d.n(); ++j) t.columns.push_back("theta_" + std::to_string(j));
    for (int k = 0; k <= d.steps; ++k) {
        std::vector<double> row = {static_cast<double>(k), d.dt * k};
        for (int j = 0; j < d.n(); ++j) row.push_back(d.state(k)[j]);
        t.rows.push_back(std::move(row));
    }
    write_csv(p, t);
}

DriverPath read_driver_csv(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    std::string line;
    std::getline(f, line);  // header
    DriverPath d;
    std::vector<std::vector<double>> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw std::runtime_error("driver csv too short");
    d.steps = static_cast<int>(rows.size()) - 1;
    d.dt = rows[1][1] - rows[0][1];
    for (const auto& row : rows)
        d.states.emplace_back(std::vector<double>(row.begin() + 2, row.end()));
    return d;
}

void write_curve_csv(const std::filesystem::path& p, const MultiradialCurve& c,
                     const TimeChange* tc) {
    CsvTable t;
    t.columns = {"t", "j", "re", "im", "sigma_j"};
    for (int j = 0; j < c.n; ++j)
        for (int k = 0; k < c.samples(); ++k) {
            const cplx z = c.pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            double sig = std::nan("");
            if (tc) sig = tc->sigma[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            t.rows.push_back({c.times[static_cast<std::size_t>(k)], static_cast<double>(j + 1),
                              z.real(), z.imag(), sig});
        }
    write_csv(p, t);
}

nlohmann::json curve_header_json(const MultiradialCurve& c, const std::string& generator,
                                 const std::string& cfg_hash) {
    nlohmann::json j;
    j["n"] = c.n;
    j["dt"] = c.dt;
    j["steps"] = c.steps;
    j["stride"] = c.stride;
    j["theta0"] = c.theta0;
    j["generator"] = generator;
    j["config_hash"] = cfg_hash;
    j["tool"] = kToolVersion;
    return j;
}

}  // namespace mrsle
