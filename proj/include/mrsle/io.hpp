#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrsle/drivers.hpp"
#include "mrsle/loewner.hpp"

namespace mrsle {

inline constexpr const char* kToolVersion = "mrsle 0.1.0";

// FNV-1a 64 over the canonicalized text; stable across runs and platforms.
std::string config_hash(const std::string& text);

// Signed infinities serialize as tagged strings, never as floating infinities.
nlohmann::json json_number(double v);

void write_text(const std::filesystem::path& p, const std::string& text);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
void write_csv(const std::filesystem::path& p, const CsvTable& t);

// DriverPath CSV: step, t, theta_1 .. theta_n (+ JSON metadata sidecar).
void write_driver_csv(const std::filesystem::path& p, const DriverPath& d);
DriverPath read_driver_csv(const std::filesystem::path& p);

// Curve/flow CSV: t, j, re, im, sigma_j (sigma may be absent -> NaN column).
void write_curve_csv(const std::filesystem::path& p, const MultiradialCurve& c,
                     const TimeChange* tc = nullptr);

nlohmann::json curve_header_json(const MultiradialCurve& c, const std::string& generator,
                                 const std::string& cfg_hash);

}  // namespace mrsle
