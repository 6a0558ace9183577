#include "mrsle/config_file.hpp"

#include <fstream>
#include <sstream>

namespace mrsle {

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("config file not found: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
    Config c;
    c.text_ = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!val.empty() && val.front() == '"' && val.back() == '"' && val.size() >= 2)
            val = val.substr(1, val.size() - 2);
        if (key.empty()) throw config_error("line " + std::to_string(lineno) + ": empty key");
        c.kv_[section.empty() ? key : section + "." + key] = val;
    }
    return c;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_str(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw config_error("missing required field: " + key);
    return it->second;
}

double Config::get_num(const std::string& key) const {
    const std::string s = get_str(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw config_error("field " + key + ": not a number: '" + s + "'");
    }
}

long Config::get_int(const std::string& key) const {
    const double v = get_num(key);
    const long l = static_cast<long>(v);
    if (static_cast<double>(l) != v) throw config_error("field " + key + ": not an integer");
    return l;
}

std::vector<double> Config::get_list(const std::string& key) const {
    const std::string s = get_str(key);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) continue;
        try {
            out.push_back(std::stod(cell));
        } catch (...) {
            throw config_error("field " + key + ": bad list entry '" + cell + "'");
        }
    }
    if (out.empty()) throw config_error("field " + key + ": empty list");
    return out;
}

std::string Config::get_str(const std::string& key, const std::string& dflt) const {
    return has(key) ? get_str(key) : dflt;
}
double Config::get_num(const std::string& key, double dflt) const {
    return has(key) ? get_num(key) : dflt;
}
long Config::get_int(const std::string& key, long dflt) const {
    return has(key) ? get_int(key) : dflt;
}

std::vector<std::string> Config::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : kv_) out.push_back(k);
    return out;
}

}  // namespace mrsle
