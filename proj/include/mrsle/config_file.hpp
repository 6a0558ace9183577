#pragma once

// Flat key/value experiment configs with TOML-style sections. Numbers are
// decimal strings; lists are comma separated. Seeds are explicit and required
// by the experiments (no wall-clock defaults).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrsle {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key) const;
    double get_num(const std::string& key) const;
    long get_int(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;

    std::string get_str(const std::string& key, const std::string& dflt) const;
    double get_num(const std::string& key, double dflt) const;
    long get_int(const std::string& key, long dflt) const;

    const std::string& text() const { return text_; }
    std::vector<std::string> keys() const;

  private:
    std::map<std::string, std::string> kv_;  // keys are "section.key"
    std::string text_;
};

}  // namespace mrsle
