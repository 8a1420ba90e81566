#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "starfield/klein_gordon.hpp"

namespace starfield {

/// Runtime configuration shared by the CLI commands and the check suites.
/// `tolerance` governs the two ordering-theorem suites; the CCR, Wick-lemma
/// and star-W thresholds are fixed constants of the suites themselves.
struct RunConfig {
    double mass = 1.0;
    double circumference = 2.0 * std::numbers::pi;  // key "L"
    int kmax = 1;
    int ncap = 8;                                    // key "Ncap"
    double tolerance = 1e-9;
    int trials = 100;
    std::uint64_t seed = 42;
    std::string star_form = "sigma";  // sigma | wick | path to a pairing TSV
    int max_degree = 3;
    int quadrature_points = 0;  // 0: derived from kmax

    void validate() const {
        if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
        if (trials < 1) throw ConfigError("trials must be at least 1");
        if (max_degree < 0) throw ConfigError("max_degree must be nonnegative");
        if (ncap < 0) throw ConfigError("Ncap must be nonnegative");
        kg_config().validate();
    }

    kg::KGConfig kg_config() const {
        kg::KGConfig cfg;
        cfg.mass = mass;
        cfg.circumference = circumference;
        cfg.kmax = kmax;
        cfg.quadrature_points =
            quadrature_points > 0 ? quadrature_points : std::max(64, 8 * (2 * kmax + 1));
        return cfg;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Flat `key = value` config text, one pair per line, '#' comments.
inline void apply_config_text(const std::string& text, RunConfig& cfg) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = detail::trim(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        if (value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty value");

        auto as_double = [&] {
            const char* first = value.data();
            const char* end = first;
            double v = detail::double_from_text(first, first + value.size(), &end);
            if (end != first + value.size())
                throw ConfigError("config key " + key + ": bad number '" + value + "'");
            return v;
        };
        auto as_int = [&] { return static_cast<int>(std::stoll(value)); };

        if (key == "mass") cfg.mass = as_double();
        else if (key == "L") cfg.circumference = as_double();
        else if (key == "kmax") cfg.kmax = as_int();
        else if (key == "Ncap") cfg.ncap = as_int();
        else if (key == "tolerance") cfg.tolerance = as_double();
        else if (key == "trials") cfg.trials = as_int();
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "star_form") cfg.star_form = value;
        else if (key == "max_degree") cfg.max_degree = as_int();
        else if (key == "quadrature_points") cfg.quadrature_points = as_int();
        else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig cfg;
    apply_config_text(buf.str(), cfg);
    return cfg;
}

/// Pairing matrix TSV: header row `label<TAB>label1...`, then one row per
/// mode: label + n scalar entries.  `pairing` prints it; custom star forms
/// load it back.
inline std::string print_pairing_tsv(const PairingForm<Complex>& B) {
    std::string out = "label";
    for (const std::string& l : B.space()->labels()) out += "\t" + l;
    out += "\n";
    for (std::size_t r = 0; r < B.size(); ++r) {
        out += B.space()->label(r);
        for (std::size_t s = 0; s < B.size(); ++s)
            out += "\t" + ScalarTraits<Complex>::to_text(B.at(r, s));
        out += "\n";
    }
    return out;
}

inline PairingForm<Complex> parse_pairing_tsv(const std::string& text,
                                              const ModeSpacePtr& space,
                                              const std::string& name) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("pairing file: missing header");
    {
        std::istringstream hdr(line);
        std::string cell;
        if (!std::getline(hdr, cell, '\t') || cell != "label")
            throw ConfigError("pairing file: header must start with 'label'");
        for (std::size_t i = 0; i < space->size(); ++i) {
            if (!std::getline(hdr, cell, '\t') || cell != space->label(i))
                throw ConfigError("pairing file: header labels do not match the mode table");
        }
    }
    PairingForm<Complex> B(space, name);
    for (std::size_t r = 0; r < space->size(); ++r) {
        if (!std::getline(in, line))
            throw ConfigError("pairing file: expected " + std::to_string(space->size()) +
                              " rows");
        std::istringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, '\t') || cell != space->label(r))
            throw ConfigError("pairing file: row label mismatch at row " + std::to_string(r));
        for (std::size_t s = 0; s < space->size(); ++s) {
            if (!std::getline(row, cell, '\t'))
                throw ConfigError("pairing file: short row at " + space->label(r));
            B.set(r, s, parse_scalar_text<Complex>(cell));
        }
    }
    return B;
}

inline PairingForm<Complex> load_pairing_file(const std::string& path,
                                              const ModeSpacePtr& space) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pairing file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_pairing_tsv(buf.str(), space, "custom");
}

}  // namespace starfield
