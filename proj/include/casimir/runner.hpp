#pragma once

#include <filesystem>
#include <string>

#include "casimir/dispersion.hpp"

namespace casimir::runner {

// Everything a command needs, resolved from flags and/or a config file.
// validate() is called before any computation starts.
struct RunConfig {
    std::string model = "drude"; // drude | plasma | ideal | table:<path>
    std::string preset = "gold-2";
    double omega_p_eV = 0.0; // 0 = take from preset
    double nu_meV = -1.0;    // negative = take from preset

    double gap_m = 1e-6;

    double tmin_K = 0.05;
    double tmax_K = 1.0;
    int tcount = 12;
    std::string tspacing = "log"; // log | linear

    double tol_inner = 1e-10;
    double tol_sum = 1e-12;
    double delta_tol = 1e-4;
    long m_cap = 10'000'000; // Matsubara term budget (programmatic knob)
    bool deep = false;       // extend the ratio study down to 0.008 K

    // reflection surface grids
    double zeta_min = 1e12, zeta_max = 1e16;
    int zeta_count = 40;
    double kperp_min = 1e4, kperp_max = 1e8;
    int kperp_count = 40;

    std::string out_dir = "out";
    int workers = 1;

    void validate() const; // throws ConfigError

    // "1um", "1000nm", "1e-6m" -> meters; also bare numbers in meters.
    static double parse_gap(const std::string& text);
};

// Applies a flat `key = value` file ('#' comments) onto cfg. Keys are the
// CLI flag names without dashes; '-' and '_' are interchangeable. Flags
// given on the command line override the file by being parsed afterwards.
void load_config_file(const std::filesystem::path& file, RunConfig& cfg);

dispersion::DispersionModel make_model(const RunConfig& cfg);
dispersion::DrudeParameters preset_parameters(const RunConfig& cfg);

// Each command validates, computes, and writes its data files under
// cfg.out_dir. Returns the paths written. Numerical failures surface as
// NumericalError after a partial file (with a FAILED marker) is kept.
std::vector<std::filesystem::path> cmd_sweep(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_t0(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_asymptote(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_ratio(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_reflection(const RunConfig& cfg);

} // namespace casimir::runner
