#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace casimir::dispersion {

// Drude permittivity on the imaginary axis:
//   eps(i zeta) = 1 + omega_p^2 / (zeta (zeta + nu)).
struct DrudeParameters {
    double omega_p = 0.0; // plasma frequency, rad/s; > 0
    double nu = 0.0;      // relaxation frequency, rad/s; >= 0
    std::string provenance;

    // lambda_p = 2 pi c / omega_p
    double plasma_wavelength() const;
};

// nu = 0 limit: eps(i zeta) = 1 + (omega_p/zeta)^2.
struct PlasmaParameters {
    double omega_p = 0.0;
};

// eps = infinity at every frequency; reflection code maps the sentinel to
// A = B = 1 before any arithmetic.
struct IdealMetal {};

// eps(i zeta) samples on a strictly increasing zeta grid, all eps >= 1.
// Evaluation is monotone-cubic (PCHIP) interpolation, no extrapolation.
struct PermittivityTable {
    std::vector<double> zeta; // rad/s
    std::vector<double> eps;

    static PermittivityTable make(std::vector<double> zeta,
                                  std::vector<double> eps);
};

using DispersionModel =
    std::variant<DrudeParameters, PlasmaParameters, IdealMetal,
                 PermittivityTable>;

// Low-frequency strength D = omega_p^2 / nu of a Drude medium.
// nu = 0 is a degenerate (plasma) model and is rejected.
double low_frequency_strength(const DrudeParameters& p);

// eps(i zeta) for zeta > 0. IdealMetal yields +infinity (the sentinel).
// Tabulated models reject zeta outside the grid.
double eval_permittivity(const DispersionModel& model, double zeta);

struct ZeroModeCheck {
    bool drude_like = false;            // zeta^2 (eps-1) -> 0 along the probes
    std::vector<double> diagnostics;    // zeta^2 (eps-1) per probe
};

// Probes must be positive and decreasing toward 0. The check passes when
// the diagnostic sequence decreases strictly and has dropped by at least
// half over the probe span; a surviving TE zero mode (plasma, ideal metal)
// keeps it constant or infinite.
ZeroModeCheck te_zero_mode_condition(const DispersionModel& model,
                                     std::span<const double> probe_zetas);

// Decreasing probe frequencies suited to the model: anchored at the
// relaxation frequency (Drude), the plasma frequency scaled down (plasma),
// or inside the tabulated grid.
std::vector<double> default_zero_mode_probes(const DispersionModel& model,
                                             int count = 7);

// Measured loss data eps''(omega) on the real axis.
struct LossTable {
    std::vector<double> omega;  // rad/s, strictly increasing
    std::vector<double> eps_im; // >= 0

    static LossTable make(std::vector<double> omega,
                          std::vector<double> eps_im);
    // Two whitespace-separated columns `omega_rad_s  eps_imag`,
    // '#' comments.
    static LossTable load(const std::filesystem::path& file);
};

// eps(i zeta) = 1 + (2/pi) Int_0^inf w eps''(w) / (w^2 + zeta^2) dw.
// The table interior is integrated on a log axis; beyond the table the
// integrand is extended by power laws fitted to the first/last decade.
double kramers_kronig_imag_axis(const LossTable& table, double zeta);

// Runs the dispersion integral on a log-spaced zeta grid and packages the
// result as a tabulated model.
PermittivityTable tabulate_from_loss_data(const LossTable& table,
                                          double zeta_min, double zeta_max,
                                          int count);

} // namespace casimir::dispersion
