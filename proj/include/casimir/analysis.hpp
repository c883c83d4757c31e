#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casimir/asymptotics.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir::analysis {

// One temperature sample of the analytic-vs-numerical comparison:
// ratio = (delta_th - delta_num) / delta_th.
struct RatioPoint {
    double temperature = 0.0; // K
    double delta_num = 0.0;   // J/m^2, from the Lifshitz sum-minus-integral
    double delta_th = 0.0;    // J/m^2, Pade form
    double ratio = 0.0;
    std::string note; // set when the numerical evaluation failed
};

struct RatioOptions {
    asymptotics::CorrectionVariant variant =
        asymptotics::CorrectionVariant::euler_maclaurin;
    lifshitz::DeltaOptions delta;
};

// Evaluates the ratio over an ascending temperature grid. Numerical
// failures annotate the affected point (NaN fields) instead of aborting
// the series. Requires a Drude model.
std::vector<RatioPoint> ratio_series(const dispersion::DispersionModel& model,
                                     const lifshitz::Geometry& geom,
                                     std::span<const double> temperatures_K,
                                     const RatioOptions& opts = {});

// Weighted least squares of ratio ~ intercept + c_sqrt sqrt(T) + slope T,
// weights 1/T (the expansion is asymptotic at T = 0). Points with notes
// (failed evaluations) are skipped.
struct RatioFit {
    double intercept = 0.0;
    double sqrt_coeff = 0.0; // K^(-1/2)
    double slope = 0.0;      // 1/K
    double residual_rms = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int points_used = 0;
};
RatioFit fit_low_t(std::span<const RatioPoint> series);

// Coefficients of the numerical deviation fitted directly,
//   delta_num = D1 (T^2 - D2 T^(5/2) + (D3/D1) T^3 + ...),
// through a weighted LS of delta_num/T^2 on {1, sqrt(T), T}. Matching
// leading behaviour means D1 -> C1 and D2 -> C2 as the window shrinks.
struct DeviationFit {
    double d1 = 0.0; // J/(m^2 K^2)
    double d2 = 0.0; // K^(-1/2)
    double d3 = 0.0; // J/(m^2 K^3)
    double window_lo = 0.0;
    double window_hi = 0.0;
};
DeviationFit fit_deviation(std::span<const RatioPoint> series);

struct VerdictConfig {
    std::vector<double> entropy_temperatures_K = {0.05, 0.1, 0.2};
    std::vector<double> ratio_temperatures_K;    // default: 12 log points in [0.05, 1]
    double intercept_threshold = 0.05;
    double sqrt_coeff_threshold = 0.05; // K^(-1/2)
    double entropy_bound_factor = 3.0;  // |S(T)| <= factor * C1 * T
    lifshitz::DeltaOptions delta;
    lifshitz::SumOptions sum;
};

struct NernstReport {
    bool pass = false;
    bool zero_mode_ok = false;
    bool entropy_ok = false;
    bool fit_ok = false;
    bool entropy_checked = false; // false for models that already fail the zero mode
    dispersion::ZeroModeCheck zero_mode;
    std::vector<double> entropy_temperatures;
    std::vector<double> entropy_values;   // J/(m^2 K)
    std::vector<double> entropy_bounds;   // factor * C1 * T
    std::vector<RatioPoint> ratio;
    std::optional<RatioFit> fit;
    std::string summary;

    std::string render() const;          // human-readable report
    std::string key_value_block() const; // machine-readable block
};

// Full low-temperature consistency check: the TE zero-mode condition, the
// entropy -> 0 scan, and the ratio fit. Models that keep a TE zero mode
// (plasma, ideal metal) fail at the first gate; the expensive scans are
// only run for dissipative models.
NernstReport nernst_verdict(const dispersion::DispersionModel& model,
                            const lifshitz::Geometry& geom,
                            const VerdictConfig& config = {});

// 12 log-spaced points in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

} // namespace casimir::analysis
