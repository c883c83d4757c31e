#pragma once

#include <vector>

#include "casimir/dispersion.hpp"

namespace casimir::lifshitz {

struct Geometry {
    double gap = 0.0; // plate separation a, meters; > 0
};

// Matsubara bookkeeping for one temperature.
struct ThermalContext {
    double temperature = 0.0;    // K
    double beta = 0.0;           // 1/J
    double matsubara_step = 0.0; // 2 pi k T / hbar, rad/s

    static ThermalContext at(double temperature_K);
};

enum class Polarization { TE, TM };
enum class ModeWeight { half, full };

struct SumOptions {
    double inner_rel_tol = 1e-10; // per-mode q-integral
    double sum_rel_tol = 1e-12;   // Matsubara truncation (5 consecutive terms)
    long m_cap = 10'000'000;
    long min_terms = 0; // force at least this many terms (testing hook)
    int workers = 1;
    bool keep_term_magnitudes = true;
};

struct FreeEnergyBreakdown {
    double f_te = 0.0;    // J/m^2
    double f_tm = 0.0;    // J/m^2
    double f_total = 0.0; // f_te + f_tm
    long m_max = 0;       // last Matsubara index evaluated
    double achieved_rel_tol = 0.0;
    bool te_zero_mode_suppressed = false; // TE m=0 contributed exactly 0
    std::vector<double> term_magnitudes;  // |TE+TM| per m (diagnostic)
};

// One Matsubara mode: Int_{zeta/c}^inf q ln(1 - R e^(-2qa)) dq for the
// requested polarization, times the mode weight. zeta = 0 uses the
// zero-frequency limits of the reflection coefficients; for any model that
// kills the TE zero mode the TE value is exactly 0, no quadrature run.
double mode_integral(const dispersion::DispersionModel& model,
                     const Geometry& geom, double zeta, Polarization pol,
                     ModeWeight weight, double rel_tol = 1e-10);

// Free energy per unit area at temperature T > 0:
//   beta F = (1/2pi) Sum'_m [TM + TE mode integrals].
// Ascending-m compensated summation; terms may be evaluated on several
// workers but are reduced in index order, so the result is bit-identical
// for any worker count.
FreeEnergyBreakdown free_energy(const dispersion::DispersionModel& model,
                                const Geometry& geom, double temperature_K,
                                const SumOptions& opts = {});

struct T0Result {
    double f_te = 0.0;
    double f_tm = 0.0;
    double f_total = 0.0;
};

struct T0Options {
    double outer_rel_tol = 1e-9;
    double inner_rel_tol = 1e-11;
};

// T = 0 limit as a continuum double integral,
//   F(0) = (hbar / 4 pi^2) Int dzeta Int q ln(1-lambda) dq.
T0Result free_energy_t0(const dispersion::DispersionModel& model,
                        const Geometry& geom, const T0Options& opts = {});

struct DeltaOptions {
    double inner_rel_tol = 1e-12; // tighter than SumOptions: the difference
                                  // lives ~6 digits below the raw terms
    double target_rel_tol = 1e-4; // on Delta F itself
    double tail_cut = 1e-16;      // stop once |G| falls this far below peak
    long max_intervals = 5'000'000;
    int workers = 1;
};

// Thermal deviation Delta F = F(T) - F(0) for one polarization, computed
// as a sum-minus-integral of ONE shared integrand family:
//   Delta F = (kT/2pi) Sum_m [ (G(m)+G(m+1))/2 - Int_m^{m+1} G(u) du ],
// where G(u) is the mode integral at the continuous Matsubara parameter u.
// Both the trapezoid and the quadrature see the same evaluator, so the
// inner-integral bias cancels instead of being subtracted at full scale.
double delta_free_energy(const dispersion::DispersionModel& model,
                         const Geometry& geom, double temperature_K,
                         Polarization pol, const DeltaOptions& opts = {});

// TE deviation; the model must be Drude (the quantity under study).
double delta_free_energy_te(const dispersion::DispersionModel& model,
                            const Geometry& geom, double temperature_K,
                            const DeltaOptions& opts = {});

// TM deviation (any model); used for the T^4 scaling checks.
double delta_free_energy_tm(const dispersion::DispersionModel& model,
                            const Geometry& geom, double temperature_K,
                            const DeltaOptions& opts = {});

// S = -dF/dT by central difference. h defaults to max(1e-3 K, T/20).
// The difference consumes ~6 digits of F, so the mode integrals run at
// 1e-12 regardless of opts.inner_rel_tol.
double entropy(const dispersion::DispersionModel& model, const Geometry& geom,
               double temperature_K, double step_K = 0.0,
               const SumOptions& opts = {});

} // namespace casimir::lifshitz
