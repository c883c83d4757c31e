#pragma once

#include <functional>
#include <string>

#include "casimir/dispersion.hpp"

namespace casimir::asymptotics {

// ---- closed forms of the scaled TE integrals -------------------------------
//
// B(x) = (sqrt(1+x^2) - x)^4 throughout. Quadrature validators for all four
// closed forms live in the test suite.

// Int_0^inf x ln(1 - B(x)) dx = -(2 ln 2 - 1)/4 ~= -0.0965736.
// This is the slope at zero of the scaled mode function g; it sets the
// leading quadratic coefficient of the thermal TE deviation.
double mode_function_slope0();

// I = Int_0^inf x^2 B/(1-B) dx = 1/12.
double weighted_mode_integral();

// Int_0^inf B x dx = 1/12 and Int_0^inf B x^2 dx = 8/105.
double b_moment_1();
double b_moment_2();

// ---- Euler-Maclaurin with a shifted start ----------------------------------

struct EulerMaclaurinOptions {
    int orders = 3; // odd-derivative correction terms to keep (1..3)
    // Analytic derivatives of g; finite differences are used when absent.
    std::function<double(double)> d1, d3, d5;
    double integral_rel_tol = 1e-12;
    double decay_scale = 1.0; // decay length of g, for the tail convergence check
};

struct EulerMaclaurinResult {
    double value = 0.0;         // approximates Sum'_{m>=0} g(m) - Int_0^inf g
    double boundary_sum = 0.0;  // sum_{n<p} g + g(p)/2 - g(0)/2 - Int_0^p g
    double bernoulli_terms[3] = {0, 0, 0}; // -g'(p)/12, +g'''(p)/720, -g^(5)(p)/30240
    double tail_integral = 0.0; // Int_p^inf g (convergence witness)
};

// Half-weight-at-zero sum minus integral, with the boundary-derivative
// corrections taken at m = p instead of 0 so that half-integer powers in g
// stay differentiable where the derivatives are evaluated.
EulerMaclaurinResult euler_maclaurin_shifted(
    const std::function<double(double)>& g, int p,
    const EulerMaclaurinOptions& opts = {});

// Closed-form pieces for a pure power term g(m) = m^sigma.
struct EulerMaclaurinPieces {
    double sigma = 0.0;
    int start = 1;                // p
    double boundary_sum = 0.0;    // S_sigma(p)
    double regularized_sum = 0.0; // Delta S_sigma(p); -> zeta(-sigma) as p grows
    double error_estimate = 0.0;  // next (fifth-derivative) term magnitude
};
EulerMaclaurinPieces power_term_pieces(double sigma, int p);

// ---- low-temperature coefficients ------------------------------------------

// C = omega_p^2 k T / (c^2 hbar nu), 1/m^2; linear in T.
double scale_constant(const dispersion::DrudeParameters& p, double temperature_K);
// C / T, 1/(m^2 K).
double scale_constant_slope(const dispersion::DrudeParameters& p);

// Dimensionless validity scale a sqrt(C); the T^2 law needs it << 1.
double validity_scale(const dispersion::DrudeParameters& p, double gap,
                      double temperature_K);

// C1 with Delta F_TE = C1 T^2, in J/(m^2 K^2).
double leading_coefficient(const dispersion::DrudeParameters& p);

enum class CorrectionVariant {
    euler_maclaurin, // boundary pieces at p = 1 (the 0.204... factor)
    exact_zeta       // zeta(-3/2) in place of the truncated pieces
};

struct SqrtCorrection {
    double c2 = 0.0;              // K^(-1/2); Delta F_TE = C1 T^2 (1 - c2 sqrt(T) + ...)
    double correction_at_T = 0.0; // c2 sqrt(T), the dimensionless bracket term
    CorrectionVariant variant = CorrectionVariant::euler_maclaurin;
};
SqrtCorrection sqrt_t_correction(const dispersion::DrudeParameters& p,
                                 double gap, double at_T,
                                 CorrectionVariant variant =
                                     CorrectionVariant::euler_maclaurin);

// Delta F_th = C1 T^2 / (1 + C2 sqrt(T)): same two leading terms as the
// bracket form but stays positive where the truncated series would not.
double pade_delta_f(double temperature_K, double c1, double c2);

// Everything the low-temperature analysis needs, evaluated once for a
// parameter set, separation, and reference temperature.
struct CoefficientReport {
    double scale_c = 0.0;        // C at the reference temperature, 1/m^2
    double c1 = 0.0;             // J/(m^2 K^2)
    double c2_euler_maclaurin = 0.0; // K^(-1/2)
    double c2_exact_zeta = 0.0;      // K^(-1/2)
    double g_prime_0 = 0.0;
    double weighted_integral = 0.0;  // I = 1/12
    double zeta_neg_3_2 = 0.0;
    double validity = 0.0;       // a sqrt(C); the expansion needs << 1
    double pade_at_T = 0.0;      // Delta F_th at the reference temperature
};
CoefficientReport coefficient_report(const dispersion::DrudeParameters& p,
                                     double gap, double temperature_K);

// Thermal TE deviation terms from the Mellin/zeta representation:
// T^2 and T^(5/2), with zeta(-1) and zeta(-3/2) carrying the regularized
// mode sums. A T-independent piece (divergent once the lower integration
// limit is dropped) is identified and discarded, noted in the result.
struct LowTemperatureExpansion {
    double t2_term = 0.0;  // J/m^2
    double t52_term = 0.0; // J/m^2
    std::string omitted_constant_note;
};
LowTemperatureExpansion zeta_route(const dispersion::DrudeParameters& p,
                                   double gap, double temperature_K,
                                   int n_orders = 2);

// ---- scaled TE free energy -------------------------------------------------

// beta F_TE = C Sum'_m g(m) with
//   g(m) = m Int_{x0(m)}^inf x ln(1 - B(x) e^(-alpha(m) x)) dx,
// valid deep in the relaxation regime zeta << nu. g(0) = 0, g <= 0.
struct ScaledTE {
    double scale_c = 0.0; // C, 1/m^2
    double gap = 0.0;
    double strength_d = 0.0;       // omega_p^2/nu
    double matsubara_step = 0.0;   // rad/s per unit m

    double alpha(double m) const;  // 2 a sqrt(2 pi C m)
    double x0(double m) const;     // sqrt(zeta(m)/D)
    double g(double m, double rel_tol = 1e-10) const;
};
ScaledTE scaled_te(const dispersion::DrudeParameters& p, double gap,
                   double temperature_K);

} // namespace casimir::asymptotics
